"""How far random polygons sit from Reilly equality.

Draws seeded random simple polygons, reports the distribution of
``residual / energy`` per vertex count, and the closest call overall.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from reillyspec import random_simple_polygon, reilly_report_polygon


@dataclass
class SurveyConfig:
    count: int = 1000
    n_min: int = 3
    n_max: int = 16
    rmin: float = 0.5
    rmax: float = 2.0
    first_seed: int = 0


def survey(cfg: SurveyConfig) -> dict[int, np.ndarray]:
    span = cfg.n_max - cfg.n_min + 1
    by_n: dict[int, list[float]] = {}
    for seed in range(cfg.first_seed, cfg.first_seed + cfg.count):
        n = cfg.n_min + seed % span
        r = reilly_report_polygon(random_simple_polygon(n, seed, cfg.rmin, cfg.rmax))
        by_n.setdefault(n, []).append(r.residual / r.curvature_energy)
    return {n: np.array(v) for n, v in sorted(by_n.items())}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=SurveyConfig.count)
    ap.add_argument("--n-max", type=int, default=SurveyConfig.n_max)
    ap.add_argument("--rmin", type=float, default=SurveyConfig.rmin)
    ap.add_argument("--rmax", type=float, default=SurveyConfig.rmax)
    ns = ap.parse_args()
    cfg = SurveyConfig(count=ns.count, n_max=ns.n_max, rmin=ns.rmin, rmax=ns.rmax)
    data = survey(cfg)
    print(f"{'n':>3} {'count':>6} {'min':>10} {'median':>10} {'max':>10}")
    for n, v in data.items():
        print(f"{n:>3} {v.size:>6} {v.min():>10.4f} {np.median(v):>10.4f} {v.max():>10.4f}")
    allv = np.concatenate(list(data.values()))
    print(f"overall minimum residual/energy: {allv.min():.6e}")
