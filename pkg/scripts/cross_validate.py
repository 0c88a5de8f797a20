"""lambda1 from all four solvers on random polygons, with timings."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from reillyspec import (
    charpoly_roots,
    cycle_laplacian,
    eigensolve,
    find_eigenvalues_transfer,
    lambda1,
    random_simple_polygon,
    rayleigh_montecarlo_upper,
)


@dataclass
class CrossConfig:
    count: int = 200
    n_min: int = 3
    n_max: int = 16
    samples: int = 2000
    seed: int = 0


SOLVERS = {
    "jacobi": lambda m, ell, cfg: lambda1(eigensolve(m)[0]),
    "transfer": lambda m, ell, cfg: find_eigenvalues_transfer(ell).eigenvalues[0],
    "charpoly": lambda m, ell, cfg: charpoly_roots(m).lambda1,
    "montecarlo": lambda m, ell, cfg: rayleigh_montecarlo_upper(m, cfg.samples, cfg.seed).lambda1,
}


def main(cfg: CrossConfig) -> float:
    span = cfg.n_max - cfg.n_min + 1
    spent = dict.fromkeys(SOLVERS, 0.0)
    worst = 0.0
    for s in range(cfg.count):
        p = random_simple_polygon(cfg.n_min + s % span, s)
        m = cycle_laplacian(p.edge_lengths)
        vals = []
        for name, solve in SOLVERS.items():
            t = time.perf_counter()
            vals.append(solve(m, p.edge_lengths, cfg))
            spent[name] += time.perf_counter() - t
        worst = max(worst, (max(vals) - min(vals)) / min(vals))
    for name, t in spent.items():
        print(f"{name:<11} {1e3 * t / cfg.count:8.2f} ms/polygon")
    print(f"max relative spread of lambda1: {worst:.3e}")
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=CrossConfig.count)
    ap.add_argument("--samples", type=int, default=CrossConfig.samples)
    ns = ap.parse_args()
    main(CrossConfig(count=ns.count, samples=ns.samples))
