"""Acceptance criteria 1-10.

Each test records one ``[criterion k] PASS|FAIL ...`` line, printed in the
"acceptance criteria" section at the end of the pytest run (also when run as
``python3 tests/test_acceptance.py``), and then asserts.
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, THETAS, nudge  # noqa: E402
from reillyspec import (  # noqa: E402
    NOT_EQUALITY,
    STAR_STATIONARY,
    Equilateral,
    StationaryStar,
    characteristic,
    charpoly_roots,
    classify_equality,
    classify_star,
    closed_form_spectrum,
    cycle_laplacian,
    eigensolve,
    fake_regular,
    find_eigenvalues_transfer,
    hsiung_minkowski_residual,
    lambda1,
    losange,
    polygon_spectrum,
    random_simple_polygon,
    rayleigh_montecarlo_upper,
    regular_polygon,
    reilly_report_polygon,
    reilly_report_star,
    sphere_reference,
    star_laplacian,
    star_stationary,
    trapeze,
    trapeze_characteristic,
    validate_star,
)
from reillyspec.transfer import gershgorin_bound  # noqa: E402

REGULAR_NS = range(3, 65)
FAKE_NS = range(2, 11)
STAR_NS = range(2, 13)
STAR_LENGTHS = (0.5, 1.0, 3.0)
RANDOM_COUNT = 1000
CROSS_RANDOM_COUNT = 200


def random_polygon(seed: int):
    return random_simple_polygon(3 + seed % 14, seed, 0.5, 2.0)


def report(k: int, ok: bool, detail: str) -> None:
    line = f"[criterion {k}] {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def spectra_match(got, want) -> float:
    """Worst relative gap (absolute for zero) if multiplicities agree, else inf."""
    if got.multiplicities != want.multiplicities:
        return math.inf
    return max(abs(a - b) / max(1.0, abs(b)) if b == 0 else rel(a, b)
               for a, b in zip(got.eigenvalues, want.eigenvalues))


def test_criterion_1_equilateral_spectra():
    worst = 0.0
    for n in REGULAR_NS:
        got = polygon_spectrum(regular_polygon(n, 1.0))
        want = closed_form_spectrum(Equilateral(n, float(n)))
        worst = max(worst, spectra_match(got, want))
    report(1, worst <= 1e-9, f"n=3..64, L=n: worst relative eigenvalue error {worst:.2e} (tol 1e-9)")


def test_criterion_2_trapeze_spectrum_and_characteristic():
    worst_eig, worst_g, mult_ok = 0.0, 0.0, True
    for th in THETAS:
        p = trapeze(th)
        s = polygon_spectrum(p).nonzero()
        c, sn = math.cos(th), math.sin(th)
        mult_ok &= s.multiplicities == (2, 1)
        worst_eig = max(worst_eig, rel(s.eigenvalues[0], 2 * c), rel(s.eigenvalues[-1], 1 / (c * sn * sn)))
        lam = np.linspace(0.0, 1.05 * gershgorin_bound(p.edge_lengths), 201)[1:]
        f = characteristic(lam, p.edge_lengths)
        g = trapeze_characteristic(lam, th)
        worst_g = max(worst_g, float(np.max(np.abs(f - g) / np.abs(g))))
    ok = mult_ok and worst_eig <= 1e-9 and worst_g <= 1e-10
    report(2, ok, f"19 angles: multiplicities (2,1) {mult_ok}, eigenvalue error {worst_eig:.2e} (1e-9), "
                  f"det(M-I) vs g {worst_g:.2e} (1e-10)")


def test_criterion_3_trapeze_equality():
    worst_res, worst_e, worst_p = -math.inf, 0.0, 0.0
    for th in THETAS:
        r = reilly_report_polygon(trapeze(th))
        worst_res = max(worst_res, r.residual)
        worst_e = max(worst_e, abs(r.curvature_energy - 8))
        worst_p = max(worst_p, rel(r.total_length, 4 / math.cos(th)))
    ok = worst_res <= 1e-9 * 8 and worst_e <= 1e-12 and worst_p <= 1e-12
    report(3, ok, f"max residual {worst_res:.2e} (<= 8e-9), |energy-8| {worst_e:.2e}, perimeter error {worst_p:.2e}")


def test_criterion_4_fake_regular():
    worst_l, worst_r = 0.0, -math.inf
    for n in FAKE_NS:
        r = reilly_report_polygon(fake_regular(n))
        worst_l = max(worst_l, abs(r.lambda1 - 2 * math.sin(math.pi / (2 * n))))
        worst_r = max(worst_r, r.residual / r.curvature_energy)
    r3 = reilly_report_polygon(fake_regular(3))
    concrete = abs(r3.total_length - 7) <= 1e-12 and abs(r3.curvature_energy - 7) <= 1e-12 and abs(r3.lambda1 - 1) <= 1e-9
    ok = worst_l <= 1e-9 and worst_r <= 1e-9 and concrete
    report(4, ok, f"n=2..10: lambda1 error {worst_l:.2e}, residual/energy {worst_r:.2e}; "
                  f"F_3 perimeter {r3.total_length:.15g}, energy {r3.curvature_energy:.15g}, lambda1 {r3.lambda1:.15g}")


def test_criterion_5_star_graphs():
    worst_s, worst_r = 0.0, -math.inf
    for n in STAR_NS:
        for ell in STAR_LENGTHS:
            g = star_stationary(n, ell)
            got = eigensolve(star_laplacian(g.edge_lengths))[0]
            worst_s = max(worst_s, spectra_match(got, closed_form_spectrum(StationaryStar(n, ell))))
            worst_r = max(worst_r, abs(reilly_report_star(g).residual) / n)
    ok = worst_s <= 1e-9 and worst_r <= 1e-10
    report(5, ok, f"n=2..12, l in {{1/2,1,3}}: spectrum error {worst_s:.2e}, |residual|/n {worst_r:.2e} (1e-10)")


def test_criterion_6_reilly_inequality_random():
    worst = math.inf
    for seed in range(RANDOM_COUNT):
        r = reilly_report_polygon(random_polygon(seed))
        worst = min(worst, r.residual / r.curvature_energy)
    report(6, worst >= -1e-9, f"1000 random polygons, n=3..16: min residual/energy {worst:.3e} (>= -1e-9)")


def _generated_polygons():
    shapes = [regular_polygon(n, 1.0) for n in REGULAR_NS]
    shapes += [trapeze(th) for th in THETAS]
    shapes += [fake_regular(n) for n in FAKE_NS]
    shapes += [losange(s, k * math.pi / 12) for s in (0.5, 2.0) for k in range(1, 12)]
    return shapes


def test_criterion_7_hsiung_minkowski():
    shapes = _generated_polygons() + [random_polygon(s) for s in range(RANDOM_COUNT)]
    worst = max(hsiung_minkowski_residual(p) / p.perimeter for p in shapes)
    report(7, worst <= 1e-10, f"{len(shapes)} polygons: max |sum<A,H> - P| / P = {worst:.2e}")


def test_criterion_8_cross_method():
    polys = [regular_polygon(n, 1.0) for n in range(3, 17)]
    polys += [trapeze(th) for th in THETAS]
    polys += [fake_regular(n) for n in FAKE_NS]
    polys += [losange(1.0, k * math.pi / 6) for k in range(1, 6)]
    polys += [random_polygon(s) for s in range(CROSS_RANDOM_COUNT)]
    worst = 0.0
    for p in polys:
        m = cycle_laplacian(p.edge_lengths)
        vals = [
            lambda1(eigensolve(m)[0]),
            find_eigenvalues_transfer(p.edge_lengths).eigenvalues[0],
            charpoly_roots(m).lambda1,
            rayleigh_montecarlo_upper(m, 2000, 0).lambda1,
        ]
        worst = max(worst, (max(vals) - min(vals)) / min(vals))
    # stars have no transfer walk; the other three still must agree
    for n in STAR_NS:
        m = star_laplacian(star_stationary(n, 1.0).edge_lengths)
        vals = [lambda1(eigensolve(m)[0]), charpoly_roots(m).lambda1, rayleigh_montecarlo_upper(m, 2000, 0).lambda1]
        worst = max(worst, (max(vals) - min(vals)) / min(vals))
    report(8, worst <= 1e-6, f"{len(polys)} polygons + {len(STAR_NS)} stars: max pairwise relative lambda1 gap {worst:.2e}")


def test_criterion_9_classifier():
    failures = []
    for p in _generated_polygons():
        for shape, want in ((p, p.family), (nudge(p, 1e-10), p.family), (nudge(p, 1e-3), NOT_EQUALITY)):
            got = classify_equality(shape).tag
            if got != want:
                failures.append(f"{p!r}: {got} != {want}")
    for n in STAR_NS:
        for ell in STAR_LENGTHS:
            g = star_stationary(n, ell)
            for eps, want in ((0.0, STAR_STATIONARY), (1e-10, STAR_STATIONARY), (1e-3, NOT_EQUALITY)):
                leaves = np.array(g.leaves)
                leaves[0] *= 1 + eps
                got = classify_star(validate_star(g.center, leaves)).tag
                if got != want:
                    failures.append(f"star({n},{ell}) eps={eps}: {got} != {want}")
    report(9, not failures, f"{len(failures)} misclassified" + (f": {failures[:3]}" if failures else
                                                                  " (regular 3..64, 19 trapezes, F_2..F_10, 22 losanges, 33 stars; x3 perturbations)"))


def test_criterion_10_sphere_reference():
    worst = 0.0
    for N in (2, 3, 4):
        for R in (0.5, 1.0, 5.0):
            for mult in (1, 2, 3):
                s = sphere_reference(N, R, mult)
                worst = max(worst, abs(s.residual) / s.energy)
    report(10, worst <= 1e-12, f"27 (N, R, mult) cases: max |residual|/energy {worst:.2e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
