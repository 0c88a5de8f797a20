import math

import numpy as np
import pytest

from reillyspec import (
    ParameterOutOfRange,
    RootCountMismatch,
    charpoly_roots,
    cycle_laplacian,
    eigensolve,
    lambda1,
    random_simple_polygon,
    rayleigh_montecarlo_upper,
    star_laplacian,
    trapeze,
)
from reillyspec.oracle import CHARPOLY, MONTE_CARLO, det_sign, numerical_rank


@pytest.mark.parametrize(
    "m, expected",
    [
        (cycle_laplacian([1, 1, 1]), [0, 3, 3]),
        (star_laplacian([1, 1, 1]), [0, 1, 1, 4]),
        (cycle_laplacian([1, 2, 3, 2]), [0, 1, 1, 8 / 3]),
    ],
)
def test_charpoly_examples(m, expected):
    r = charpoly_roots(m)
    assert r.method == CHARPOLY
    assert np.allclose(r.eigenvalues, expected, atol=1e-10)


def test_high_multiplicity_star():
    r = charpoly_roots(star_laplacian([1.0] * 12))
    assert np.allclose(r.eigenvalues, [0] + [1] * 11 + [13], atol=1e-10)


def test_det_sign_matches_numpy():
    x = np.random.default_rng(1).standard_normal((6, 5, 5))
    s, la = det_sign(x)
    ref_s, ref_la = np.linalg.slogdet(x)
    assert np.array_equal(s, ref_s)
    assert np.allclose(la, ref_la)
    assert det_sign(np.zeros((3, 3)))[0] == 0


def test_numerical_rank():
    assert numerical_rank(cycle_laplacian([1, 2, 3])) == 2
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(cycle_laplacian([1, 1, 1]) - 3 * np.eye(3)) == 1


def test_charpoly_agrees_with_eigensolve():
    for seed in range(25):
        m = cycle_laplacian(random_simple_polygon(3 + seed % 14, seed).edge_lengths)
        ref = eigensolve(m)[0].expanded()
        got = np.array(charpoly_roots(m).eigenvalues)
        assert np.allclose(got, ref, rtol=1e-8, atol=1e-10)


def test_order_cap_and_coarse_grid():
    with pytest.raises(ParameterOutOfRange):
        charpoly_roots(np.eye(65))
    with pytest.raises(RootCountMismatch):
        charpoly_roots(np.diag(np.arange(20.0) * 1e-3 + 1.0), grid_points=8)


def test_montecarlo_examples():
    r = rayleigh_montecarlo_upper(cycle_laplacian([1, 1, 1, 1]), samples=10_000, seed=0)
    assert r.method == MONTE_CARLO
    assert abs(r.lambda1 - 2) <= 1e-6
    assert r.certified_upper_bound == r.lambda1
    assert abs(rayleigh_montecarlo_upper(cycle_laplacian([1, 1, 1])).lambda1 - 3) <= 1e-6


def test_montecarlo_is_upper_bound_and_deterministic():
    for seed in range(10):
        m = cycle_laplacian(random_simple_polygon(5 + seed, seed).edge_lengths)
        lam = lambda1(eigensolve(m)[0])
        a = rayleigh_montecarlo_upper(m, 500, seed)
        assert a.lambda1 >= lam - 1e-8
        assert rayleigh_montecarlo_upper(m, 500, seed) == a


def test_montecarlo_ignores_constants():
    # the trapeze has a double lambda1; constants never enter the quotient
    th = 0.7
    r = rayleigh_montecarlo_upper(cycle_laplacian(trapeze(th).edge_lengths), 200, 3)
    assert r.lambda1 == pytest.approx(2 * math.cos(th), rel=1e-9)


def test_montecarlo_sample_floor():
    with pytest.raises(ParameterOutOfRange):
        rayleigh_montecarlo_upper(np.eye(3), samples=10)
