"""Brute-force spectra for cross-validation only.

Two routes that share nothing with the Jacobi solver or the transfer scan:

* ``charpoly_roots``: sign of ``det(m - lam I)`` (Gaussian elimination with
  partial pivoting) on a grid, bisection of every sign change, and
  multiplicities from the numerical rank of ``m - lam I``.  Roots of even
  multiplicity do not change sign; they are recovered from the sign changes
  of principal minors, whose eigenvalues interlace those of ``m``.
* ``rayleigh_montecarlo_upper``: minimum Rayleigh quotient over random
  vectors orthogonal to the constants, polished by inverse iteration.  It
  can only overestimate the first nonzero eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterOutOfRange, RootCountMismatch

CHARPOLY = "CharPolyBisection"
MONTE_CARLO = "RayleighMonteCarlo"

GRID_POINTS = 4096
CLUSTER_TOL = 1e-7
RANK_TOL = 1e-8
INVERSE_STEPS = 1000


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: tuple[float, ...]
    method: str
    certified_upper_bound: float | None = None

    @property
    def lambda1(self) -> float:
        if self.method == MONTE_CARLO:
            return self.eigenvalues[0]
        return next(v for v in self.eigenvalues if v > CLUSTER_TOL)


def det_sign(mats: np.ndarray):
    """Sign and log|det| of a stack of square matrices, partial pivoting.

    Written out by hand (no LAPACK) and vectorized over the leading axes.
    """
    a = np.array(mats, dtype=float, copy=True)
    n = a.shape[-1]
    a = a.reshape((-1, n, n))
    batch = np.arange(a.shape[0])
    sign = np.ones(a.shape[0])
    logabs = np.zeros(a.shape[0])
    for k in range(n):
        piv = k + np.argmax(np.abs(a[:, k:, k]), axis=1)
        swap = piv != k
        if np.any(swap):
            rows_k = a[batch, k, :].copy()
            a[batch, k, :] = a[batch, piv, :]
            a[batch, piv, :] = rows_k
            sign[swap] = -sign[swap]
        p = a[:, k, k]
        zero = p == 0.0
        sign[zero] = 0.0
        safe = np.where(zero, 1.0, p)
        sign *= np.sign(safe)
        logabs += np.log(np.abs(safe))
        if k + 1 < n:
            factors = a[:, k + 1:, k] / safe[:, None]
            a[:, k + 1:, k:] -= factors[:, :, None] * a[:, None, k, k:]
    shape = np.shape(mats)[:-2]
    return sign.reshape(shape), logabs.reshape(shape)


def numerical_rank(m: np.ndarray, rel_tol: float = RANK_TOL) -> int:
    """Rank by Gaussian elimination with complete pivoting."""
    a = np.array(m, dtype=float, copy=True)
    n = a.shape[0]
    thresh = rel_tol * max(np.max(np.abs(a)), np.finfo(float).tiny)
    for k in range(n):
        sub = np.abs(a[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= thresh:
            return k
        a[[k, k + i]] = a[[k + i, k]]
        a[:, [k, k + j]] = a[:, [k + j, k]]
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
    return n


def _gershgorin(m: np.ndarray) -> tuple[float, float]:
    radius = np.sum(np.abs(m), axis=1) - np.abs(np.diag(m))
    return float(np.min(np.diag(m) - radius)), float(np.max(np.diag(m) + radius))


def _sign_change_roots(m: np.ndarray, grid: np.ndarray, tol: float) -> list[float]:
    """Grid zeros plus every sign change, all brackets bisected together."""
    eye = np.eye(m.shape[0])

    def signs(lams):
        return det_sign(m[None, :, :] - np.asarray(lams)[:, None, None] * eye)[0]

    s = signs(grid)
    roots = [float(grid[k]) for k in np.flatnonzero(s == 0)]
    k = np.flatnonzero(s[:-1] * s[1:] < 0)
    a, b, sa = grid[k].copy(), grid[k + 1].copy(), s[k]
    for _ in range(200):
        open_ = (b - a) > tol
        if not np.any(open_):
            break
        mid = 0.5 * (a + b)
        stuck = open_ & ((mid <= a) | (mid >= b))
        open_ &= ~stuck
        sm = signs(mid[open_])
        idx = np.flatnonzero(open_)
        hit = sm == 0
        a[idx[hit]] = b[idx[hit]] = mid[idx[hit]]
        left = ~hit & (sm == sa[idx])
        a[idx[left]] = mid[idx[left]]
        right = ~hit & ~left
        b[idx[right]] = mid[idx[right]]
        if np.any(stuck):
            b[stuck] = a[stuck]
    roots.extend(float(x) for x in 0.5 * (a + b))
    return roots


def charpoly_roots(m, tol: float = 1e-12, grid_points: int = GRID_POINTS) -> OracleResult:
    """All eigenvalues of a symmetric matrix of order <= 64, with repeats."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if m.ndim != 2 or m.shape[1] != n or n > 64:
        raise ParameterOutOfRange("charpoly_roots needs a square matrix of order <= 64")
    g_lo, g_hi = _gershgorin(m)
    lo = min(-tol, 1.05 * g_lo)
    hi = 1.05 * g_hi
    grid = np.linspace(lo, hi, grid_points)

    candidates = _sign_change_roots(m, grid, tol)
    found = _multiplicities(m, candidates)
    if sum(mult for _, mult in found) < n and n > 1:
        for drop in (0, n - 1):
            keep = [i for i in range(n) if i != drop]
            candidates += _sign_change_roots(m[np.ix_(keep, keep)], grid, tol)
        found = _multiplicities(m, candidates)
    total = sum(mult for _, mult in found)
    if total != n:
        raise RootCountMismatch(f"located {total} of {n} eigenvalues; grid too coarse")
    values = tuple(float(v) for v, mult in found for _ in range(mult))
    return OracleResult(values, CHARPOLY)


def _multiplicities(m: np.ndarray, candidates: list[float]) -> list[tuple[float, int]]:
    n = m.shape[0]
    eye = np.eye(n)
    groups: list[list[float]] = []
    for lam in sorted(candidates):
        if groups and abs(lam - groups[-1][0]) <= CLUSTER_TOL * max(1.0, abs(lam)):
            groups[-1].append(lam)
        else:
            groups.append([lam])
    out = []
    for g in groups:
        mult, lam = max((n - numerical_rank(m - x * eye), x) for x in g)
        if mult > 0:
            out.append((lam, mult))
    return out


def rayleigh_montecarlo_upper(m, samples: int = 10_000, seed: int = 0,
                              steps: int = INVERSE_STEPS) -> OracleResult:
    """Upper bound on the first nonzero eigenvalue of a Laplacian-type matrix.

    Random Gaussian vectors are projected onto ``sum(alpha) = 0``; the one
    with the smallest Rayleigh quotient seeds ``steps`` rounds of inverse
    iteration with ``m + 11^T / n`` (invertible on a connected graph, and
    equal to ``m`` on the constraint subspace).
    """
    if samples < 100:
        raise ParameterOutOfRange("need at least 100 samples")
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, n))
    x -= x.mean(axis=1, keepdims=True)
    num = np.einsum("ij,jk,ik->i", x, m, x)
    den = np.einsum("ij,ij->i", x, x)
    v = x[np.argmin(num / den)]
    shifted_inv = np.linalg.inv(m + np.ones((n, n)) / n)
    for _ in range(steps):
        v = shifted_inv @ v
        v -= v.mean()
        v /= np.linalg.norm(v)
    rq = float(v @ m @ v / (v @ v))
    return OracleResult((rq,), MONTE_CARLO, certified_upper_bound=rq)
