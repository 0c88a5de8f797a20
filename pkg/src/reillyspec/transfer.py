"""Transfer-matrix characterization of polygon eigenvalues.

Walking along the polygon, the pair ``(alpha[i], beta[i])`` (value at vertex i,
increment along edge i) determines the next pair through

    alpha[i+1] = alpha[i] + beta[i]
    beta[i+1]  = -lam l[i+1] alpha[i] + (l[i+1]/l[i] - lam l[i+1]) beta[i]

i.e. ``(alpha, beta)[i+1] = M_i(lam) (alpha, beta)[i]``.  Closing the loop, lam is
an eigenvalue iff the monodromy ``M(lam) = M_{n-1} ... M_0`` has eigenvalue 1,
i.e. ``f(lam) = det(M(lam) - I) = 0``.  Since ``det M_i = l[i+1]/l[i]`` the
monodromy has determinant 1 and ``f = 2 - tr M``.  A double eigenvalue is a
point where ``M(lam) = I`` (every starting pair closes up); there ``f`` touches
zero without changing sign, so those roots are located where ``M - I``
vanishes rather than by bracketing ``f``.

Multiplying the n transfer matrices out is fine for small ``lam * l`` but
above the first few eigenvalues of an irregular polygon the product grows
like ``prod(lam * l[i])`` and ``2 - tr M`` drowns in cancellation.  The root
scan therefore evaluates the same determinant through the cyclic
block-bidiagonal system ``x[i+1] = M_i x[i]``, ``x[n] = x[0]`` (multiple
shooting): its determinant equals ``det(M - I)`` exactly, and a pivoted LU
of it is backward stable.

This module deliberately does no matrix diagonalization so that it can be
cross-checked against :mod:`reillyspec.spectral`.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from .errors import GridTooCoarse, NonPositiveLength, ParameterOutOfRange
from .spectral import DEFAULT_CLUSTER_TOL, Spectrum

IDENTITY_TOL = 1e-7
TOUCH_TOL = 1e-9
MERGE_TOL = 1e-9


def _lengths(lengths, minimum: int = 3) -> np.ndarray:
    ell = np.asarray(lengths, dtype=float).ravel()
    if ell.size < minimum:
        raise ParameterOutOfRange(f"need at least {minimum} edge lengths")
    if not np.all(np.isfinite(ell)) or np.any(ell <= 0):
        raise NonPositiveLength(f"edge lengths must be finite and > 0: {ell}")
    return ell


def transfer_matrix(lam, l_next: float, l_curr: float) -> np.ndarray:
    """``[[1, 1], [-lam l_next, l_next/l_curr - lam l_next]]``; broadcasts over ``lam``."""
    if not (l_next > 0 and l_curr > 0):
        raise NonPositiveLength("transfer matrix needs positive lengths")
    lam = np.asarray(lam, dtype=float)
    out = np.empty(lam.shape + (2, 2))
    out[..., 0, 0] = 1.0
    out[..., 0, 1] = 1.0
    out[..., 1, 0] = -lam * l_next
    out[..., 1, 1] = l_next / l_curr - lam * l_next
    return out


def monodromy(lam, lengths) -> np.ndarray:
    """Ordered product ``M_{n-1} ... M_1 M_0`` with ``l[n] = l[0]``."""
    ell = _lengths(lengths)
    lam = np.asarray(lam, dtype=float)
    a = np.ones(lam.shape)
    b = np.zeros(lam.shape)
    c = np.zeros(lam.shape)
    d = np.ones(lam.shape)
    n = ell.size
    for i in range(n):
        nxt, cur = ell[(i + 1) % n], ell[i]
        p, q = -lam * nxt, nxt / cur - lam * nxt
        # [[1, 1], [p, q]] @ [[a, b], [c, d]]
        a, b, c, d = a + c, b + d, p * a + q * c, p * b + q * d
    out = np.empty(lam.shape + (2, 2))
    out[..., 0, 0] = a
    out[..., 0, 1] = b
    out[..., 1, 0] = c
    out[..., 1, 1] = d
    return out


def characteristic_product(lam, lengths):
    """``det(M(lam) - I)`` from the explicit monodromy product.

    Accurate while the entries of ``M`` stay moderate; see :func:`characteristic`.
    """
    m = monodromy(lam, lengths)
    f = (m[..., 0, 0] - 1.0) * (m[..., 1, 1] - 1.0) - m[..., 0, 1] * m[..., 1, 0]
    return float(f) if np.ndim(f) == 0 else f


def shooting_matrix(lam, lengths) -> np.ndarray:
    """Cyclic block system whose determinant is ``det(M(lam) - I)``.

    Block row i reads ``x[i+1] - M_i x[i]``; shape ``lam.shape + (2n, 2n)``.
    """
    ell = _lengths(lengths)
    lam = np.asarray(lam, dtype=float)
    n = ell.size
    nxt = np.roll(ell, -1)
    i = np.arange(n)
    r0, r1 = 2 * i, 2 * i + 1
    j0, j1 = 2 * ((i + 1) % n), 2 * ((i + 1) % n) + 1
    out = np.zeros(lam.shape + (2 * n, 2 * n))
    # -M_i on the diagonal block, +I on the block of x[i+1]
    out[..., r0, r0] = -1.0
    out[..., r0, r1] = -1.0
    out[..., r1, r0] = lam[..., None] * nxt
    out[..., r1, r1] = lam[..., None] * nxt - nxt / ell
    out[..., r0, j0] += 1.0
    out[..., r1, j1] += 1.0
    return out


def characteristic_shooting(lam, lengths):
    """``det(M(lam) - I)`` through a pivoted LU of :func:`shooting_matrix`."""
    sign, logdet = np.linalg.slogdet(shooting_matrix(lam, lengths))
    f = sign * np.exp(logdet)
    return float(f) if np.ndim(f) == 0 else f


#: ``det(M(lam) - I)``; the shooting form is the stable evaluation of it
characteristic = characteristic_shooting


def trapeze_characteristic(lam, theta: float):
    """Closed form of ``det(M(lam) - I)`` for the trapeze ``T_theta``:

    ``4 lam (lam - 2 cos)^2 (lam cos^3 - lam cos + 1) / cos^3``.
    """
    c = math.cos(theta)
    lam = np.asarray(lam, dtype=float)
    g = 4.0 * lam * (lam - 2.0 * c) ** 2 * (lam * c**3 - lam * c + 1.0) / c**3
    return float(g) if np.ndim(g) == 0 else g


def identity_defect(lam: float, lengths) -> float:
    """Frobenius norm of ``M(lam) - I``."""
    return float(np.linalg.norm(monodromy(lam, lengths) - np.eye(2)))


def gershgorin_bound(lengths) -> float:
    """Upper bound for the cycle Laplacian spectrum: ``2 max(1/l[i-1] + 1/l[i])``."""
    w = 1.0 / _lengths(lengths)
    return float(2.0 * np.max(w + np.roll(w, 1)))


def _identity_point(ell, a: float, b: float, bis) -> float | None:
    """Where ``M(lam) = I`` inside ``[a, b]``, if anywhere.

    Every entry of ``M - I`` vanishes there, generically with a sign change,
    so each entry that changes sign over the bracket is bisected and the
    candidate with the smallest defect wins.
    """
    ma, mb = monodromy(a, ell) - np.eye(2), monodromy(b, ell) - np.eye(2)
    best, best_defect = None, math.inf
    for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)):
        if ma[i, j] * mb[i, j] >= 0:
            continue

        def entry(x, i=i, j=j):
            return monodromy(x, ell)[i, j] - (1.0 if i == j else 0.0)

        lam = bisect(entry, a, b, xtol=1e-15 * max(1.0, b), rtol=4 * np.finfo(float).eps, maxiter=500)
        defect = identity_defect(lam, ell)
        if defect < best_defect:
            best, best_defect = lam, defect
    return best


def find_eigenvalues_transfer(
    lengths,
    grid_points: int = 4096,
    tol: float = 1e-12,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> Spectrum:
    """Nonzero eigenvalues as roots of ``det(M(lam) - I)``.

    Scans ``(tol, 1.05 * gershgorin]`` on a uniform grid, evaluating ``f``
    by multiple shooting.  Sign changes are
    bisected to ``tol``.  At each same-sign local minimum of ``|f|`` the dip
    is minimized: if it crosses zero the cell held two simple roots (both
    bisected); if instead ``M`` reaches the identity the point is a double
    root.  The multiplicities must add up to ``n - 1``, otherwise
    :class:`GridTooCoarse` is raised.
    """
    ell = _lengths(lengths)
    if grid_points < 64:
        raise ParameterOutOfRange("grid_points must be >= 64")
    n = ell.size
    hi = 1.05 * gershgorin_bound(ell)
    grid = np.linspace(tol, hi, grid_points)
    f = characteristic_shooting(grid, ell)

    def fs(x):
        return characteristic_shooting(x, ell)

    def bis(a, b):
        return bisect(fs, a, b, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)

    roots: list[tuple[float, int]] = []
    sgn = np.sign(f)
    for k in np.flatnonzero(sgn == 0):
        lam = float(grid[k])
        roots.append((lam, 2 if identity_defect(lam, ell) < IDENTITY_TOL else 1))
    for k in np.flatnonzero(sgn[:-1] * sgn[1:] < 0):
        roots.append((bis(grid[k], grid[k + 1]), 1))

    af = np.abs(f)
    for k in range(1, grid_points - 1):
        if not (sgn[k - 1] == sgn[k] == sgn[k + 1] != 0):
            continue
        if af[k] > af[k - 1] or af[k] > af[k + 1]:
            continue
        a, b = float(grid[k - 1]), float(grid[k + 1])
        s = float(sgn[k])
        xatol = 1e-15 * max(1.0, b)
        dip = minimize_scalar(lambda x: s * fs(x), bounds=(a, b), method="bounded",
                              options={"xatol": xatol})
        if s * fs(dip.x) < 0:
            roots.append((bis(a, dip.x), 1))
            roots.append((bis(dip.x, b), 1))
            continue
        lam = _identity_point(ell, a, b, bis)
        if lam is not None and identity_defect(lam, ell) < IDENTITY_TOL and abs(fs(lam)) < TOUCH_TOL:
            roots.append((lam, 2))

    roots.sort()
    merged: list[list[float]] = []
    for lam, mult in roots:
        if merged and abs(lam - merged[-1][0]) <= MERGE_TOL * max(1.0, lam):
            merged[-1][1] += mult
        else:
            merged.append([lam, mult])
    total = sum(m for _, m in merged)
    if total != n - 1:
        raise GridTooCoarse(
            f"found {total} nonzero eigenvalues (with multiplicity), expected {n - 1}; "
            f"refine the grid (grid_points={grid_points})"
        )
    return Spectrum(tuple(float(l) for l, _ in merged), tuple(int(m) for _, m in merged), cluster_tol)
