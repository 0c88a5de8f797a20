"""Finite-dimensional spectrum of polygons and star graphs.

An eigenfunction of a polygon is affine on every edge,
``u(T_i(t)) = alpha[i] + t * beta[i]`` for ``t`` in [0, 1], and continuous, so
``beta[i] = alpha[i+1] - alpha[i]``.  The Dirichlet energy is
``sum_i beta[i]**2 / l[i]`` and the mass is ``sum_i alpha[i]**2`` (vertex
counting measure).  Eliminating beta, the quadratic form in alpha is that of
the weighted cycle Laplacian

    (L alpha)[i] = (alpha[i] - alpha[i-1]) / l[i-1] + (alpha[i] - alpha[i+1]) / l[i],

and its stationarity condition ``lambda alpha[i] = beta[i-1]/l[i-1] - beta[i]/l[i]``
is exactly ``L alpha = lambda alpha``.  Nothing is discretized: the spectrum of
L *is* the spectrum of the polygon.  The same reasoning on a star graph gives
the weighted star Laplacian (index 0 = center).

The dense symmetric eigensolver is a cyclic Jacobi method, kept in-repo so
that it shares nothing with the transfer-matrix and oracle routes it is
cross-checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AllZeroSpectrum, LengthMismatch, NoConvergence, NonPositiveLength, ParameterOutOfRange
from .families import Equilateral, FakeRegular, StationaryStar, Trapeze
from .geometry import Polygon

DEFAULT_CLUSTER_TOL = 1e-7
JACOBI_TOL = 1e-14


@dataclass(frozen=True)
class Spectrum:
    """Sorted distinct eigenvalues with multiplicities.

    ``partial`` marks closed forms that list only some eigenvalues; their
    multiplicities then need not add up to the matrix order.
    """

    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    partial: bool = False

    @property
    def order(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> np.ndarray:
        """Eigenvalues repeated according to multiplicity."""
        return np.repeat(np.array(self.eigenvalues, dtype=float), self.multiplicities)

    def nonzero(self) -> "Spectrum":
        keep = [i for i, v in enumerate(self.eigenvalues) if v > self.cluster_tol]
        return Spectrum(
            tuple(self.eigenvalues[i] for i in keep),
            tuple(self.multiplicities[i] for i in keep),
            self.cluster_tol,
            self.partial,
        )

    def __iter__(self):
        return iter(zip(self.eigenvalues, self.multiplicities))

    def __len__(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class PiecewiseAffine:
    """Vertex values ``alpha`` and edge increments ``beta`` of an edgewise affine function."""

    alpha: np.ndarray
    beta: np.ndarray = field(repr=False)

    def __call__(self, edge: int, t: float) -> float:
        return float(self.alpha[edge] + t * self.beta[edge])


def _check_lengths(lengths, minimum: int) -> np.ndarray:
    ell = np.asarray(lengths, dtype=float).ravel()
    if ell.size < minimum:
        raise ParameterOutOfRange(f"need at least {minimum} edge lengths, got {ell.size}")
    if not np.all(np.isfinite(ell)) or np.any(ell <= 0):
        raise NonPositiveLength(f"edge lengths must be finite and > 0: {ell}")
    return ell


def cycle_laplacian(lengths) -> np.ndarray:
    """Weighted cycle Laplacian; edge i joins vertex i to i+1 with weight 1/l[i]."""
    ell = _check_lengths(lengths, 3)
    n = ell.size
    w = 1.0 / ell
    m = np.zeros((n, n))
    i = np.arange(n)
    j = (i + 1) % n
    m[i, i] = w + np.roll(w, 1)
    m[i, j] = -w
    m[j, i] = -w
    return m


def star_laplacian(lengths) -> np.ndarray:
    """Weighted star Laplacian; row 0 is the center, row i the leaf of edge i."""
    ell = _check_lengths(lengths, 2)
    n = ell.size
    w = 1.0 / ell
    m = np.zeros((n + 1, n + 1))
    m[0, 0] = w.sum()
    m[0, 1:] = -w
    m[1:, 0] = -w
    m[np.arange(1, n + 1), np.arange(1, n + 1)] = w
    return m


def polygon_laplacian(p: Polygon) -> np.ndarray:
    return cycle_laplacian(p.edge_lengths)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule: every pair (p, q) once, in n-1 rounds of disjoint pairs."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            a, b = players[k], players[m - 1 - k]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(m, tol: float = JACOBI_TOL, max_sweeps: int | None = None):
    """Jacobi diagonalization of a real symmetric matrix.

    Returns ``(w, V)`` with ``m = V diag(w) V^T``; ``w`` is unsorted.  Each
    sweep visits every off-diagonal pair once in round-robin order, so the
    rotations of one round touch disjoint rows and columns and are applied
    together.  Sweeps stop once the off-diagonal Frobenius norm is below
    ``tol * ||m||_F``.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("square matrix required")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not exactly symmetric")
    n = a.shape[0]
    v = np.eye(n)
    if max_sweeps is None:
        max_sweeps = 100 * n * n
    target = tol * np.linalg.norm(a)
    rounds = _round_robin(n) if n > 1 else []
    offdiag = ~np.eye(n, dtype=bool)

    for _ in range(max_sweeps + 1):
        off = math.sqrt(float(np.sum(a[offdiag] ** 2)))
        if off <= target:
            return np.diag(a).copy(), v
        for p, q in rounds:
            apq = a[p, q]
            live = apq != 0.0
            if not np.any(live):
                continue
            p, q, apq = p[live], q[live], apq[live]
            app, aqq = a[p, p], a[q, q]
            with np.errstate(over="ignore"):
                # a denormal apq sends theta to inf; the huge branch gives t = 0
                theta = (aqq - app) / (2.0 * apq)
            huge = np.abs(theta) > 1e150
            th = np.where(huge, 1.0, theta)
            t = np.where(huge, 0.5 / np.where(huge, theta, 1.0),
                         np.sign(th) / (np.abs(th) + np.sqrt(th * th + 1.0)))
            t = np.where(theta == 0.0, 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p].copy(), a[q].copy()
            a[p] = c[:, None] * rp - s[:, None] * rq
            a[q] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def cluster(values, tol: float = DEFAULT_CLUSTER_TOL, partial: bool = False) -> Spectrum:
    """Merge sorted neighbours closer than ``tol * max(1, |lambda|)``."""
    vals = np.sort(np.asarray(values, dtype=float))
    groups: list[list[float]] = []
    for x in vals:
        if groups and abs(x - groups[-1][-1]) <= tol * max(1.0, abs(x)):
            groups[-1].append(x)
        else:
            groups.append([x])
    return Spectrum(
        tuple(float(np.mean(g)) for g in groups),
        tuple(len(g) for g in groups),
        tol,
        partial,
    )


def eigensolve(m, cluster_tol: float = DEFAULT_CLUSTER_TOL):
    """Full spectrum of a symmetric matrix.

    Returns ``(spectrum, vectors)``; column k of ``vectors`` is the unit
    eigenvector of the k-th eigenvalue in ascending order (with repeats).
    """
    w, v = jacobi_eigh(m)
    order = np.argsort(w, kind="stable")
    return cluster(w[order], cluster_tol), v[:, order]


def lambda1(s: Spectrum) -> float:
    """First eigenvalue above the clustering tolerance."""
    for lam in s.eigenvalues:
        if lam > s.cluster_tol:
            return lam
    raise AllZeroSpectrum("spectrum has no positive eigenvalue")


def polygon_spectrum(p: Polygon, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Spectrum:
    return eigensolve(polygon_laplacian(p), cluster_tol)[0]


def reconstruct_eigenfunction(p: Polygon, alpha) -> PiecewiseAffine:
    a = np.asarray(alpha, dtype=float).ravel()
    if a.size != p.n:
        raise LengthMismatch(f"alpha has {a.size} entries for {p.n} vertices")
    return PiecewiseAffine(a, np.roll(a, -1) - a)


def first_order_residual(p: Polygon, lam: float, u: PiecewiseAffine) -> float:
    """``max_i |lam alpha[i] - beta[i-1]/l[i-1] + beta[i]/l[i]|``."""
    if u.alpha.size != p.n or u.beta.size != p.n:
        raise LengthMismatch("eigenfunction size does not match the polygon")
    flux = u.beta / p.edge_lengths
    return float(np.max(np.abs(lam * u.alpha - np.roll(flux, 1) + flux)))


def closed_form_spectrum(family) -> Spectrum:
    """Known spectra of the equality families.

    Equilateral and stationary-star spectra are complete.  For the trapeze
    only 0, the double ``2 cos(theta)`` and the simple
    ``1 / (cos(theta) sin(theta)^2)`` are known in closed form; for the
    fake-regular polygon only ``0`` and the first eigenvalue
    ``2 sin(pi / 2n)`` (multiplicity not asserted, reported as 1).  Both are
    flagged ``partial``.
    """
    if isinstance(family, Equilateral):
        n, L = family.n, family.perimeter
        if n < 3 or not L > 0:
            raise ParameterOutOfRange("Equilateral needs n >= 3 and L > 0")
        vals, mults = [], []
        for k in range(n // 2 + 1):
            vals.append(4.0 * n / L * math.sin(k * math.pi / n) ** 2)
            mults.append(1 if k == 0 or 2 * k == n else 2)
        return Spectrum(tuple(vals), tuple(mults))
    if isinstance(family, Trapeze):
        th = family.theta
        if not 0 < th < math.pi / 2:
            raise ParameterOutOfRange("Trapeze needs theta in (0, pi/2)")
        c, s = math.cos(th), math.sin(th)
        return Spectrum((0.0, 2 * c, 1.0 / (c * s * s)), (1, 2, 1), partial=True)
    if isinstance(family, FakeRegular):
        if family.n < 2:
            raise ParameterOutOfRange("FakeRegular needs n >= 2")
        return Spectrum((0.0, 2 * math.sin(math.pi / (2 * family.n))), (1, 1), partial=True)
    if isinstance(family, StationaryStar):
        n, ell = family.n, family.length
        if n < 2 or not ell > 0:
            raise ParameterOutOfRange("StationaryStar needs n >= 2 and length > 0")
        return Spectrum((0.0, 1.0 / ell, (1.0 + n) / ell), (1, n - 1, 1))
    raise ParameterOutOfRange(f"no closed form for {family!r}")
