"""Reilly residuals, the Hsiung-Minkowski identity and equality classification.

For a polygon the inequality reads ``lambda1 * perimeter <= sum_i |H[i]|^2``
and for a star graph ``lambda1 * sum(l) <= n + |sum(tau)|^2``.  The residual
is always ``energy - lambda1 * length``; it is non-negative up to rounding and
vanishes exactly on the equality shapes.

Equality forces ``H[i] = lambda1 * A[i]`` once the vertices are centered at
their mean (the vertex counting measure is the mass of the eigenproblem), so
the classifier checks that colinearity as well as the residual before it
looks at the shape itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterOutOfRange
from .families import (
    FAKE_REGULAR,
    LOSANGE,
    NOT_EQUALITY,
    REGULAR,
    STAR_STATIONARY,
    TRAPEZE,
)
from .geometry import (
    Polygon,
    StarGraph,
    curvature_vectors,
    curvature_vectors_star,
    interior_angles,
    planar_dimension,
    vertex_barycenter,
)
from .spectral import DEFAULT_CLUSTER_TOL, eigensolve, lambda1, polygon_laplacian, star_laplacian

DEFAULT_EQ_TOL = 1e-8
#: relative tolerance for shape matching and for H = lambda1 * A
GEOMETRY_TOL = 1e-6

#: order used when the polygon carries no family of its own (square, F_2, ...)
PRECEDENCE = (REGULAR, LOSANGE, TRAPEZE, FAKE_REGULAR)


@dataclass(frozen=True)
class EqualityClass:
    """Primary tag plus every family the shape matches geometrically."""

    tag: str
    matches: tuple[str, ...] = ()
    diagnostic: str = ""

    def __str__(self) -> str:
        return self.tag


@dataclass(frozen=True)
class ReillyReport:
    lambda1: float
    total_length: float
    curvature_energy: float
    residual: float
    equality: bool
    classification: EqualityClass

    def as_dict(self) -> dict:
        return {
            "lambda1": self.lambda1,
            "total_length": self.total_length,
            "curvature_energy": self.curvature_energy,
            "residual": self.residual,
            "equality": self.equality,
            "class": self.classification.tag,
            "matches": list(self.classification.matches),
            "diagnostic": self.classification.diagnostic,
        }


@dataclass(frozen=True)
class SphereReference:
    lambda1: float
    mass: float
    energy: float
    residual: float


def _close(a, b, scale: float = 1.0, tol: float = GEOMETRY_TOL) -> bool:
    return bool(np.all(np.abs(np.asarray(a) - np.asarray(b)) <= tol * scale))


def hsiung_minkowski_residual(p: Polygon) -> float:
    """``|sum_i <A[i], H[i]> - perimeter|``; translation drops out since ``sum H = 0``."""
    H = curvature_vectors(p).vectors
    return abs(float(np.einsum("ij,ij->", p.vertices, H)) - p.perimeter)


def _colinearity_defect(points: np.ndarray, H: np.ndarray, lam: float) -> float:
    """``max |H[i] - lam * (A[i] - mean)|`` relative to ``max |H[i]|``."""
    A = points - vertex_barycenter(points)
    scale = max(float(np.max(np.linalg.norm(H, axis=1))), np.finfo(float).tiny)
    return float(np.max(np.linalg.norm(H - lam * A, axis=1))) / scale


def geometric_matches(p: Polygon, tol: float = GEOMETRY_TOL) -> tuple[str, ...]:
    """Equality families whose shape pattern the polygon fits.

    Purely metric: side lengths and unsigned interior angles, so it does not
    see the embedding.  The caller is responsible for planarity.
    """
    ell = p.edge_lengths / p.perimeter
    phi = interior_angles(p)
    n = p.n
    found = []

    equilateral = _close(ell, ell[0])
    if equilateral and _close(phi, phi[0], math.pi, tol):
        found.append(REGULAR)
    if n == 4 and equilateral:
        found.append(LOSANGE)
    if n == 4:
        for s in range(4):
            i = [(s + k) % 4 for k in range(4)]
            if (_close(ell[i[1]], ell[i[3]])
                    and _close(phi[i[0]], phi[i[1]], math.pi, tol)
                    and _close(phi[i[2]], phi[i[3]], math.pi, tol)
                    and _close(phi[i[0]] + phi[i[2]], math.pi, math.pi, tol)):
                found.append(TRAPEZE)
                break
    if n >= 4:
        for j in range(n):
            # apex j: edges j-1 and j share one length, the rest another, and
            # every angle but the apex's is pi minus the apex angle
            side = {(j - 1) % n, j}
            others = [k for k in range(n) if k not in side]
            rest = [k for k in range(n) if k != j]
            if (_close(ell[(j - 1) % n], ell[j])
                    and _close(ell[others], ell[others[0]])
                    and _close(phi[rest], math.pi - phi[j], math.pi, tol)):
                found.append(FAKE_REGULAR)
                break
    return tuple(found)


def _pick(family: str | None, matches: tuple[str, ...]) -> str:
    if family in matches:
        return family
    return next(t for t in PRECEDENCE if t in matches)


def classify_equality(p: Polygon, tol: float = DEFAULT_EQ_TOL, *,
                      cluster_tol: float = DEFAULT_CLUSTER_TOL,
                      _spectrum_lambda1: float | None = None) -> EqualityClass:
    """Equality family of a polygon, or NotEquality with the reason.

    When a shape fits several families (the square is a regular polygon, a
    losange, ``T_{pi/4}`` and ``F_2`` at once) the family the polygon was
    built as wins; without one, ``PRECEDENCE`` decides.
    """
    H = curvature_vectors(p).vectors
    energy = float(np.sum(H * H))
    lam = _spectrum_lambda1
    if lam is None:
        lam = lambda1(eigensolve(polygon_laplacian(p), cluster_tol)[0])
    residual = energy - lam * p.perimeter
    if residual > tol * energy:
        return EqualityClass(NOT_EQUALITY, (), f"residual {residual:.3e} exceeds {tol:g} * energy")
    if planar_dimension(p) > 2:
        return EqualityClass(NOT_EQUALITY, (), "vertices are not coplanar")
    defect = _colinearity_defect(p.vertices, H, lam)
    if defect > GEOMETRY_TOL:
        return EqualityClass(NOT_EQUALITY, (), f"H differs from lambda1 * A by {defect:.3e} (relative)")
    matches = geometric_matches(p)
    if not matches:
        return EqualityClass(
            NOT_EQUALITY, (),
            "residual vanishes and H = lambda1 * A, but the shape matches no known family",
        )
    return EqualityClass(_pick(p.family, matches), matches)


def reilly_report_polygon(p: Polygon, tol: float = DEFAULT_EQ_TOL,
                          cluster_tol: float = DEFAULT_CLUSTER_TOL) -> ReillyReport:
    lam = lambda1(eigensolve(polygon_laplacian(p), cluster_tol)[0])
    energy = curvature_vectors(p).energy
    residual = energy - lam * p.perimeter
    cls = classify_equality(p, tol, cluster_tol=cluster_tol, _spectrum_lambda1=lam)
    return ReillyReport(lam, p.perimeter, energy, residual, residual <= tol * energy, cls)


def classify_star(g: StarGraph, tol: float = DEFAULT_EQ_TOL,
                  cluster_tol: float = DEFAULT_CLUSTER_TOL,
                  _spectrum_lambda1: float | None = None) -> EqualityClass:
    """StarStationary iff the residual vanishes and ``H = lambda1 * A`` after centering.

    At the center that says the tangents balance; at leaf i it says
    ``|A[i]| = 1 / lambda1``.
    """
    H = curvature_vectors_star(g).vectors
    lam = _spectrum_lambda1
    if lam is None:
        lam = lambda1(eigensolve(star_laplacian(g.edge_lengths), cluster_tol)[0])
    energy = g.n + float(np.sum(H[0] ** 2))
    residual = energy - lam * g.total_length
    if residual > tol * energy:
        return EqualityClass(NOT_EQUALITY, (), f"residual {residual:.3e} exceeds {tol:g} * energy")
    defect = _colinearity_defect(g.points, H, lam)
    if defect > GEOMETRY_TOL:
        return EqualityClass(NOT_EQUALITY, (), f"H differs from lambda1 * A by {defect:.3e} (relative)")
    return EqualityClass(STAR_STATIONARY, (STAR_STATIONARY,))


def reilly_report_star(g: StarGraph, tol: float = DEFAULT_EQ_TOL,
                       cluster_tol: float = DEFAULT_CLUSTER_TOL) -> ReillyReport:
    lam = lambda1(eigensolve(star_laplacian(g.edge_lengths), cluster_tol)[0])
    balance = g.unit_tangents.sum(axis=0)
    energy = g.n + float(balance @ balance)
    residual = energy - lam * g.total_length
    cls = classify_star(g, tol, cluster_tol, _spectrum_lambda1=lam)
    return ReillyReport(lam, g.total_length, energy, residual, residual <= tol * energy, cls)


def reilly_report(shape, tol: float = DEFAULT_EQ_TOL,
                  cluster_tol: float = DEFAULT_CLUSTER_TOL) -> ReillyReport:
    if isinstance(shape, StarGraph):
        return reilly_report_star(shape, tol, cluster_tol)
    return reilly_report_polygon(shape, tol, cluster_tol)


def sphere_surface(k: int, R: float) -> float:
    """Area of the round k-sphere of radius R."""
    return 2.0 * math.pi ** ((k + 1) / 2) / math.gamma((k + 1) / 2) * R**k


def sphere_reference(N: int, R: float, mult: int = 1) -> SphereReference:
    """Closed-form equality check for the sphere of radius R in R^N, with multiplicity."""
    if int(N) != N or N < 2:
        raise ParameterOutOfRange("sphere_reference needs an integer N >= 2")
    if not (R > 0 and math.isfinite(R)):
        raise ParameterOutOfRange("sphere_reference needs R > 0")
    if int(mult) != mult or mult < 1:
        raise ParameterOutOfRange("sphere_reference needs an integer multiplicity >= 1")
    m = N - 1
    area = sphere_surface(m, R)
    lam = m / R**2
    mass = mult * area
    energy = mult * (m / R) ** 2 * area
    return SphereReference(lam, mass, energy, energy - m * mass * lam)
