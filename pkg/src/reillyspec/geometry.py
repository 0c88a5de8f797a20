"""Polygons and star graphs as 1-varifolds.

A polygon is a closed cyclic chain of vertices ``A[0], ..., A[n-1]`` in R^N
(0-based, ``A[n] == A[0]``); edge ``i`` joins ``A[i]`` to ``A[i+1]``.  A star
graph is a center ``A0`` joined to leaves ``A1..An``.

The first variation of a polygon concentrates on its vertices.  At vertex i
the curvature vector is

    H[i] = (A[i] - A[i-1]) / |A[i] - A[i-1]| + (A[i] - A[i+1]) / |A[i] - A[i+1]|
         = nu[i-1] - nu[i],

with ``nu[i]`` the unit direction of edge i.  Its norm is ``2 cos(phi/2)`` where
phi is the interior angle at the vertex, i.e. ``|H|^2 = 2 (1 + cos(phi))`` when
the angle is measured between the two vectors pointing *into* the vertex.  The
same quantity reads ``2 (1 - cos(theta))`` if theta is the oriented turning
angle between consecutive edges; both forms appear in the literature, so the
code never goes through an angle formula and always sums the unit vectors.

Sign convention: ``delta V = H mu`` with ``mu`` the vertex counting measure
(so ``H`` points towards the inside of a convex polygon, and
``sum_i <A[i], H[i]> = perimeter``).  The smooth convention
``delta V = -integral H . X`` differs by a sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    NestedEdges,
    NonFinite,
    SelfIntersection,
    TooFewVertices,
    ZeroLengthEdge,
)

#: relative tolerance (in units of the bounding-box size) for edge contact
CONTACT_TOL = 1e-12
#: relative tolerance for a vanishing edge
ZERO_EDGE_TOL = 1e-14
#: relative tolerance for the rank of the centered vertex matrix
RANK_TOL = 1e-10


def _as_points(points, min_count: int, what: str) -> np.ndarray:
    try:
        rows = [np.asarray(p, dtype=float) for p in points]
    except (TypeError, ValueError) as exc:
        raise DimensionMismatch(f"{what}: coordinates must be numeric lists") from exc
    if len(rows) < min_count:
        raise TooFewVertices(f"{what}: need at least {min_count} points, got {len(rows)}")
    dims = {r.shape for r in rows}
    if len(dims) != 1:
        raise DimensionMismatch(f"{what}: points have mixed shapes {sorted(dims)}")
    arr = np.array(rows)
    if arr.ndim != 2 or arr.shape[1] < 2:
        raise DimensionMismatch(f"{what}: ambient dimension must be >= 2")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"{what}: non-finite coordinate")
    return arr


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Polygon:
    """Validated closed polygon.  Build it with :func:`validate_polygon`.

    ``family`` is optional provenance metadata set by the generators in
    :mod:`reillyspec.families`; it never affects any computed quantity.
    """

    vertices: np.ndarray
    edge_lengths: np.ndarray
    unit_directions: np.ndarray
    family: str | None = field(default=None)

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def perimeter(self) -> float:
        return float(np.sum(self.edge_lengths))

    @property
    def scale(self) -> float:
        """Size of the bounding box, used to make tolerances relative."""
        span = np.ptp(self.vertices, axis=0)
        return float(max(np.linalg.norm(span), np.finfo(float).tiny))

    def __repr__(self) -> str:
        tag = f", family={self.family!r}" if self.family else ""
        return f"Polygon(n={self.n}, dim={self.dim}, perimeter={self.perimeter:.6g}{tag})"


@dataclass(frozen=True, eq=False)
class StarGraph:
    """Center ``A0`` joined to ``n >= 2`` leaves by straight edges."""

    center: np.ndarray
    leaves: np.ndarray
    edge_lengths: np.ndarray
    unit_tangents: np.ndarray
    family: str | None = field(default=None)

    @property
    def n(self) -> int:
        return self.leaves.shape[0]

    @property
    def dim(self) -> int:
        return self.leaves.shape[1]

    @property
    def total_length(self) -> float:
        return float(np.sum(self.edge_lengths))

    @property
    def points(self) -> np.ndarray:
        """All vertices, center first."""
        return np.vstack([self.center[None, :], self.leaves])

    def __repr__(self) -> str:
        return f"StarGraph(n={self.n}, dim={self.dim}, total_length={self.total_length:.6g})"


@dataclass(frozen=True, eq=False)
class CurvatureMeasure:
    """Curvature vectors ``H[i]``, one row per vertex.

    For polygons row i belongs to vertex i.  For star graphs row 0 is the
    center and rows 1..n the leaves.
    """

    vectors: np.ndarray

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    @property
    def energy(self) -> float:
        return float(np.sum(self.vectors**2))

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, i):
        return self.vectors[i]


def _point_segment_distance(p, a, b):
    """Distances from points ``p`` to segments ``[a, b]`` (broadcast over rows)."""
    d = b - a
    dd = np.einsum("...i,...i->...", d, d)
    t = np.einsum("...i,...i->...", p - a, d) / np.where(dd > 0, dd, 1.0)
    t = np.clip(t, 0.0, 1.0)
    q = a + t[..., None] * d
    return np.linalg.norm(p - q, axis=-1)


def _cross2(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def segment_distance_2d(a, b, c, d):
    """Distance between planar segments ``[a, b]`` and ``[c, d]`` (vectorized)."""
    a, b, c, d = (np.asarray(x, dtype=float) for x in (a, b, c, d))
    o1 = _cross2(b - a, c - a)
    o2 = _cross2(b - a, d - a)
    o3 = _cross2(d - c, a - c)
    o4 = _cross2(d - c, b - c)
    crossing = (o1 * o2 < 0) & (o3 * o4 < 0)
    dist = np.minimum.reduce([
        _point_segment_distance(a, c, d),
        _point_segment_distance(b, c, d),
        _point_segment_distance(c, a, b),
        _point_segment_distance(d, a, b),
    ])
    return np.where(crossing, 0.0, dist)


def _check_simple(A: np.ndarray, tol: float) -> None:
    n = A.shape[0]
    nxt = np.roll(A, -1, axis=0)
    prv = np.roll(A, 1, axis=0)
    # adjacent edges [A[i-1], A[i]] and [A[i], A[i+1]]: must not fold back
    d1 = _point_segment_distance(nxt, prv, A)
    d2 = _point_segment_distance(prv, A, nxt)
    bad = np.flatnonzero((d1 <= tol) | (d2 <= tol))
    if bad.size:
        raise SelfIntersection(f"edges meeting at vertex {int(bad[0])} overlap")
    if A.shape[1] != 2 or n < 4:
        return
    i, j = np.triu_indices(n, k=2)
    keep = ~((i == 0) & (j == n - 1))
    i, j = i[keep], j[keep]
    dist = segment_distance_2d(A[i], nxt[i], A[j], nxt[j])
    hit = np.flatnonzero(dist <= tol)
    if hit.size:
        k = hit[0]
        raise SelfIntersection(f"edges {int(i[k])} and {int(j[k])} intersect")


def validate_polygon(vertices, family: str | None = None) -> Polygon:
    """Check a cyclic vertex list and build a :class:`Polygon`.

    Raises TooFewVertices, DimensionMismatch, NonFinite, ZeroLengthEdge or
    SelfIntersection.  Non-adjacent edges are tested for contact only in the
    plane; in higher dimension only edge degeneracy and folding back onto
    the previous edge are rejected.  Straight (collinear) vertices are fine.
    """
    A = _as_points(vertices, 3, "polygon")
    edges = np.roll(A, -1, axis=0) - A
    lengths = np.linalg.norm(edges, axis=1)
    extent = float(np.linalg.norm(np.ptp(A, axis=0)))
    if extent == 0.0:
        raise ZeroLengthEdge("all vertices coincide")
    short = np.flatnonzero(lengths <= ZERO_EDGE_TOL * extent)
    if short.size:
        raise ZeroLengthEdge(f"edge {int(short[0])} has zero length")
    _check_simple(A, CONTACT_TOL * extent)
    return Polygon(
        vertices=_frozen(A),
        edge_lengths=_frozen(lengths),
        unit_directions=_frozen(edges / lengths[:, None]),
        family=family,
    )


def validate_star(center, leaves, family: str | None = None) -> StarGraph:
    """Check and build a :class:`StarGraph` (at least two leaves)."""
    C = _as_points([center], 1, "star center")
    L = _as_points(leaves, 2, "star leaves")
    if C.shape[1] != L.shape[1]:
        raise DimensionMismatch("star: center and leaves differ in dimension")
    vec = L - C
    lengths = np.linalg.norm(vec, axis=1)
    extent = float(np.max(lengths))
    short = np.flatnonzero(lengths <= ZERO_EDGE_TOL * max(extent, 1e-300))
    if short.size or extent == 0.0:
        raise ZeroLengthEdge(f"star edge {int(short[0]) + 1 if short.size else 1} has zero length")
    tau = vec / lengths[:, None]
    gram = tau @ tau.T
    i, j = np.triu_indices(L.shape[0], k=1)
    same = np.flatnonzero(gram[i, j] >= 1.0 - 1e-14)
    if same.size:
        k = same[0]
        raise NestedEdges(f"star edges {int(i[k]) + 1} and {int(j[k]) + 1} lie on one ray")
    return StarGraph(
        center=_frozen(C[0]),
        leaves=_frozen(L),
        edge_lengths=_frozen(lengths),
        unit_tangents=_frozen(tau),
        family=family,
    )


def curvature_vectors(p: Polygon) -> CurvatureMeasure:
    nu = p.unit_directions
    return CurvatureMeasure(_frozen(np.roll(nu, 1, axis=0) - nu))


def curvature_vectors_star(g: StarGraph) -> CurvatureMeasure:
    tau = g.unit_tangents
    return CurvatureMeasure(_frozen(np.vstack([-tau.sum(axis=0)[None, :], tau])))


def interior_angles(p: Polygon) -> np.ndarray:
    """Angle in [0, pi] at each vertex between its two edges."""
    nu = p.unit_directions
    back = -np.roll(nu, 1, axis=0)
    c = np.clip(np.einsum("ij,ij->i", back, nu), -1.0, 1.0)
    # atan2 form keeps accuracy near 0 and pi
    s = np.linalg.norm(back - c[:, None] * nu, axis=1)
    return np.arctan2(s, c)


def vertex_barycenter(points) -> np.ndarray:
    return np.asarray(points, dtype=float).mean(axis=0)


def center_at_vertex_barycenter(p: Polygon) -> Polygon:
    """Translate so that the vertex mean sits at the origin."""
    A = p.vertices - vertex_barycenter(p.vertices)
    return Polygon(
        vertices=_frozen(A),
        edge_lengths=p.edge_lengths,
        unit_directions=p.unit_directions,
        family=p.family,
    )


def transform_polygon(p: Polygon, scale: float = 1.0, rotation=None, shift=None) -> Polygon:
    """Return ``scale * Q A + t`` as a new validated polygon (family kept)."""
    A = p.vertices
    if rotation is not None:
        A = A @ np.asarray(rotation, dtype=float).T
    A = scale * A
    if shift is not None:
        A = A + np.asarray(shift, dtype=float)
    return validate_polygon(A, family=p.family)


def planar_dimension(p: Polygon, rel_tol: float = RANK_TOL) -> int:
    """Dimension of the affine hull of the vertices."""
    X = p.vertices - vertex_barycenter(p.vertices)
    sv = np.linalg.svd(X, compute_uv=False)
    scale = float(np.max(np.linalg.norm(X, axis=1)))
    if scale == 0.0:
        return 0
    return int(np.sum(sv > rel_tol * scale))
