"""Generators for the polygons and star graphs that attain Reilly equality.

Coordinates follow the standard constructions:

* regular n-gon: centered, vertex k at angle ``2 pi k / n``;
* losange (rhombus): diagonals on the axes, vertices ``(+-s cos(t/2), 0)`` and
  ``(0, +-s sin(t/2))``;
* trapeze ``T_theta``: ``(cos, sin), (-cos, sin), (-tan sin, -sin),
  (tan sin, -sin)``, edge lengths ``2 cos, 1/cos, 2 tan sin, 1/cos``.  The
  bottom vertices sit at height ``-sin``: that is the only isosceles trapezoid
  with these four lengths and the given top edge.  (Placing them at
  ``-tan sin`` agrees only at ``theta = pi/4`` and breaks the side lengths
  elsewhere);
* fake-regular ``F_n``: ``n + 1`` points of the unit circle spaced by ``pi/n``
  from ``(1, 0)`` to ``(-1, 0)``, closed through the apex ``(0, -cot(pi/2n))``;
* stationary star: ``n`` leaves at angles ``2 pi k / n``.

Random simple polygons are star-shaped about the origin (sorted angles) and
driven by SplitMix64 so that a seed pins the vertices bit for bit on every
platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterOutOfRange, ValidationError
from .geometry import Polygon, StarGraph, validate_polygon, validate_star

REGULAR = "Regular"
LOSANGE = "Losange"
TRAPEZE = "Trapeze"
FAKE_REGULAR = "FakeRegular"
STAR_STATIONARY = "StarStationary"
NOT_EQUALITY = "NotEquality"


@dataclass(frozen=True)
class Regular:
    n: int
    side: float = 1.0


@dataclass(frozen=True)
class Equilateral:
    """Any equilateral n-gon of perimeter L (the spectrum only sees lengths)."""

    n: int
    perimeter: float


@dataclass(frozen=True)
class Losange:
    side: float
    theta: float


@dataclass(frozen=True)
class Trapeze:
    theta: float


@dataclass(frozen=True)
class FakeRegular:
    n: int


@dataclass(frozen=True)
class StationaryStar:
    n: int
    length: float = 1.0


@dataclass(frozen=True)
class RandomSimple:
    n: int
    seed: int
    rmin: float = 0.5
    rmax: float = 2.0


def regular_polygon(n: int, side: float = 1.0) -> Polygon:
    if n < 3 or not side > 0:
        raise ParameterOutOfRange("regular polygon needs n >= 3 and side > 0")
    R = side / (2.0 * math.sin(math.pi / n))
    k = np.arange(n)
    ang = 2.0 * math.pi * k / n
    return validate_polygon(np.column_stack([R * np.cos(ang), R * np.sin(ang)]), family=REGULAR)


def trapeze(theta: float) -> Polygon:
    if not 0.0 < theta < math.pi / 2:
        raise ParameterOutOfRange("trapeze needs theta in (0, pi/2)")
    c, s = math.cos(theta), math.sin(theta)
    ts = math.tan(theta) * s
    verts = [(c, s), (-c, s), (-ts, -s), (ts, -s)]
    return validate_polygon(verts, family=TRAPEZE)


def losange(side: float, theta: float) -> Polygon:
    if not side > 0 or not 0.0 < theta < math.pi:
        raise ParameterOutOfRange("losange needs side > 0 and theta in (0, pi)")
    a = side * math.cos(theta / 2)
    b = side * math.sin(theta / 2)
    return validate_polygon([(a, 0.0), (0.0, b), (-a, 0.0), (0.0, -b)], family=LOSANGE)


def fake_regular(n: int) -> Polygon:
    """``n + 2`` vertices: ``A_1 .. A_{n+1}`` on the unit circle, then the apex ``A_0``."""
    if n < 2:
        raise ParameterOutOfRange("fake-regular polygon needs n >= 2")
    ang = np.arange(n + 1) * math.pi / n
    arc = np.column_stack([np.cos(ang), np.sin(ang)])
    apex = np.array([[0.0, -1.0 / math.tan(math.pi / (2 * n))]])
    return validate_polygon(np.vstack([arc, apex]), family=FAKE_REGULAR)


def star_stationary(n: int, length: float = 1.0) -> StarGraph:
    if n < 2 or not length > 0:
        raise ParameterOutOfRange("stationary star needs n >= 2 and length > 0")
    ang = 2.0 * math.pi * np.arange(n) / n
    leaves = length * np.column_stack([np.cos(ang), np.sin(ang)])
    return validate_star([0.0, 0.0], leaves, family=STAR_STATIONARY)


_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014).

    ``state += 0x9E3779B97F4A7C15``; output mixes with multipliers
    ``0xBF58476D1CE4E5B9`` and ``0x94D049BB133111EB`` and shifts 30, 27, 31.
    Doubles take the top 53 bits: ``(z >> 11) * 2**-53`` in [0, 1).
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


def random_simple_polygon(n: int, seed: int, rmin: float = 0.5, rmax: float = 2.0) -> Polygon:
    """Planar polygon with sorted random angles and radii in ``[rmin, rmax]``.

    Draw order per attempt: n angles, then n radii.  An attempt that fails
    validation (tiny edge, or an angular gap above pi) is redrawn from the
    same stream; this is rare for n >= 4.
    """
    if n < 3 or not 0 < rmin <= rmax or not math.isfinite(rmax):
        raise ParameterOutOfRange("random polygon needs n >= 3 and 0 < rmin <= rmax")
    rng = SplitMix64(seed)
    for _ in range(1000):
        ang = sorted(2.0 * math.pi * rng.uniform() for _ in range(n))
        rad = [rmin + (rmax - rmin) * rng.uniform() for _ in range(n)]
        gaps = np.diff(ang + [ang[0] + 2.0 * math.pi])
        if n > 3 and np.max(gaps) >= math.pi:
            continue
        verts = [(r * math.cos(a), r * math.sin(a)) for a, r in zip(ang, rad)]
        try:
            return validate_polygon(verts)
        except ValidationError:
            continue
    raise ParameterOutOfRange(f"could not draw a simple polygon for seed {seed}")


def build(descriptor):
    """Materialize a family descriptor into a Polygon or StarGraph."""
    d = descriptor
    if isinstance(d, Regular):
        return regular_polygon(d.n, d.side)
    if isinstance(d, Equilateral):
        return regular_polygon(d.n, d.perimeter / d.n)
    if isinstance(d, Losange):
        return losange(d.side, d.theta)
    if isinstance(d, Trapeze):
        return trapeze(d.theta)
    if isinstance(d, FakeRegular):
        return fake_regular(d.n)
    if isinstance(d, StationaryStar):
        return star_stationary(d.n, d.length)
    if isinstance(d, RandomSimple):
        return random_simple_polygon(d.n, d.seed, d.rmin, d.rmax)
    raise ParameterOutOfRange(f"unknown family descriptor {d!r}")
