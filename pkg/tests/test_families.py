import math

import numpy as np
import pytest

from reillyspec import (
    FakeRegular,
    Losange,
    ParameterOutOfRange,
    RandomSimple,
    Regular,
    SplitMix64,
    StationaryStar,
    Trapeze,
    build,
    curvature_vectors,
    eigensolve,
    fake_regular,
    lambda1,
    losange,
    polygon_spectrum,
    random_simple_polygon,
    regular_polygon,
    star_laplacian,
    star_stationary,
    trapeze,
    validate_polygon,
)


def test_regular_examples():
    sq = regular_polygon(4, 1)
    assert np.allclose(np.linalg.norm(sq.vertices, axis=1), math.sqrt(2) / 2)
    assert np.allclose(sq.edge_lengths, 1)
    assert regular_polygon(3, 1).perimeter == pytest.approx(3)
    assert np.allclose(np.linalg.norm(regular_polygon(6, 2).vertices, axis=1), 2)


def test_trapeze_examples():
    t = trapeze(math.pi / 3)
    assert np.allclose(t.edge_lengths, [1, 2, 3, 2])
    assert t.perimeter == pytest.approx(8)
    assert trapeze(math.pi / 4).perimeter == pytest.approx(4 * math.sqrt(2))
    for th in (0.1, 0.6, 1.5):
        assert curvature_vectors(trapeze(th)).energy == pytest.approx(8, abs=1e-12)
        c, s = math.cos(th), math.sin(th)
        assert np.allclose(trapeze(th).edge_lengths, [2 * c, 1 / c, 2 * math.tan(th) * s, 1 / c])


def test_losange_examples():
    sq = losange(1, math.pi / 2)
    assert np.allclose(sq.edge_lengths, 1)
    r = losange(1, math.pi / 3)
    assert np.allclose(r.edge_lengths, 1)
    diag = sorted([np.linalg.norm(r.vertices[0] - r.vertices[2]), np.linalg.norm(r.vertices[1] - r.vertices[3])])
    assert np.allclose(diag, [1, math.sqrt(3)])
    for s, th in [(0.5, 0.4), (2.0, 2.5)]:
        assert lambda1(polygon_spectrum(losange(s, th))) == pytest.approx(2 / s)


def test_fake_regular_examples():
    f = fake_regular(3)
    expected = [(1, 0), (0.5, math.sqrt(3) / 2), (-0.5, math.sqrt(3) / 2), (-1, 0), (0, -math.sqrt(3))]
    assert np.allclose(f.vertices, expected)
    assert np.allclose(f.edge_lengths, [1, 1, 1, 2, 2])
    assert f.perimeter == pytest.approx(7)
    assert np.allclose(fake_regular(2).edge_lengths, math.sqrt(2))
    for n in range(2, 11):
        p = fake_regular(n)
        a = 2 * math.sin(math.pi / (2 * n))
        assert lambda1(polygon_spectrum(p)) == pytest.approx(a, rel=1e-12)
        assert np.linalg.norm(p.vertices[-1]) == pytest.approx(1 / math.tan(math.pi / (2 * n)))


def test_fake_regular_colinear_without_translation():
    # the vertex mean of F_n is the circle center: no recentering needed
    for n in range(2, 11):
        p = fake_regular(n)
        a = 2 * math.sin(math.pi / (2 * n))
        assert np.max(np.abs(curvature_vectors(p).vectors - a * p.vertices)) <= 1e-10
        assert np.allclose(p.vertices.mean(axis=0), 0, atol=1e-14)


def test_star_examples():
    g = star_stationary(3, 1)
    assert np.allclose(np.degrees(np.arctan2(g.leaves[:, 1], g.leaves[:, 0])) % 360, [0, 120, 240])
    assert np.allclose(star_stationary(2, 1).leaves, [(1, 0), (-1, 0)], atol=1e-15)
    s, _ = eigensolve(star_laplacian(star_stationary(4, 2).edge_lengths))
    assert np.allclose(s.eigenvalues, [0, 0.5, 2.5])
    for n in range(2, 13):
        assert np.linalg.norm(star_stationary(n).unit_tangents.sum(axis=0)) <= 1e-14 * n


def test_random_polygon_properties():
    tri = random_simple_polygon(3, 5, 1, 1)
    assert np.allclose(np.linalg.norm(tri.vertices, axis=1), 1)
    p = random_simple_polygon(8, 42, 0.5, 2)
    validate_polygon(p.vertices)
    q = random_simple_polygon(8, 42, 0.5, 2)
    assert np.array_equal(p.vertices, q.vertices)
    assert not np.array_equal(p.vertices, random_simple_polygon(8, 43, 0.5, 2).vertices)
    a = polygon_spectrum(random_simple_polygon(6, 9, 1.0, 1.0)).expanded()
    b = polygon_spectrum(random_simple_polygon(6, 9, 3.0, 3.0)).expanded()
    assert np.allclose(b, a / 3)


def test_splitmix_reference_values():
    # published first outputs for seed 1234567
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(3)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
    ]


@pytest.mark.parametrize(
    "bad",
    [Regular(2), Losange(1, math.pi), Trapeze(0.0), FakeRegular(1), StationaryStar(1), RandomSimple(3, 0, 2, 1)],
)
def test_bad_parameters(bad):
    with pytest.raises(ParameterOutOfRange):
        build(bad)


def test_build_dispatch():
    assert build(Regular(5)).family == "Regular"
    assert build(Trapeze(0.5)).family == "Trapeze"
    assert build(StationaryStar(3)).n == 3
