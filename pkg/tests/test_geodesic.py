import math
import random

import pytest

from ftspanner.geodesic import (
    PolygonalDomain,
    SimplePolygon,
    engine_for,
    geodesic_distance,
    geodesic_project,
    reflex_vertices,
)
from ftspanner.geometry import closest_on_segment
from ftspanner.metric import InvalidInput
from ftspanner.oracle import visibility_oracle_distance

from helpers import DOMAIN_SHAPES, POLYGON_SHAPES, free_points, region

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
HOLE = [(0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)]
L_SHAPE = [(0, 0), (1, 0), (1, 0.4), (0.4, 0.4), (0.4, 1), (0, 1)]


def square_hole():
    return PolygonalDomain(SimplePolygon(SQUARE), (SimplePolygon(HOLE),))


def test_convex_is_straight():
    poly = SimplePolygon([(math.cos(a), math.sin(a)) for a in [i * math.pi / 4 for i in range(8)]])
    rng = random.Random(2)
    for _ in range(20):
        a = (rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        b = (rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        path = geodesic_distance(poly, a, b)
        assert path.length == pytest.approx(math.dist(a, b), abs=1e-12)
        assert len(path.waypoints) == 2


def test_diagonal_bends_round_hole_corner():
    dom = square_hole()
    path = geodesic_distance(dom, (0, 0), (1, 1))
    assert len(path.waypoints) == 3
    assert path.waypoints[1] in [(0.75, 0.25), (0.25, 0.75)]
    assert path.length == pytest.approx(visibility_oracle_distance(dom, (0, 0), (1, 1)), rel=1e-9)


def test_same_point():
    path = geodesic_distance(square_hole(), (0.1, 0.1), (0.1, 0.1))
    assert path.length == 0.0


def test_outside_point_rejected():
    with pytest.raises(InvalidInput):
        geodesic_distance(square_hole(), (0.5, 0.5), (0.1, 0.1))
    with pytest.raises(InvalidInput):
        visibility_oracle_distance(square_hole(), (2, 2), (0.1, 0.1))


def test_polygon_validation():
    with pytest.raises(InvalidInput):
        SimplePolygon([(0, 0), (1, 1), (1, 0), (0, 1)])
    cw = SimplePolygon(list(reversed(SQUARE)))
    assert cw.area == pytest.approx(1.0)
    with pytest.raises(InvalidInput):
        PolygonalDomain(SimplePolygon(SQUARE), (SimplePolygon(HOLE), SimplePolygon([(0.5, 0.5), (0.9, 0.5), (0.9, 0.9)])))
    with pytest.raises(InvalidInput):
        PolygonalDomain(SimplePolygon(SQUARE), (SimplePolygon([(0.5, 0.5), (1.5, 0.5), (1.5, 0.9)]),))


def test_oracle_agreement_and_path_shape():
    for name in POLYGON_SHAPES + DOMAIN_SHAPES:
        dom = region(name, seed=1)
        eng = engine_for(dom)
        reflex = set(reflex_vertices(dom))
        pts = free_points(dom, 60, seed=7)
        for a, b in zip(pts[::2], pts[1::2]):
            path = geodesic_distance(dom, a, b)
            oracle = visibility_oracle_distance(dom, a, b)
            assert abs(path.length - oracle) <= 1e-9 * (1 + oracle)
            assert all(w in reflex for w in path.waypoints[1:-1])
            assert all(eng.segment_clear(u, v) for u, v in zip(path.waypoints, path.waypoints[1:]))
            total = sum(math.dist(u, v) for u, v in zip(path.waypoints, path.waypoints[1:]))
            assert total == pytest.approx(path.length, abs=1e-9)


def test_triangle_inequality():
    for name in ["comb-4", "two-holes"]:
        dom = region(name)
        eng = engine_for(dom)
        pts = free_points(dom, 45, seed=3)
        for a, b, c in zip(pts[::3], pts[1::3], pts[2::3]):
            assert eng.distance(a, c) <= eng.distance(a, b) + eng.distance(b, c) + 1e-9


def test_project_visible_is_euclidean_foot():
    dom = square_hole()
    point, d = geodesic_project(dom, (0.1, 0.5), ((0.05, 0.1), (0.2, 0.9)))
    t, foot, dd = closest_on_segment((0.1, 0.5), (0.05, 0.1), (0.2, 0.9))
    assert point == pytest.approx(foot, abs=1e-12)
    assert d == pytest.approx(dd, abs=1e-12)


def test_project_point_on_segment():
    point, d = geodesic_project(square_hole(), (0.1, 0.5), ((0.1, 0.1), (0.1, 0.9)))
    assert point == pytest.approx((0.1, 0.5), abs=1e-12)
    assert d == pytest.approx(0.0, abs=1e-12)


def test_project_blocked_segment_matches_dense_sampling():
    dom = PolygonalDomain(SimplePolygon(L_SHAPE), ())
    eng = engine_for(dom)
    seg = ((0.05, 0.3), (0.35, 0.9))
    for p in [(0.9, 0.1), (0.95, 0.35), (0.6, 0.05)]:
        point, d = geodesic_project(dom, p, seg)
        samples = [eng.distance(p, (seg[0][0] + t * 0.3, seg[0][1] + t * 0.6)) for t in [i / 4095 for i in range(4096)]]
        assert d <= min(samples) + 1e-9
        assert min(samples) <= d + 1e-6
        assert eng.distance(p, point) == pytest.approx(d, abs=1e-9)


def test_project_tie_goes_to_first_endpoint():
    dom = square_hole()
    point, d = geodesic_project(dom, (0.5, 0.1), ((0.1, 0.9), (0.9, 0.9)))
    assert point == pytest.approx((0.25, 0.9), abs=1e-9)
    point, _ = geodesic_project(dom, (0.5, 0.1), ((0.9, 0.9), (0.1, 0.9)))
    assert point == pytest.approx((0.75, 0.9), abs=1e-9)


def test_projection_beats_samples():
    rng = random.Random(11)
    for name in ["U", "two-holes", "comb-4"]:
        dom = region(name)
        eng = engine_for(dom)
        pts = free_points(dom, 12, seed=5)
        segs = []
        while len(segs) < 3:
            a, b = free_points(dom, 2, seed=rng.randrange(10**6))
            if eng.segment_clear(a, b):
                segs.append((a, b))
        for s0, s1 in segs:
            for p in pts:
                point, d = geodesic_project(dom, p, (s0, s1))
                for i in range(64):
                    t = (i + 0.5) / 64
                    x = (s0[0] + t * (s1[0] - s0[0]), s0[1] + t * (s1[1] - s0[1]))
                    assert d <= eng.distance(p, x) + 1e-6
