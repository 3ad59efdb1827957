import itertools
import math
import random

import pytest

from ftspanner.cluster import build_vftswp_rd
from ftspanner.metric import SpannerGraph, make_points
from ftspanner.verify import (
    BudgetExceeded,
    csgraph_distances,
    fault_stretch_check,
    invariant_suite,
    size_report,
)


def random_points(n, seed):
    rng = random.Random(seed)
    return make_points([(rng.random(), rng.random()) for _ in range(n)], [rng.random() for _ in range(n)])


def complete(pts):
    G = SpannerGraph(len(pts))
    for u, v in itertools.combinations(range(len(pts)), 2):
        G.add_edge(u, v, math.dist(pts[u].coords, pts[v].coords))
    return G


def test_complete_graph_is_exact():
    pts = random_points(8, 1)
    rep = fault_stretch_check(complete(pts), pts, "euclidean", 3, 1 + 1e-9)
    assert rep.passed
    assert rep.max_stretch == pytest.approx(1.0)


def test_path_fails_with_witness():
    pts = make_points([(0, 0), (1, 0), (2, 0)])
    G = SpannerGraph(3, [(0, 1, 1.0), (1, 2, 1.0)])
    rep = fault_stretch_check(G, pts, "euclidean", 1, 2.0)
    assert not rep.passed
    assert rep.witness == ((1,), 0, 2)
    assert rep.max_stretch == math.inf


def test_cluster_spanner_with_second_routine():
    for seed in range(3):
        pts = random_points(12, seed)
        G = build_vftswp_rd(pts, 2, 0.5)
        rep = fault_stretch_check(G, pts, "euclidean", 2, 6.5)
        assert rep.passed
        # recompute the worst ratio with scipy's Dijkstra
        worst = 0.0
        for r in range(3):
            for S in itertools.combinations(range(12), r):
                M = csgraph_distances(G, pts, S)
                for p, q in itertools.combinations(range(12), 2):
                    if p in S or q in S:
                        continue
                    dw = pts[p].weight + pts[q].weight + math.dist(pts[p].coords, pts[q].coords)
                    worst = max(worst, M[p, q] / dw)
        assert worst == pytest.approx(rep.max_stretch, rel=1e-12)


def test_budget_refusal():
    pts = random_points(60, 0)
    G = build_vftswp_rd(pts, 2, 0.5)
    with pytest.raises(BudgetExceeded, match="trials"):
        fault_stretch_check(G, pts, "euclidean", 2, 6.5)


def test_sampled_is_reproducible():
    pts = random_points(30, 4)
    G = build_vftswp_rd(pts, 2, 0.5)
    a = fault_stretch_check(G, pts, "euclidean", 2, 6.5, mode="sampled", trials=40, seed=9)
    b = fault_stretch_check(G, pts, "euclidean", 2, 6.5, mode="sampled", trials=40, seed=9)
    assert a == b
    assert a.passed and a.pairs_checked == 40 * (28 * 27 // 2)


def test_monotone_in_k():
    pts = random_points(10, 5)
    G = build_vftswp_rd(pts, 1, 0.5)
    reports = [fault_stretch_check(G, pts, "euclidean", k, 100.0) for k in range(4)]
    stretches = [r.max_stretch for r in reports]
    assert stretches == sorted(stretches)
    assert all(r.min_slack >= -1e-9 for r in reports)


def test_size_report():
    assert size_report(SpannerGraph(0), 1, 0, 0.5) == {"edges": 0, "max_degree": 0, "edges_per_kn": 0.0, "normalized": 0.0}
    rep = size_report(SpannerGraph(2, [(0, 1, 1.0)]), 1, 2, 0.5)
    assert rep["edges_per_kn"] == 0.5 and rep["max_degree"] == 1


def test_graph_invariants():
    pts = make_points([(0, 0), (3, 4)])
    assert invariant_suite(SpannerGraph(2, [(0, 1, 5.0)]), points=pts) == []
    bad = invariant_suite(SpannerGraph(2, [(0, 1, 4.0)]), points=pts)
    assert len(bad) == 1 and "(0, 1)" in bad[0]
