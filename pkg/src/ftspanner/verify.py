"""Brute-force certification of fault-tolerant stretch and structural invariants."""

import functools
import itertools
import math
import random
from dataclasses import asdict, dataclass

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .cluster import Clustering, weight_order
from .geodesic import PolygonalDomain, SimplePolygon, as_domain, engine_for
from .geometry import closest_on_segment
from .metric import InvalidInput, SpannerGraph, graph_distances_from, weighted_distance
from .polygon import DomainDecomposition, ProjectionSet, SplittingSegment

BUDGET = 10**6
DEFAULT_TRIALS = 2000
SLACK = 1e-9


class BudgetExceeded(InvalidInput):
    pass


class EuclideanMetric:
    name = "euclidean"

    def distance(self, a, b):
        return math.dist(a, b)


class GeodesicMetric:
    name = "geodesic"

    def __init__(self, dom):
        self.domain = as_domain(dom)
        self.engine = engine_for(self.domain)

    def distance(self, a, b):
        return self.engine.distance(a, b)


def resolve_metric(metric):
    if metric is None or metric == "euclidean":
        return EuclideanMetric()
    if isinstance(metric, (PolygonalDomain, SimplePolygon)):
        return GeodesicMetric(metric)
    if hasattr(metric, "distance"):
        return metric
    raise InvalidInput(f"unknown metric {metric!r}")


def weighted_matrix(points, metric):
    metric = resolve_metric(metric)
    n = len(points)
    D = np.zeros((n, n))
    for p in range(n):
        for q in range(p + 1, n):
            d = weighted_distance(points[p], points[q], metric.distance(points[p].coords, points[q].coords))
            D[p, q] = D[q, p] = d
    return D


@dataclass
class FaultReport:
    mode: str
    t_bound: float
    max_stretch: float
    witness: tuple  # (removal set, p, q)
    passed: bool
    pairs_checked: int
    min_slack: float  # min of d_G - d_w over checked pairs
    seed: int = None
    trials: int = None

    def to_dict(self):
        out = asdict(self)
        out["witness"] = None if self.witness is None else [list(self.witness[0]), self.witness[1], self.witness[2]]
        return out


def removal_sets(n, k):
    for r in range(min(k, n) + 1):
        yield from itertools.combinations(range(n), r)


def exhaustive_cost(n, k):
    total = 0
    for r in range(min(k, n) + 1):
        m = n - r
        total += math.comb(n, r) * (m * (m - 1) // 2)
    return total


def fault_stretch_check(G, points, metric=None, k=1, t_bound=2.0, mode="exhaustive", trials=None, seed=0, D=None):
    """Largest ratio d_{G-S}(p,q) / d_w(p,q) over removal sets S with |S| <= k."""
    n = len(points)
    if G.n != n:
        raise InvalidInput(f"graph has {G.n} vertices but there are {n} points")
    if not t_bound > 1:
        raise InvalidInput(f"t_bound must exceed 1, got {t_bound}")
    if k < 0:
        raise InvalidInput(f"k must be non-negative, got {k}")
    if D is None:
        D = weighted_matrix(points, metric)
    if mode == "exhaustive":
        cost = exhaustive_cost(n, k)
        if cost > BUDGET:
            per = max(1, (n - k) * (n - k - 1) // 2)
            raise BudgetExceeded(
                f"exhaustive check needs {cost} removal-set x pair checks (budget {BUDGET}); "
                f"use sampled mode, about {max(1, BUDGET // per)} trials fit the same budget"
            )
        sets = removal_sets(n, k)
    elif mode == "sampled":
        trials = DEFAULT_TRIALS if trials is None else int(trials)
        rng = random.Random(seed)
        size = min(k, max(0, n - 2))
        sets = [tuple(sorted(rng.sample(range(n), size))) for _ in range(trials)]
    else:
        raise InvalidInput(f"unknown mode {mode!r}")
    worst, witness, checked, slack = 0.0, None, 0, math.inf
    for S in sets:
        removed = frozenset(S)
        for p in range(n):
            if p in removed:
                continue
            d = graph_distances_from(G, points, p, removed)
            for q in range(p + 1, n):
                if q in removed:
                    continue
                checked += 1
                dw = D[p, q]
                slack = min(slack, d[q] - dw)
                if dw <= 0.0:
                    ratio = 1.0 if d[q] <= 0.0 else math.inf
                else:
                    ratio = d[q] / dw
                if ratio > worst or witness is None:
                    worst, witness = ratio, (tuple(S), p, q)
    passed = worst <= t_bound + SLACK and slack >= -SLACK
    return FaultReport(
        mode, float(t_bound), float(worst), witness, bool(passed), checked, float(slack),
        seed if mode == "sampled" else None, trials if mode == "sampled" else None,
    )


def csgraph_distances(G, points, removed=()):
    """All-pairs d_{G-S} using scipy's Dijkstra; a second, independent routine."""
    n = G.n
    removed = set(removed)
    rows, cols, vals = [], [], []
    for (u, v), length in G.edges.items():
        if u in removed or v in removed:
            continue
        rows.append(u)
        cols.append(v)
        # explicit zeros vanish from sparse matrices; keep them tiny but present
        vals.append(max((points[u].weight + points[v].weight) + length, 1e-300))
    A = csr_matrix((vals, (rows, cols)), shape=(n, n))
    out = dijkstra(A, directed=False)
    for r in removed:
        out[r, :] = math.inf
        out[:, r] = math.inf
    return out


def size_report(G, k, n, eps, h=0):
    m = len(G) if G is not None else 0
    deg = max((G.degree(v) for v in range(G.n)), default=0) if G is not None else 0
    per_kn = m / (k * n) if k and n else 0.0
    lg = math.log2(n + 1) if n else 0.0
    norm = m * eps * eps / (k * n * math.sqrt(h + 1) * lg) if k and n and lg else 0.0
    return {"edges": m, "max_degree": deg, "edges_per_kn": per_kn, "normalized": norm}


# -- invariants -------------------------------------------------------------------


@functools.singledispatch
def invariant_suite(artifact, **context):
    raise InvalidInput(f"no invariants known for {type(artifact).__name__}")


@invariant_suite.register
def _(cl: Clustering, **context):
    out = []
    pts = cl.points
    order = weight_order(pts)
    if len(pts) >= cl.k + 1 and cl.centers[: cl.k + 1] != order[: cl.k + 1]:
        out.append("first k+1 points in weight order are not the first centers")
    for j, mem in enumerate(cl.members):
        c = cl.centers[j]
        if not mem or mem[0] != c:
            out.append(f"cluster {j}: center {c} is not its first member")
        key = (pts[c].weight, pts[c].id)
        for p in mem:
            if (pts[p].weight, pts[p].id) < key:
                out.append(f"cluster {j}: member {p} is lighter than center {c}")
            if p != c and math.dist(pts[p].coords, pts[c].coords) > cl.eps * pts[p].weight + 1e-12:
                out.append(f"cluster {j}: point {p} is farther than eps*w(p) from center {c}")
            if cl.assignment.get(p) != j:
                out.append(f"point {p} listed in cluster {j} but assigned elsewhere")
    if sum(len(m) for m in cl.members) != len(pts):
        out.append("clusters do not partition the points")
    return out


@invariant_suite.register
def _(dec: DomainDecomposition, **context):
    out = []
    for f, segs in enumerate(dec.face_segments):
        if len(segs) > 3:
            out.append(f"face {f} has {len(segs)} decomposition segments (max 3)")
    g = nx.Graph()
    g.add_nodes_from(range(len(dec.faces)))
    g.add_edges_from((a, b) for a, nb in dec.dual.items() for b in nb)
    if len(dec.faces) and not nx.is_connected(g):
        out.append("dual graph is disconnected")
    if not nx.check_planarity(g)[0]:
        out.append("dual graph is not planar")
    n = context.get("n", len(dec.point_face))
    if sum(dec.weights) != n:
        out.append(f"face weights sum to {sum(dec.weights)}, expected {n}")
    dom = context.get("domain")
    if dom is not None:
        dom = as_domain(dom)
        if len(dec.faces) > 8 * (dom.h + 1):
            out.append(f"{len(dec.faces)} faces exceed 8(h+1)")
        eng = engine_for(dom)
        for s, seg in enumerate(dec.segments):
            if not eng.segment_clear(seg.a, seg.b):
                out.append(f"segment {s} leaves the free space")
    return out


@invariant_suite.register
def _(proj: ProjectionSet, **context):
    out = []
    a, b = proj.segment.endpoints
    points = context.get("points")
    counts = {}
    for src, xy, w in zip(proj.sources, proj.coords, proj.weights):
        counts[src] = counts.get(src, 0) + 1
        if closest_on_segment(xy, a, b)[2] > 1e-9:
            out.append(f"projection of point {src} is off the segment")
        if points is not None and w < points[src].weight - 1e-12:
            out.append(f"projection of point {src} is lighter than its source")
    cap = proj.pieces if proj.refine else 1
    for src, c in counts.items():
        if c > cap:
            out.append(f"point {src} has {c} projections (max {cap})")
    return out


@invariant_suite.register
def _(seg: SplittingSegment, **context):
    dom = context.get("domain")
    if dom is None:
        return []
    eng = engine_for(as_domain(dom))
    return [] if eng.segment_clear(seg.a, seg.b) else ["splitting segment leaves the free space"]


@invariant_suite.register
def _(G: SpannerGraph, **context):
    out = []
    for (u, v), length in G.edges.items():
        if u == v:
            out.append(f"self-loop at {u}")
        if u > v:
            out.append(f"edge ({u}, {v}) not stored with u < v")
        if length < 0:
            out.append(f"edge ({u}, {v}) has negative length")
    points = context.get("points")
    metric = context.get("metric")
    if points is not None:
        metric = resolve_metric(metric)
        for (u, v), length in G.edges.items():
            d = metric.distance(points[u].coords, points[v].coords)
            if abs(d - length) > 1e-9 * max(1.0, d):
                out.append(f"edge ({u}, {v}) length {length!r} differs from metric {d!r}")
    return out


def split_balance(trace):
    """Violations of the 2/3 rule in split and separator events of a build trace."""
    out = []
    for ev in trace:
        if ev["kind"] == "split":
            m = len(ev["left"]) + len(ev["right"])
            cap = 1 if m == 2 else math.ceil(2 * m / 3)
            if max(len(ev["left"]), len(ev["right"])) > cap:
                out.append(f"split at depth {ev['depth']} leaves more than {cap} of {m} points on a side")
        elif ev["kind"] == "separator":
            w = ev["weights"]
            total = sum(w.values())
            m = len(w)
            for side in ("R1", "R2"):
                if sum(w[f] for f in ev[side]) > 2 * total / 3 + 1e-9:
                    out.append(f"separator side {side} exceeds 2/3 of the weight")
            if len(ev["R"]) > 4 * math.sqrt(m):
                out.append(f"separator of size {len(ev['R'])} exceeds 4*sqrt({m})")
            if any(b in ev["R2"] for f in ev["R1"] for b in ev.get("adj", {}).get(f, ())):
                out.append("separator sides are adjacent")
    return out
