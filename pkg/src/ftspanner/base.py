"""Fault-tolerant spanners for unweighted points (the backbone on cluster centers).

In the plane and in 3-space every point is joined to its k+1 nearest points in
each of a fixed set of cones (a fault-tolerant Yao graph).  Collinear inputs get
k+1 neighbours on either side along the line.  Above three dimensions a
well-separated pair decomposition is used instead.
"""

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .metric import InvalidInput, SpannerGraph


def yao_stretch(cone_count):
    s = 2.0 * math.sin(math.pi / cone_count)
    return math.inf if s >= 1.0 else 1.0 / (1.0 - s)


def cones_for_stretch(t):
    """Smallest planar cone count (at least 4) whose Yao stretch bound is <= t."""
    if not t > 1.0:
        raise InvalidInput(f"stretch must exceed 1, got {t}")
    c = 4
    while yao_stretch(c) > t:
        c += 1
    return c


@dataclass
class BaseSpannerParams:
    k: int
    t_b: float = 2.5
    cone_count: int = field(default=0)

    def __post_init__(self):
        if self.k < 0:
            raise InvalidInput(f"k must be non-negative, got {self.k}")
        if not self.cone_count:
            self.cone_count = cones_for_stretch(self.t_b)
        if self.cone_count < 4 or yao_stretch(self.cone_count) > self.t_b + 1e-12:
            raise InvalidInput(f"{self.cone_count} cones cannot guarantee stretch {self.t_b}")


def _collinear_order(pts):
    """Parameter order along the common line, or None if the points are not collinear."""
    n = len(pts)
    if n <= 2:
        return list(range(n))
    centered = pts - pts.mean(axis=0)
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    scale = max(s[0], 1e-300)
    if len(s) > 1 and s[1] > 1e-9 * scale:
        return None
    t = centered @ vt[0]
    return sorted(range(n), key=lambda i: (t[i], i))


def _check_distinct(pts):
    seen = {}
    for i, p in enumerate(map(tuple, pts)):
        if p in seen:
            raise InvalidInput(f"duplicate points {seen[p]} and {i}")
        seen[p] = i


def _edge(G, pts, u, v):
    G.add_edge(int(u), int(v), float(np.linalg.norm(pts[u] - pts[v])))


def _line_graph(pts, order, k):
    G = SpannerGraph(len(pts))
    for a in range(len(order)):
        for b in range(a + 1, min(len(order), a + k + 2)):
            _edge(G, pts, order[a], order[b])
    return G


def _yao_graph(pts, k, assign):
    """assign(diffs) -> cone index per difference vector."""
    n = len(pts)
    G = SpannerGraph(n)
    G.chosen = [[] for _ in range(n)]
    idx = np.arange(n)
    for p in range(n):
        diff = pts - pts[p]
        d = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        cone = assign(diff)
        mask = idx != p
        order = np.lexsort((idx[mask], d[mask], cone[mask]))
        cands = idx[mask][order]
        cc = cone[mask][order]
        # first k+1 entries of each cone block
        start = np.r_[True, cc[1:] != cc[:-1]]
        block = np.cumsum(start) - 1
        first = np.flatnonzero(start)
        rank = np.arange(len(cc)) - first[block]
        for q in cands[rank <= k]:
            _edge(G, pts, p, q)
            G.chosen[p].append(int(q))
    return G


def _planar_cones(cone_count):
    width = 2.0 * math.pi / cone_count

    def assign(diff):
        ang = np.arctan2(diff[:, 1], diff[:, 0]) % (2.0 * math.pi)
        return np.minimum((ang / width).astype(int), cone_count - 1)

    return assign


@functools.lru_cache(maxsize=16)
def sphere_axes(t_b):
    """Unit axes whose Voronoi cells on the sphere have angular radius alpha with
    1 / (1 - 2 sin(alpha)) <= t_b.  Returns (axes, alpha)."""
    from scipy.spatial import SphericalVoronoi

    limit = (1.0 - 1.0 / t_b) / 2.0
    if limit <= 0:
        raise InvalidInput(f"stretch must exceed 1, got {t_b}")
    m = 12
    while True:
        i = np.arange(m) + 0.5
        phi = np.arccos(1.0 - 2.0 * i / m)
        theta = math.pi * (1.0 + 5.0**0.5) * i
        axes = np.c_[np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)]
        sv = SphericalVoronoi(axes)
        alpha = 0.0
        for gen, region in enumerate(sv.regions):
            cosang = np.clip(sv.vertices[region] @ axes[gen], -1.0, 1.0)
            alpha = max(alpha, float(np.max(np.arccos(cosang))))
        if math.sin(alpha) <= limit:
            return axes, alpha
        m = int(m * 1.25) + 1


def _spatial_cones(t_b):
    axes, _ = sphere_axes(float(t_b))

    def assign(diff):
        return np.argmax(diff @ axes.T, axis=1)

    return assign


def wspd_separation(t):
    return 4.0 * (t + 1.0) / (t - 1.0)


def well_separated_pairs(pts, s):
    """Well-separated pair decomposition from a fair split tree.

    Returns a list of (A, B) index arrays such that every unordered pair of
    distinct points is separated by exactly one of them.
    """
    nodes = []

    def build(ids):
        box_lo = pts[ids].min(axis=0)
        box_hi = pts[ids].max(axis=0)
        node = {"ids": ids, "lo": box_lo, "hi": box_hi, "kids": None}
        nodes.append(node)
        if len(ids) > 1:
            dim = int(np.argmax(box_hi - box_lo))
            cut = 0.5 * (box_lo[dim] + box_hi[dim])
            left = ids[pts[ids, dim] <= cut]
            right = ids[pts[ids, dim] > cut]
            node["kids"] = (build(left), build(right))
        return node

    def radius(node):
        return 0.5 * float(np.linalg.norm(node["hi"] - node["lo"]))

    def separated(a, b):
        r = max(radius(a), radius(b))
        ca = 0.5 * (a["lo"] + a["hi"])
        cb = 0.5 * (b["lo"] + b["hi"])
        return float(np.linalg.norm(ca - cb)) - 2.0 * r >= s * r

    pairs = []

    def find(a, b):
        if separated(a, b):
            pairs.append((a["ids"], b["ids"]))
            return
        if radius(a) < radius(b):
            a, b = b, a
        find(a["kids"][0], b)
        find(a["kids"][1], b)

    stack = [build(np.arange(len(pts)))]
    while stack:
        node = stack.pop()
        if node["kids"]:
            left, right = node["kids"]
            find(left, right)
            stack.extend(node["kids"])
    return pairs


def _wspd_graph(pts, k, t):
    n = len(pts)
    G = SpannerGraph(n)
    for A, B in well_separated_pairs(pts, wspd_separation(t)):
        for u in np.sort(A)[: k + 1]:
            for v in np.sort(B)[: k + 1]:
                _edge(G, pts, u, v)
    return G


def build_base_vfts(points, params):
    """(k, t_b)-vertex-fault-tolerant spanner of distinct unweighted points."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        pts = pts.reshape(len(pts), -1)
    n = len(pts)
    _check_distinct(pts)
    if n <= 1:
        return SpannerGraph(n)
    order = _collinear_order(pts)
    if order is not None:
        return _line_graph(pts, order, params.k)
    d = pts.shape[1]
    if d == 2:
        return _yao_graph(pts, params.k, _planar_cones(params.cone_count))
    if d == 3:
        return _yao_graph(pts, params.k, _spatial_cones(params.t_b))
    return _wspd_graph(pts, params.k, params.t_b)


def chosen_neighbors(G, v):
    """Neighbours v picked itself (its k+1 nearest per cone in a Yao graph).

    Bounded by k+1 per cone, unlike the full neighbourhood. Graphs without
    that record give all neighbours.
    """
    if not 0 <= v < G.n:
        raise InvalidInput(f"vertex {v} out of range")
    chosen = getattr(G, "chosen", None)
    return sorted(chosen[v]) if chosen is not None else sorted(G.neighbors(v))


def k_nearest_neighbors_in_graph(G, v, k):
    """The k neighbours of v with the shortest edges (ties by smaller index)."""
    if not 0 <= v < G.n:
        raise InvalidInput(f"vertex {v} out of range")
    nbrs = sorted(G.neighbors(v).items(), key=lambda item: (item[1], item[0]))
    return [u for u, _ in nbrs[:k]]
