"""Weighted points, the additive-weight distance and weighted path costs."""

import heapq
import math
from dataclasses import dataclass


class InvalidInput(ValueError):
    """Raised when an argument violates an operation's precondition."""


@dataclass(frozen=True)
class WeightedPoint:
    coords: tuple
    weight: float
    id: int

    def __post_init__(self):
        if not self.weight >= 0:
            raise InvalidInput(f"point {self.id}: negative weight {self.weight}")
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))


def make_points(coords, weights=None):
    """Build points with ids in input order."""
    coords = [tuple(c) for c in coords]
    if weights is None:
        weights = [0.0] * len(coords)
    if len(weights) != len(coords):
        raise InvalidInput("coords and weights differ in length")
    return [WeightedPoint(c, float(w), i) for i, (c, w) in enumerate(zip(coords, weights))]


def check_ids(points):
    for i, p in enumerate(points):
        if p.id != i:
            raise InvalidInput(f"point ids must be 0..n-1 in order; position {i} has id {p.id}")


def euclidean(a, b):
    return math.dist(a, b)


def weighted_distance(p, q, pi_len):
    """w(p) + pi_len + w(q) for distinct points, 0 for the same point."""
    if pi_len < 0:
        raise InvalidInput(f"negative path length {pi_len}")
    if p.weight < 0 or q.weight < 0:
        raise InvalidInput("negative weight")
    if p.id == q.id:
        return 0.0
    return (p.weight + q.weight) + pi_len


class SpannerGraph:
    """Undirected graph on vertices 0..n-1; each edge keeps its metric length.

    edges may be a {(u, v): length} mapping or (u, v, length) triples.
    """

    def __init__(self, n, edges=None):
        self.n = n
        self.edges = {}
        self._adj = [dict() for _ in range(n)]
        if isinstance(edges, dict):
            edges = [(u, v, length) for (u, v), length in edges.items()]
        for u, v, length in edges or ():
            self.add_edge(u, v, length)

    def add_edge(self, u, v, length):
        if u == v:
            raise InvalidInput(f"self-loop at {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvalidInput(f"edge ({u}, {v}) out of range for n={self.n}")
        if length < 0:
            raise InvalidInput(f"negative edge length on ({u}, {v})")
        key = (u, v) if u < v else (v, u)
        if key not in self.edges:
            self.edges[key] = float(length)
            self._adj[u][v] = float(length)
            self._adj[v][u] = float(length)
        return key

    def has_edge(self, u, v):
        return v in self._adj[u]

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def __len__(self):
        return len(self.edges)

    def sorted_edges(self):
        return [(u, v, self.edges[(u, v)]) for (u, v) in sorted(self.edges)]

    def merge(self, other, mapping=None):
        for (u, v), length in other.edges.items():
            if mapping is not None:
                u, v = mapping[u], mapping[v]
            if u != v:
                self.add_edge(u, v, length)


def _edge_cost(points, u, v, length):
    return (points[u].weight + points[v].weight) + length


def graph_distances_from(G, points, src, removed=frozenset()):
    """Dijkstra from src where edge {u,v} costs w(u) + length + w(v).

    Returns a list of distances; unreachable or removed vertices get inf.
    """
    dist = [math.inf] * G.n
    if src in removed:
        return dist
    dist[src] = 0.0
    heap = [(0.0, src)]
    adj = G._adj
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        wu = points[u].weight
        for v, length in adj[u].items():
            if v in removed:
                continue
            nd = d + wu + length + points[v].weight
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def graph_distance(G, points, src, dst, removed=frozenset()):
    """Weighted shortest-path cost in G minus `removed`; math.inf if unreachable."""
    removed = frozenset(removed)
    for x in (src, dst):
        if not 0 <= x < G.n:
            raise InvalidInput(f"vertex {x} out of range")
        if x in removed:
            raise InvalidInput(f"vertex {x} is in the removed set")
    if src == dst:
        return 0.0
    return graph_distances_from(G, points, src, removed)[dst]
