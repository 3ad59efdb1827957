"""Slow reference geodesic distances, independent of the funnel/reflex engine.

Visibility is decided by shapely's exact predicates on a region grown by 1e-12
(mitred, so corners stay corners), and shortest paths by networkx Dijkstra over
all polygon vertices plus the two query points.
"""

import functools
import math

import networkx as nx
from shapely.geometry import LineString, Point, Polygon
from shapely.prepared import prep

from .metric import InvalidInput

GROW = 1e-12


class _OracleIndex:
    def __init__(self, domain):
        outer = list(domain.outer.vertices)
        holes = [list(h.vertices) for h in domain.holes]
        self.region = prep(Polygon(outer, holes).buffer(GROW, join_style="mitre"))
        self.nodes = outer + [v for h in holes for v in h]
        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(len(self.nodes)))
        for i, u in enumerate(self.nodes):
            for j in range(i + 1, len(self.nodes)):
                v = self.nodes[j]
                if self.sees(u, v):
                    self.graph.add_edge(i, j, weight=math.dist(u, v))

    def sees(self, u, v):
        if u == v:
            return self.region.covers(Point(u))
        return self.region.covers(LineString([u, v]))


@functools.lru_cache(maxsize=32)
def _index(domain):
    return _OracleIndex(domain)


def visibility_oracle_distance(dom, a, b):
    """Geodesic distance by brute-force visibility graph search."""
    from .geodesic import as_domain

    idx = _index(as_domain(dom))
    a = (float(a[0]), float(a[1]))
    b = (float(b[0]), float(b[1]))
    for p in (a, b):
        if not idx.region.covers(Point(p)):
            raise InvalidInput(f"point {p} is outside the free space")
    if a == b:
        return 0.0
    if idx.sees(a, b):
        return math.dist(a, b)
    g = idx.graph.copy()
    sa, sb = "a", "b"
    for i, v in enumerate(idx.nodes):
        if idx.sees(a, v):
            g.add_edge(sa, i, weight=math.dist(a, v))
        if idx.sees(b, v):
            g.add_edge(sb, i, weight=math.dist(b, v))
    try:
        return nx.dijkstra_path_length(g, sa, sb)
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        return math.inf
