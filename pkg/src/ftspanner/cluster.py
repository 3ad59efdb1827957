"""Weight-ordered clustering and the fault-tolerant spanner for weighted points in R^d."""

from dataclasses import dataclass

import numpy as np

from .base import BaseSpannerParams, build_base_vfts, chosen_neighbors, k_nearest_neighbors_in_graph
from .metric import InvalidInput, SpannerGraph, check_ids, euclidean


@dataclass
class Clustering:
    points: list
    k: int
    eps: float
    centers: list  # point ids, in creation order
    assignment: dict  # point id -> cluster index
    members: list  # per cluster, point ids in insertion (weight) order

    def center_of(self, pid):
        return self.centers[self.assignment[pid]]


def weight_order(points):
    return sorted(range(len(points)), key=lambda i: (points[i].weight, points[i].id))


def cluster(points, k, eps):
    if not eps > 0:
        raise InvalidInput(f"eps must be positive, got {eps}")
    if k < 0:
        raise InvalidInput(f"k must be non-negative, got {k}")
    n = len(points)
    if n < 1:
        raise InvalidInput("no points to cluster")
    check_ids(points)
    coords = np.array([p.coords for p in points], dtype=float)
    order = weight_order(points)
    centers, members, assignment = [], [], {}
    center_xy = np.empty_like(coords)
    center_ids = np.empty(n, dtype=int)

    def open_cluster(pid):
        center_xy[len(centers)] = coords[pid]
        center_ids[len(centers)] = pid
        assignment[pid] = len(centers)
        centers.append(pid)
        members.append([pid])

    for pos, pid in enumerate(order):
        if pos < k + 1:
            open_cluster(pid)
            continue
        z = len(centers)
        d = np.sqrt(((center_xy[:z] - coords[pid]) ** 2).sum(axis=1))
        dmin = d.min()
        j = min(np.flatnonzero(d == dmin), key=lambda c: center_ids[c])
        if dmin <= eps * points[pid].weight:
            members[j].append(pid)
            assignment[pid] = int(j)
        else:
            open_cluster(pid)
    return Clustering(list(points), k, eps, centers, assignment, members)


def base_on_centers(coords, k, t_b):
    """Base spanner on center locations; coincident centers become twins.

    Twins share the neighbourhood of their location and are joined to each
    other, so losing some copies of a location never disconnects the rest.
    """
    groups = {}
    for i, c in enumerate(map(tuple, coords)):
        groups.setdefault(c, []).append(i)
    reps = [g[0] for g in groups.values()]
    B = build_base_vfts(coords[reps], BaseSpannerParams(k, t_b)) if reps else SpannerGraph(0)
    copies = list(groups.values())
    G = SpannerGraph(len(coords))
    for (a, b), length in B.edges.items():
        for u in copies[a]:
            for v in copies[b]:
                G.add_edge(u, v, length)
    for g in copies:
        for i in range(len(g)):
            for j in range(i + 1, len(g)):
                G.add_edge(g[i], g[j], 0.0)
    G.chosen = [None] * len(coords)
    for a, g in enumerate(copies):
        picked = [v for b in chosen_neighbors(B, a) for v in copies[b]]
        for u in g:
            G.chosen[u] = [v for v in g if v != u] + picked
    return G


def build_vftswp_rd(points, k, eps, t_b=None, clustering=None, neighbors="chosen"):
    """k-vertex-fault-tolerant spanner for additively weighted points in R^d.

    Non-centers link to the light members of their cluster and to base
    neighbours of their center: by default the ones the center picked
    itself ("chosen"), else all of them ("all") or only the k nearest
    ("nearest"). The nearest-only rule can exceed the stretch bound once
    the center fails; "all" can blow up the size around hub centers.

    Returns the spanner; edge lengths are Euclidean.
    """
    if neighbors not in ("chosen", "all", "nearest"):
        raise InvalidInput(f"neighbors must be 'chosen', 'all' or 'nearest', not {neighbors!r}")
    if t_b is None:
        t_b = 2.0 + eps
    cl = clustering if clustering is not None else cluster(points, k, eps)
    n = len(points)
    G = SpannerGraph(n)
    if n <= 1:
        return G
    coords = np.array([p.coords for p in points], dtype=float)
    B = base_on_centers(coords[cl.centers], k, t_b)
    for (a, b), length in B.edges.items():
        G.add_edge(cl.centers[a], cl.centers[b], length)
    if neighbors == "chosen":
        near = [[cl.centers[j] for j in chosen_neighbors(B, i)] for i in range(len(cl.centers))]
    elif neighbors == "all":
        near = [[cl.centers[j] for j in sorted(B.neighbors(i))] for i in range(len(cl.centers))]
    else:
        near = [[cl.centers[j] for j in k_nearest_neighbors_in_graph(B, i, k)] for i in range(len(cl.centers))]
    for i, mem in enumerate(cl.members):
        light = mem[: k + 1]
        for p in mem[1:]:
            for v in light + near[i]:
                if v != p:
                    G.add_edge(p, v, euclidean(points[p].coords, points[v].coords))
    return G
