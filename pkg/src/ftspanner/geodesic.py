"""Geodesic shortest paths, distances and projections in polygonal domains.

Simple polygons are handled by ear-clipping triangulation, a walk along the
dual tree and the funnel algorithm.  Domains with holes use Dijkstra over the
visibility graph of reflex vertices, augmented with the query points.

Projection of a point onto a segment is computed exactly: every shortest path
to a point x of the segment ends with a straight piece from either the source
or a reflex vertex that sees x, so the minimum over the segment is the minimum,
over those last vertices, of their geodesic distance plus the Euclidean
distance to the part of the segment they see.
"""

import functools
import heapq
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .geometry import (
    EPS,
    TOL,
    EdgeSet,
    GeometryError,
    closest_on_segment,
    cross,
    dist,
    in_triangle,
    is_simple,
    point_in_polygon,
    segments_touch,
    signed_area,
    triangulate,
)
from .metric import InvalidInput


def _as_coords(vertices):
    return tuple((float(x), float(y)) for x, y in vertices)


@dataclass(frozen=True)
class SimplePolygon:
    """Counterclockwise simple polygon.  Clockwise input is reversed."""

    vertices: tuple

    def __post_init__(self):
        coords = _as_coords(self.vertices)
        if len(coords) < 3:
            raise InvalidInput("a polygon needs at least 3 vertices")
        if signed_area(coords) < 0:
            coords = coords[::-1]
        if not is_simple(coords):
            raise InvalidInput("polygon is not simple")
        object.__setattr__(self, "vertices", coords)

    @classmethod
    def trusted(cls, coords):
        """Build from counterclockwise coordinates produced internally (no validation)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "vertices", _as_coords(coords))
        return obj

    @property
    def area(self):
        return signed_area(self.vertices)

    def contains(self, p):
        return point_in_polygon(p, self.vertices)

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class PolygonalDomain:
    """Outer simple polygon with pairwise disjoint holes strictly inside it."""

    outer: SimplePolygon
    holes: tuple = ()

    def __post_init__(self):
        outer = self.outer if isinstance(self.outer, SimplePolygon) else SimplePolygon(self.outer)
        holes = tuple(h if isinstance(h, SimplePolygon) else SimplePolygon(h) for h in self.holes)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "holes", holes)
        oc = outer.vertices
        for j, h in enumerate(holes):
            for v in h.vertices:
                if not point_in_polygon(v, oc) or _near_ring(v, oc):
                    raise InvalidInput(f"hole {j} is not strictly inside the outer polygon")
            if _rings_touch(h.vertices, oc):
                raise InvalidInput(f"hole {j} touches the outer boundary")
            for i in range(j):
                g = holes[i]
                if _rings_touch(h.vertices, g.vertices):
                    raise InvalidInput(f"holes {i} and {j} intersect")
                if point_in_polygon(h.vertices[0], g.vertices) or point_in_polygon(g.vertices[0], h.vertices):
                    raise InvalidInput(f"holes {i} and {j} are nested")

    @property
    def h(self):
        return len(self.holes)

    def rings(self):
        """Boundary rings oriented so the free space lies to the left of every edge."""
        return [self.outer.vertices] + [hole.vertices[::-1] for hole in self.holes]

    def contains(self, p):
        return engine_for(self).contains(p)


def as_domain(region):
    if isinstance(region, PolygonalDomain):
        return region
    if isinstance(region, SimplePolygon):
        return PolygonalDomain(region, ())
    return PolygonalDomain(SimplePolygon(region), ())


def _near_ring(p, ring):
    m = len(ring)
    return any(closest_on_segment(p, ring[i], ring[(i + 1) % m])[2] <= EPS for i in range(m))


def _rings_touch(r1, r2):
    for i in range(len(r1)):
        a, b = r1[i], r1[(i + 1) % len(r1)]
        for j in range(len(r2)):
            if segments_touch(a, b, r2[j], r2[(j + 1) % len(r2)], EPS):
                return True
    return False


@dataclass(frozen=True)
class GeodesicPath:
    waypoints: tuple
    length: float


def _path_length(pts):
    return sum(dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1))


def _prune_straight(pts):
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        a, b, c = out[-1], pts[i], pts[i + 1]
        if dist(a, b) <= EPS:
            continue
        if abs(cross(a, b, c)) <= TOL * max(dist(a, c), 1.0) and (
            (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) >= 0
        ):
            continue
        out.append(b)
    if len(pts) > 1:
        if dist(out[-1], pts[-1]) > EPS or len(out) == 1:
            out.append(pts[-1])
    return out


def string_pull(a, b, portals):
    """Funnel algorithm through a sequence of (left, right) portals from a to b."""
    pts = [(a, a)] + list(portals) + [(b, b)]
    path = [a]
    apex = left = right = a
    apex_i = left_i = right_i = 0
    i = 1
    while i < len(pts):
        pl, pr = pts[i]
        if cross(apex, right, pr) >= 0.0:
            if apex == right or cross(apex, left, pr) < 0.0:
                right, right_i = pr, i
            else:
                path.append(left)
                apex, apex_i = left, left_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        if cross(apex, left, pl) <= 0.0:
            if apex == left or cross(apex, right, pl) > 0.0:
                left, left_i = pl, i
            else:
                path.append(right)
                apex, apex_i = right, right_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        i += 1
    if path[-1] != b:
        path.append(b)
    return path


class GeodesicEngine:
    """Query structure for one domain; all structures are built on construction."""

    def __init__(self, domain):
        self.domain = domain
        rings = domain.rings()
        self.edges = EdgeSet(rings)
        verts = []
        reflex = []
        for ring in rings:
            m = len(ring)
            for i in range(m):
                v = ring[i]
                verts.append(v)
                if cross(ring[i - 1], v, ring[(i + 1) % m]) < -TOL * TOL:
                    reflex.append(v)
        self.vertices = verts
        self.reflex = reflex
        self.vertex_array = np.asarray(verts, dtype=float)
        self.reflex_array = np.asarray(reflex, dtype=float).reshape(-1, 2)
        r = len(reflex)
        self.reflex_adj = [[] for _ in range(r)]
        for i in range(r):
            for j in range(i + 1, r):
                if self.edges.segment_clear(reflex[i], reflex[j]):
                    d = dist(reflex[i], reflex[j])
                    self.reflex_adj[i].append((j, d))
                    self.reflex_adj[j].append((i, d))
        self.triangles = None
        if not domain.holes:
            coords = domain.outer.vertices
            self.triangles = [tuple(coords[k] for k in t) for t in triangulate(coords)]
            owner = {}
            self.tri_adj = [[] for _ in self.triangles]
            for ti, tri in enumerate(self.triangles):
                for e in range(3):
                    u, v = tri[e], tri[(e + 1) % 3]
                    key = (u, v) if u < v else (v, u)
                    if key in owner:
                        tj = owner[key]
                        self.tri_adj[ti].append((tj, u, v))
                        tj_tri = self.triangles[tj]
                        for f in range(3):
                            if {tj_tri[f], tj_tri[(f + 1) % 3]} == {u, v}:
                                self.tri_adj[tj].append((ti, tj_tri[f], tj_tri[(f + 1) % 3]))
                    else:
                        owner[key] = ti
        scale = max(1.0, float(np.max(np.abs(self.vertex_array))))
        self._tri_tol = TOL * scale * scale
        self._fields = {}

    # -- predicates -------------------------------------------------------

    def contains(self, p):
        return self.edges.contains(p)

    def segment_clear(self, p, q):
        return self.edges.segment_clear(p, q)

    def _require(self, p):
        if not self.contains(p):
            raise InvalidInput(f"point {tuple(p)} is outside the free space")

    # -- shortest paths ---------------------------------------------------

    def shortest_path(self, a, b):
        a = (float(a[0]), float(a[1]))
        b = (float(b[0]), float(b[1]))
        self._require(a)
        self._require(b)
        if a == b:
            return GeodesicPath((a, b), 0.0)
        if self.triangles is not None:
            pts = self._funnel(a, b)
        else:
            pts = self._visibility_path(a, b)
        pts = _prune_straight(pts)
        return GeodesicPath(tuple(pts), _path_length(pts))

    def distance(self, a, b):
        return self.shortest_path(a, b).length

    def _locate(self, p):
        tol = self._tri_tol
        return [i for i, (a, b, c) in enumerate(self.triangles) if in_triangle(p, a, b, c, tol)]

    def _funnel(self, a, b):
        ta = self._locate(a)
        tb = self._locate(b)
        if not ta or not tb:
            raise InvalidInput("point could not be located in the triangulation")
        goal = set(tb)
        if goal.intersection(ta):
            return [a, b]
        # multi-source BFS: the shortest sleeve never has a portal through a or b
        prev = {t: None for t in ta}
        queue = deque(ta)
        end = None
        while queue:
            t = queue.popleft()
            if t in goal:
                end = t
                break
            for nb, u, v in self.tri_adj[t]:
                if nb not in prev:
                    prev[nb] = (t, u, v)
                    queue.append(nb)
        if end is None:
            raise GeometryError("triangulation dual is disconnected")
        portals = []
        t = end
        while prev[t] is not None:
            t0, u, v = prev[t]
            # u -> v is counterclockwise in t0, so leaving t0, u is on the right
            portals.append((v, u))
            t = t0
        portals.reverse()
        return string_pull(a, b, portals)

    def field(self, p):
        """Geodesic distances from p to every reflex vertex (inf if unreachable)."""
        key = (float(p[0]), float(p[1]))
        f = self._fields.get(key)
        if f is not None:
            return f
        r = len(self.reflex)
        d = [math.inf] * r
        pred = [-1] * r
        heap = []
        for i in range(r):
            if self.segment_clear(key, self.reflex[i]):
                d[i] = dist(key, self.reflex[i])
                heap.append((d[i], i))
        heapq.heapify(heap)
        while heap:
            du, u = heapq.heappop(heap)
            if du > d[u]:
                continue
            for v, w in self.reflex_adj[u]:
                if du + w < d[v]:
                    d[v] = du + w
                    pred[v] = u
                    heapq.heappush(heap, (d[v], v))
        f = (d, pred)
        self._fields[key] = f
        return f

    def _visibility_path(self, a, b):
        if self.segment_clear(a, b):
            return [a, b]
        d, pred = self.field(a)
        best, last = math.inf, -1
        for i, v in enumerate(self.reflex):
            if d[i] + dist(v, b) < best and self.segment_clear(v, b):
                best = d[i] + dist(v, b)
                last = i
        if last < 0:
            raise GeometryError("no path between the query points")
        chain = []
        while last >= 0:
            chain.append(self.reflex[last])
            last = pred[last]
        return [a] + chain[::-1] + [b]

    # -- projections ------------------------------------------------------

    def _visible_intervals(self, v, s0, s1):
        """Sub-intervals [t0, t1] of the segment s0 + t(s1 - s0) visible from v."""
        vx, vy = v
        dx, dy = s1[0] - s0[0], s1[1] - s0[1]
        seglen = math.hypot(dx, dy)
        if seglen <= EPS:
            return [(0.0, 0.0)] if self.segment_clear(v, s0) else []
        W = self.vertex_array
        wx = W[:, 0] - vx
        wy = W[:, 1] - vy
        den = wx * dy - wy * dx
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = ((s0[0] - vx) * dy - (s0[1] - vy) * dx) / den
            t = ((vx - s0[0]) * wy - (vy - s0[1]) * wx) / (dx * wy - dy * wx)
        ok = (np.abs(den) > 1e-14) & (lam >= 1.0 - 1e-9) & (t > 0.0) & (t < 1.0)
        ts = [0.0, 1.0] + t[ok].tolist()
        # vertices lying on the segment's supporting line
        off = (dx * (W[:, 1] - s0[1]) - dy * (W[:, 0] - s0[0])) / seglen
        par = ((W[:, 0] - s0[0]) * dx + (W[:, 1] - s0[1]) * dy) / (seglen * seglen)
        on = (np.abs(off) <= TOL) & (par > 0.0) & (par < 1.0)
        ts.extend(par[on].tolist())
        ts = sorted(set(ts))
        out = []
        for t0, t1 in zip(ts, ts[1:]):
            tm = 0.5 * (t0 + t1)
            if self.segment_clear(v, (s0[0] + tm * dx, s0[1] + tm * dy)):
                if out and abs(out[-1][1] - t0) <= 1e-15:
                    out[-1] = (out[-1][0], t1)
                else:
                    out.append((t0, t1))
        return out

    def project(self, p, s0, s1):
        """Point of segment s0s1 geodesically nearest to p.

        Returns (point, distance, t) where point = s0 + t (s1 - s0).  Ties are
        resolved toward s0.
        """
        p = (float(p[0]), float(p[1]))
        s0 = (float(s0[0]), float(s0[1]))
        s1 = (float(s1[0]), float(s1[1]))
        self._require(p)
        d, _ = self.field(p)
        cands = [(closest_on_segment(p, s0, s1)[2], 0.0, p)]
        for i, v in enumerate(self.reflex):
            if d[i] < math.inf:
                cands.append((d[i] + closest_on_segment(v, s0, s1)[2], d[i], v))
        cands.sort(key=lambda c: c[0])
        dx, dy = s1[0] - s0[0], s1[1] - s0[1]
        ll = dx * dx + dy * dy
        best, best_t = math.inf, 0.0
        for lb, d0, v in cands:
            if lb > best + 1e-12:
                break
            for t0, t1 in self._visible_intervals(v, s0, s1):
                if ll > 0:
                    tf = ((v[0] - s0[0]) * dx + (v[1] - s0[1]) * dy) / ll
                else:
                    tf = 0.0
                tc = min(t1, max(t0, tf))
                val = d0 + dist(v, (s0[0] + tc * dx, s0[1] + tc * dy))
                if val < best - 1e-12 or (val <= best + 1e-12 and tc < best_t):
                    best, best_t = val, tc
        if best == math.inf:
            raise GeometryError("segment is not reachable from the point")
        return (s0[0] + best_t * dx, s0[1] + best_t * dy), best, best_t


@functools.lru_cache(maxsize=64)
def engine_for(domain):
    return GeodesicEngine(domain)


def geodesic_distance(dom, a, b):
    """Shortest free-space path between a and b."""
    return engine_for(as_domain(dom)).shortest_path(a, b)


def geodesic_project(dom, p, seg):
    """(nearest point on seg, geodesic distance) for p; seg is a pair of endpoints."""
    s0, s1 = seg
    point, d, _ = engine_for(as_domain(dom)).project(p, s0, s1)
    return point, d


def reflex_vertices(dom):
    return list(engine_for(as_domain(dom)).reflex)
