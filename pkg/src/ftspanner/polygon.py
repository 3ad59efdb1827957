"""Geodesic fault-tolerant spanners in simple polygons and polygonal domains.

A region is cut by a splitting segment, every current point is projected
(geodesically) onto the segment with weight w(p) + d(p, projection), the
weighted R^d spanner is built on the projections and its edges are lifted back
to the source points.  Simple polygons recurse on balanced chords; domains are
first cut into simple faces by vertical segments at hole extremes and recurse
on a separator of the face adjacency graph.
"""

import math
from collections import Counter, deque
from dataclasses import dataclass, field

import numpy as np

from .cluster import build_vftswp_rd
from .geodesic import PolygonalDomain, SimplePolygon, as_domain, engine_for
from .geometry import (
    EPS,
    TOL,
    EdgeSet,
    GeometryError,
    dist,
    in_triangle,
    point_in_polygon,
    signed_area,
    triangulate,
)
from .metric import InvalidInput, SpannerGraph, WeightedPoint, check_ids


@dataclass(frozen=True)
class SplittingSegment:
    a: tuple
    b: tuple
    kind: str = "chord"  # "chord" | "vertical" | "cut"

    @property
    def endpoints(self):
        return self.a, self.b

    @property
    def length(self):
        return dist(self.a, self.b)


# -- chords of a simple polygon ------------------------------------------------


def _boundary_point(coords, pos):
    i, t = pos
    a = coords[i]
    if t == 0.0:
        return a
    b = coords[(i + 1) % len(coords)]
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _chain(coords, start, end):
    """Boundary walk from position start to position end, counterclockwise."""
    n = len(coords)
    out = [_boundary_point(coords, start)]
    k = (start[0] + 1) % n
    for _ in range(n + 1):
        out.append(coords[k])
        if k == end[0]:
            break
        k = (k + 1) % n
    else:
        raise GeometryError("boundary walk did not terminate")
    if end[1] > 0.0:
        out.append(_boundary_point(coords, end))
    elif out[-1] != coords[end[0]]:
        out.append(coords[end[0]])
    return out


def _dedupe(ring):
    out = []
    for p in ring:
        if not out or dist(out[-1], p) > EPS:
            out.append(p)
    while len(out) > 1 and dist(out[0], out[-1]) <= EPS:
        out.pop()
    return out


def cut_polygon(coords, start, end):
    """Split a counterclockwise ring along the chord between two boundary positions.

    Positions are (edge index, parameter in [0, 1)).  Returns the two rings or
    None when the chord runs along the boundary.
    """
    if start[0] == end[0] and start[1] > 0.0 and end[1] > 0.0:
        return None
    if start == end:
        return None
    left = _dedupe(_chain(coords, start, end))
    right = _dedupe(_chain(coords, end, start))
    if len(left) < 3 or len(right) < 3:
        return None
    scale = max(1.0, max(abs(c) for p in coords for c in p))
    if signed_area(left) <= TOL * scale * scale or signed_area(right) <= TOL * scale * scale:
        return None
    return left, right


def contains_many(ring, pts):
    """Vectorised closed point-in-polygon (even-odd, boundary snapped)."""
    P = np.asarray(pts, dtype=float).reshape(-1, 2)
    A = np.asarray(ring, dtype=float)
    B = np.roll(A, -1, axis=0)
    D = B - A
    L2 = (D**2).sum(axis=1)
    px = P[:, 0:1]
    py = P[:, 1:2]
    t = ((px - A[:, 0]) * D[:, 0] + (py - A[:, 1]) * D[:, 1]) / L2
    np.clip(t, 0.0, 1.0, out=t)
    qx = A[:, 0] + t * D[:, 0]
    qy = A[:, 1] + t * D[:, 1]
    near = (np.hypot(qx - px, qy - py) <= EPS).any(axis=1)
    spans = (A[:, 1] > py) != (B[:, 1] > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xi = A[:, 0] + (py - A[:, 1]) * D[:, 0] / D[:, 1]
    odd = (np.count_nonzero(spans & (px < xi), axis=1) % 2).astype(bool)
    return near | odd


@dataclass
class PolygonSplit:
    segment: SplittingSegment
    left: SimplePolygon
    right: SimplePolygon
    left_points: list  # indices into the point list passed in
    right_points: list


def _evaluate(coords, start, end, P):
    rings = cut_polygon(coords, start, end)
    if rings is None:
        return None
    left, right = rings
    inside = contains_many(left, P) if len(P) else np.zeros(0, dtype=bool)
    li = [int(i) for i in np.flatnonzero(inside)]
    ri = [int(i) for i in np.flatnonzero(~inside)]
    seg = SplittingSegment(_boundary_point(coords, start), _boundary_point(coords, end), "chord")
    return PolygonSplit(seg, SimplePolygon.trusted(left), SimplePolygon.trusted(right), li, ri)


def _balance_target(m):
    return 1 if m == 2 else math.ceil(2 * m / 3)


def _in_wedge(coords, a, d):
    """Is direction d strictly inside the interior angle at vertex a?"""
    n = len(coords)
    v = coords[a]
    u = coords[a - 1]
    w = coords[(a + 1) % n]
    start = math.atan2(w[1] - v[1], w[0] - v[0])
    stop = (math.atan2(u[1] - v[1], u[0] - v[0]) - start) % (2 * math.pi)
    ang = (math.atan2(d[1], d[0]) - start) % (2 * math.pi)
    return 1e-12 < ang < stop - 1e-12


def _ray_chord(coords, edges, a, d):
    hit = edges.ray_hit(coords[a], d)
    if hit is None:
        return None
    _, j, u = hit
    n = len(coords)
    p = _boundary_point(coords, (j, u))
    if dist(p, coords[j]) <= 1e-12:
        end = (j, 0.0)
    elif dist(p, coords[(j + 1) % n]) <= 1e-12:
        end = ((j + 1) % n, 0.0)
    else:
        end = (j, u)
    return (a, 0.0), end


def split_polygon(poly, pts):
    """Chord cutting poly into two parts with at most ceil(2m/3) of the m points each.

    Points on the chord go to the left part (the one reached walking
    counterclockwise from the chord's first endpoint). The bound holds for
    distinct points; with repeats the most balanced proper split is returned.
    """
    pts = [tuple(p[:2]) for p in pts]
    m = len(pts)
    if m == 0:
        raise InvalidInput("no points to split")
    coords = list(poly.vertices)
    target = _balance_target(m)
    P = np.asarray(pts, dtype=float)
    tris = triangulate(coords)

    def better(cand, best):
        if cand is None:
            return best
        score = max(len(cand.left_points), len(cand.right_points))
        if best is None or score < max(len(best.left_points), len(best.right_points)):
            return cand
        return best

    best = None
    diagonals = {}
    for ti, t in enumerate(tris):
        for e in range(3):
            u, v = t[e], t[(e + 1) % 3]
            diagonals.setdefault((min(u, v), max(u, v)), []).append(ti)
    diagonals = {e: ts for e, ts in diagonals.items() if len(ts) == 2}
    for u, v in sorted(diagonals):
        best = better(_evaluate(coords, (u, 0.0), (v, 0.0), P), best)
    if best is not None and max(len(best.left_points), len(best.right_points)) <= target:
        return best

    edges = EdgeSet([coords])
    # heaviest-branch-minimising triangle: rays from its corners sweep through it
    owner = [None] * m
    scale = max(1.0, max(abs(c) for p in coords for c in p))
    for i, p in enumerate(pts):
        for ti, (a, b, c) in enumerate(tris):
            if in_triangle(p, coords[a], coords[b], coords[c], TOL * scale * scale):
                owner[i] = ti
                break
    load = [0] * len(tris)
    for o in owner:
        if o is not None:
            load[o] += 1
    adj = [[] for _ in tris]
    for ts in diagonals.values():
        adj[ts[0]].append(ts[1])
        adj[ts[1]].append(ts[0])

    def branch(start, banned):
        seen = {start, banned}
        stack = [start]
        total = 0
        while stack:
            t = stack.pop()
            total += load[t]
            for nb in adj[t]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return total

    centroid = min(range(len(tris)), key=lambda t: (max([branch(nb, t) for nb in adj[t]] or [0]), t))
    first = list(tris[centroid])
    rest = [i for i in range(len(coords)) if i not in first]
    targets = pts + coords
    # the centroid triangle's corners nearly always suffice; the rest are a fallback
    for round_sources in (first, rest):
        for a in round_sources:
            va = coords[a]
            angles = set()
            for q in targets:
                if dist(q, va) <= EPS:
                    continue
                base = math.atan2(q[1] - va[1], q[0] - va[0])
                for off in (-1e-7, 0.0, 1e-7):
                    angles.add(base + off)
            for ang in sorted(angles):
                d = (math.cos(ang), math.sin(ang))
                if not _in_wedge(coords, a, d):
                    continue
                chord = _ray_chord(coords, edges, a, d)
                if chord is None:
                    continue
                best = better(_evaluate(coords, chord[0], chord[1], P), best)
        if best is not None and max(len(best.left_points), len(best.right_points)) <= target:
            return best
    # coincident points cannot always be balanced; settle for progress
    if best is not None and len(set(pts)) < m and min(len(best.left_points), len(best.right_points)) > 0:
        return best
    raise GeometryError(f"no balanced splitting chord found for {m} points")


def splitting_segment_simple(poly, pts):
    return split_polygon(poly, pts).segment


# -- decomposition of a domain into simple faces ------------------------------


@dataclass
class DomainDecomposition:
    faces: list  # SimplePolygon per face
    segments: list  # SplittingSegment per segment id
    face_segments: list  # per face, sorted segment ids on its boundary
    dual: dict  # face -> set of adjacent faces
    weights: list = field(default_factory=list)  # points per face
    point_face: dict = field(default_factory=dict)  # point index -> face

    def segment_faces(self, s):
        return [f for f, segs in enumerate(self.face_segments) if s in segs]


def _extreme_vertices(hole):
    vs = hole.vertices
    return [
        (min(range(len(vs)), key=lambda i: (vs[i][0], -vs[i][1])), 1.0),
        (min(range(len(vs)), key=lambda i: (vs[i][0], vs[i][1])), -1.0),
        (max(range(len(vs)), key=lambda i: (vs[i][0], vs[i][1])), 1.0),
        (max(range(len(vs)), key=lambda i: (vs[i][0], -vs[i][1])), -1.0),
    ]


def _trace_faces(nodes, und_edges):
    nbrs = {i: [] for i in range(len(nodes))}
    for u, v in und_edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    for u in nbrs:
        x, y = nodes[u]
        nbrs[u].sort(key=lambda v: math.atan2(nodes[v][1] - y, nodes[v][0] - x))
    used = set()
    faces = []
    for u, v in und_edges:
        for h in ((u, v), (v, u)):
            if h in used:
                continue
            cyc = []
            a, b = h
            while (a, b) not in used:
                used.add((a, b))
                cyc.append(a)
                ring = nbrs[b]
                k = ring.index(a)
                a, b = b, ring[k - 1]
            faces.append(cyc)
    return faces


def _interior_point(coords):
    for a, b, c in triangulate(coords):
        pa, pb, pc = coords[a], coords[b], coords[c]
        return ((pa[0] + pb[0] + pc[0]) / 3.0, (pa[1] + pb[1] + pc[1]) / 3.0)
    raise GeometryError("degenerate face")


def _segments_on_ring(coords, seg_keys):
    n = len(coords)
    out = []
    for i in range(n):
        a, b = coords[i], coords[(i + 1) % n]
        key = (a, b) if a < b else (b, a)
        if key in seg_keys:
            out.append(seg_keys[key])
    return sorted(set(out))


def _cut_face(coords, seg_keys):
    """Diagonal splitting a face's decomposition segments as evenly as possible."""
    m = len(_segments_on_ring(coords, seg_keys))
    best = None
    for t in triangulate(coords):
        for e in range(3):
            u, v = t[e], t[(e + 1) % 3]
            if abs(u - v) in (1, len(coords) - 1):
                continue
            rings = cut_polygon(coords, (min(u, v), 0.0), (max(u, v), 0.0))
            if rings is None:
                continue
            a = len(_segments_on_ring(rings[0], seg_keys))
            score = max(a, m - a)
            if 2 <= a <= m - 2 and (best is None or score < best[0]):
                best = (score, rings, (coords[u], coords[v]))
    if best is None:
        raise GeometryError("face cannot be cut into parts with fewer segments")
    return best[1], best[2]


def decompose_domain(dom, points=()):
    """Cut the free space into simple faces with at most three segments each."""
    dom = as_domain(dom)
    engine = engine_for(dom)
    pts = [tuple(p.coords[:2]) if isinstance(p, WeightedPoint) else tuple(p[:2]) for p in points]
    if not dom.holes:
        face = dom.outer
        dec = DomainDecomposition([face], [], [[]], {0: set()})
    else:
        dec = _decompose_holes(dom, engine)
    dec.point_face = {}
    dec.weights = [0] * len(dec.faces)
    for i, p in enumerate(pts):
        for f, face in enumerate(dec.faces):
            if point_in_polygon(p, face.vertices):
                dec.point_face[i] = f
                dec.weights[f] += 1
                break
        else:
            raise InvalidInput(f"point {i} lies outside every face")
    return dec


def _decompose_holes(dom, engine):
    rings = dom.rings()
    nodes = []
    index = {}

    def node(p):
        p = (float(p[0]), float(p[1]))
        if p not in index:
            index[p] = len(nodes)
            nodes.append(p)
        return index[p]

    ring_edges = []  # (ring, i) -> list of (param, node)
    for r, ring in enumerate(rings):
        for i, v in enumerate(ring):
            node(v)
        ring_edges.append([[] for _ in ring])
    flat = [(r, i) for r, ring in enumerate(rings) for i in range(len(ring))]
    edges = engine.edges
    segs = []
    for hole in dom.holes:
        for vi, sign in _extreme_vertices(hole):
            v = hole.vertices[vi]
            hit = edges.ray_hit(v, (0.0, sign))
            if hit is None:
                raise GeometryError("vertical ray escaped the domain")
            s, j, u = hit
            r, i = flat[j]
            ring = rings[r]
            a, b = ring[i], ring[(i + 1) % len(ring)]
            if dist(a, (v[0], v[1] + sign * s)) <= 1e-12 or u <= 0.0:
                end = node(a)
            elif dist(b, (v[0], v[1] + sign * s)) <= 1e-12 or u >= 1.0:
                end = node(b)
            else:
                p = (v[0], v[1] + sign * s)
                end = node(p)
                ring_edges[r][i].append((u, end))
            key = tuple(sorted((node(v), end)))
            if key not in segs:
                segs.append(key)
    und = []
    for r, ring in enumerate(rings):
        for i in range(len(ring)):
            a = node(ring[i])
            b = node(ring[(i + 1) % len(ring)])
            chain = [a] + [nd for _, nd in sorted(ring_edges[r][i])] + [b]
            for x, y in zip(chain, chain[1:]):
                if x != y:
                    und.append((x, y))
    und.extend(segs)
    und = list(dict.fromkeys(tuple(sorted(e)) for e in und))
    seg_keys = {}
    segments = []
    for u, v in segs:
        pa, pb = nodes[u], nodes[v]
        seg_keys[(pa, pb) if pa < pb else (pb, pa)] = len(segments)
        segments.append(SplittingSegment(pa, pb, "vertical"))
    faces = []
    for cyc in _trace_faces(nodes, und):
        coords = [nodes[i] for i in cyc]
        if signed_area(coords) <= 0:
            continue
        if not engine.contains(_interior_point(coords)):
            continue
        faces.append(coords)
    work = list(faces)
    faces = []
    while work:
        coords = work.pop(0)
        if len(_segments_on_ring(coords, seg_keys)) <= 3:
            faces.append(coords)
            continue
        (r1, r2), (pa, pb) = _cut_face(coords, seg_keys)
        seg_keys[(pa, pb) if pa < pb else (pb, pa)] = len(segments)
        segments.append(SplittingSegment(pa, pb, "cut"))
        work = [r1, r2] + work
    face_segments = [_segments_on_ring(c, seg_keys) for c in faces]
    dual = {f: set() for f in range(len(faces))}
    for s in range(len(segments)):
        owners = [f for f, fs in enumerate(face_segments) if s in fs]
        for x in owners:
            for y in owners:
                if x != y:
                    dual[x].add(y)
    return DomainDecomposition([SimplePolygon.trusted(c) for c in faces], segments, face_segments, dual)


# -- planar separator -----------------------------------------------------------


def _components(nodes, adj, removed=frozenset()):
    seen = set(removed)
    comps = []
    for s in sorted(nodes):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen and v in adj:
                    seen.add(v)
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def _bfs(root, adj):
    parent = {root: None}
    depth = {root: 0}
    levels = [[root]]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u]):
            if v in adj and v not in parent:
                parent[v] = u
                depth[v] = depth[u] + 1
                if depth[v] == len(levels):
                    levels.append([])
                levels[depth[v]].append(v)
                queue.append(v)
    return parent, depth, levels


def planar_separator(adj, weights):
    """Split the nodes of a (planar) graph into (R, R1, R2).

    No edge joins R1 and R2, and each of R1, R2 carries at most 2/3 of the
    total weight.  Candidates are BFS levels, pairs of levels and fundamental
    cycles of BFS trees from every root; the smallest balanced one wins.
    """
    adj = {u: set(vs) & set(adj) for u, vs in adj.items()}
    nodes = sorted(adj)
    if len(nodes) < 2:
        raise InvalidInput("a separator needs at least two nodes")
    wt = {u: weights[u] for u in nodes}
    total = sum(wt.values())
    cands = set()
    if len(_components(nodes, adj)) > 1:
        cands.add(frozenset())
    for root in nodes:
        parent, depth, levels = _bfs(root, adj)
        comp_w = sum(wt[u] for lv in levels for u in lv)
        cum, med = 0, len(levels) - 1
        for l, lv in enumerate(levels):
            cum += sum(wt[u] for u in lv)
            if 2 * cum >= comp_w:
                med = l
                break
        for l, lv in enumerate(levels):
            cands.add(frozenset(lv))
            if l <= med:
                for l2 in range(med + 1, len(levels)):
                    cands.add(frozenset(lv) | frozenset(levels[l2]))
        for u in parent:
            for v in adj[u]:
                if v in parent and u < v and parent[u] != v and parent[v] != u:
                    a, b = u, v
                    cyc = {a, b}
                    while a != b:
                        if depth[a] >= depth[b]:
                            a = parent[a]
                        else:
                            b = parent[b]
                        cyc.update((a, b))
                    cands.add(frozenset(cyc))
    best = None
    for R in cands:
        comps = _components(nodes, adj, R)
        if not R and len(comps) < 2:
            continue
        if len(R) == len(nodes):
            continue
        comps.sort(key=lambda c: (-sum(wt[u] for u in c), c[0]))
        bins = [[], []]
        load = [0, 0]
        for c in comps:
            j = 0 if load[0] <= load[1] else 1
            bins[j].extend(c)
            load[j] += sum(wt[u] for u in c)
        if max(load) > 2.0 * total / 3.0 + 1e-9:
            continue
        key = (len(R), max(load), sorted(R))
        if best is None or key < best[0]:
            best = (key, set(R), set(bins[0]), set(bins[1]))
    if best is None:
        raise GeometryError("no balanced separator found")
    return best[1], best[2], best[3]


# -- projections ------------------------------------------------------------------


@dataclass
class ProjectionSet:
    segment: SplittingSegment
    refine: bool
    pieces: int
    sources: list  # source point id per projection
    coords: list  # projection location per projection
    weights: list  # w(source) + geodesic distance per projection

    def of(self, pid):
        return [i for i, s in enumerate(self.sources) if s == pid]


def piece_count(eps, pieces=None):
    return int(pieces) if pieces else max(1, math.ceil(1.0 / (eps * eps) - 1e-12))


def refine_projection_set(p, seg, dom, eps, pieces=None):
    """Weighted points on seg standing in for p: the nearest point of each of
    c equal pieces of the window of seg around p's projection."""
    if not eps > 0:
        raise InvalidInput(f"eps must be positive, got {eps}")
    engine = _engine(dom)
    s0, s1 = seg.endpoints if isinstance(seg, SplittingSegment) else seg
    xy = tuple(p.coords[:2])
    foot, d, t = engine.project(xy, s0, s1)
    if d <= EPS:
        return [(foot, p.weight)]
    length = dist(s0, s1)
    if length <= EPS:
        return [(foot, p.weight + d)]
    reach = (1.0 + 2.0 * eps) * d / length
    ta, tb = max(0.0, t - reach), min(1.0, t + reach)
    c = piece_count(eps, pieces)
    out = []
    seen = set()
    for j in range(c):
        u0 = ta + (tb - ta) * j / c
        u1 = ta + (tb - ta) * (j + 1) / c
        a = (s0[0] + u0 * (s1[0] - s0[0]), s0[1] + u0 * (s1[1] - s0[1]))
        b = (s0[0] + u1 * (s1[0] - s0[0]), s0[1] + u1 * (s1[1] - s0[1]))
        x, dx, _ = engine.project(xy, a, b)
        if x not in seen:
            seen.add(x)
            out.append((x, p.weight + dx))
    return out


def project_points(points, ids, seg, dom, eps, refine, pieces=None):
    engine = _engine(dom)
    sources, coords, weights = [], [], []
    for pid in ids:
        p = points[pid]
        if refine:
            items = refine_projection_set(p, seg, engine, eps, pieces)
        else:
            x, d, _ = engine.project(tuple(p.coords[:2]), seg.a, seg.b)
            items = [(x, p.weight + d)]
        for x, w in items:
            sources.append(pid)
            coords.append(x)
            weights.append(w)
    return ProjectionSet(seg, bool(refine), piece_count(eps, pieces) if refine else 1, sources, coords, weights)


def projection_faults(proj, k):
    """Fault parameter for the spanner on the projections."""
    per_source = Counter(proj.sources)
    return k * max(per_source.values(), default=1)


def _engine(dom):
    if hasattr(dom, "project") and hasattr(dom, "field"):
        return dom
    return engine_for(as_domain(dom))


class _Lengths:
    def __init__(self, points, engine):
        self.points = points
        self.engine = engine
        self.cache = {}

    def __call__(self, p, q):
        key = (p, q) if p < q else (q, p)
        d = self.cache.get(key)
        if d is None:
            d = self.engine.distance(self.points[p].coords[:2], self.points[q].coords[:2])
            self.cache[key] = d
        return d


def edges_from_projection(points, ids, seg, dom, k, eps, refine, G, pieces=None, lengths=None):
    """Project points `ids` onto seg, span the projections, lift edges into G.

    Returns the ProjectionSet used.
    """
    engine = _engine(dom)
    proj = project_points(points, ids, seg, engine, eps, refine, pieces)
    if len(set(proj.sources)) < 2:
        return proj
    lengths = lengths or _Lengths(points, engine)
    wpts = [WeightedPoint(c, w, i) for i, (c, w) in enumerate(zip(proj.coords, proj.weights))]
    # a faulty source takes all of its projections with it
    H = build_vftswp_rd(wpts, projection_faults(proj, k), eps)
    for r, s in sorted(H.edges):
        p, q = proj.sources[r], proj.sources[s]
        if p != q:
            G.add_edge(p, q, lengths(p, q))
    return proj


# -- recursive constructions ------------------------------------------------------


class _Build:
    def __init__(self, points, engine, k, eps, refine, pieces, trace):
        check_ids(points)
        if not eps > 0:
            raise InvalidInput(f"eps must be positive, got {eps}")
        if k < 0:
            raise InvalidInput(f"k must be non-negative, got {k}")
        for p in points:
            if not engine.contains(p.coords[:2]):
                raise InvalidInput(f"point {p.id} is outside the free space")
        self.points = points
        self.engine = engine
        self.k = k
        self.eps = eps
        self.refine = refine
        self.pieces = pieces
        self.trace = trace
        self.G = SpannerGraph(len(points))
        self.lengths = _Lengths(points, engine)

    def project(self, ids, seg, level):
        proj = edges_from_projection(
            self.points, ids, seg, self.engine, self.k, self.eps, self.refine, self.G, self.pieces, self.lengths
        )
        if self.trace is not None:
            self.trace.append({"kind": "projection", "level": level, "points": list(ids), "projection": proj})

    def simple(self, poly, ids, depth=0):
        if len(ids) <= 1:
            return
        xy = [self.points[i].coords[:2] for i in ids]
        if all(dist(xy[0], q) <= EPS for q in xy):
            for a in range(len(ids)):
                for b in range(a + 1, len(ids)):
                    self.G.add_edge(ids[a], ids[b], self.lengths(ids[a], ids[b]))
            return
        split = split_polygon(poly, xy)
        self.project(ids, split.segment, ("chord", depth))
        left = [ids[i] for i in split.left_points]
        right = [ids[i] for i in split.right_points]
        if self.trace is not None:
            self.trace.append(
                {"kind": "split", "depth": depth, "segment": split.segment, "left": left, "right": right, "polygon": poly}
            )
        self.simple(split.left, left, depth + 1)
        self.simple(split.right, right, depth + 1)


def build_vftswp_simple_polygon(poly, points, k, eps, refine=False, pieces=None, trace=None, engine=None):
    """Geodesic k-fault-tolerant spanner for weighted points inside a simple polygon."""
    poly = poly if isinstance(poly, SimplePolygon) else SimplePolygon(poly)
    engine = engine or engine_for(PolygonalDomain(poly, ()))
    b = _Build(points, engine, k, eps, refine, pieces, trace)
    b.simple(poly, list(range(len(points))))
    return b.G


def build_vftswp_domain(dom, points, k, eps, refine=False, pieces=None, trace=None):
    """Geodesic k-fault-tolerant spanner for weighted points in a polygonal domain."""
    dom = as_domain(dom)
    engine = engine_for(dom)
    if not dom.holes:
        return build_vftswp_simple_polygon(dom.outer, points, k, eps, refine, pieces, trace, engine)
    b = _Build(points, engine, k, eps, refine, pieces, trace)
    dec = decompose_domain(dom, points)
    if trace is not None:
        trace.append({"kind": "decomposition", "decomposition": dec})

    def recurse(faces, ids, level):
        if not ids:
            return
        if len(faces) == 1:
            (f,) = faces
            b.simple(dec.faces[f], ids)
            return
        sub = {f: dec.dual[f] & faces for f in faces}
        comps = _components(faces, sub)
        if len(comps) > 1:
            for comp in comps:
                cs = set(comp)
                recurse(cs, [i for i in ids if dec.point_face[i] in cs], level)
            return
        weights = {f: 0 for f in faces}
        for i in ids:
            weights[dec.point_face[i]] += 1
        R, R1, R2 = planar_separator(sub, weights)
        if trace is not None:
            trace.append(
                {"kind": "separator", "level": level, "R": R, "R1": R1, "R2": R2, "weights": weights, "adj": sub}
            )
        segs = sorted({s for f in R for s in dec.face_segments[f]})
        for s in segs:
            b.project(ids, dec.segments[s], ("separator", level))
        for f in sorted(R):
            b.simple(dec.faces[f], [i for i in ids if dec.point_face[i] == f])
        recurse(R1, [i for i in ids if dec.point_face[i] in R1], level + 1)
        recurse(R2, [i for i in ids if dec.point_face[i] in R2], level + 1)

    recurse(set(range(len(dec.faces))), list(range(len(points))), 0)
    return b.G
