"""Planar primitives: orientation, containment, segment clearance, ear clipping."""

import math

import numpy as np

# Boundary snap distance for containment tests.
EPS = 1e-12
# Incidence tolerance for "lies on a line" decisions.
TOL = 1e-10


class GeometryError(ValueError):
    pass


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dist(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


def signed_area(coords):
    s = 0.0
    n = len(coords)
    for i in range(n):
        x0, y0 = coords[i]
        x1, y1 = coords[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def lerp(a, b, t):
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def closest_on_segment(p, a, b):
    """Return (t, point, distance) for the point of segment ab nearest to p."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    ll = dx * dx + dy * dy
    if ll == 0.0:
        return 0.0, (a[0], a[1]), dist(p, a)
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / ll
    t = min(1.0, max(0.0, t))
    q = (a[0] + t * dx, a[1] + t * dy)
    return t, q, dist(p, q)


def segments_cross(a, b, c, d, tol=TOL):
    """True when segments ab and cd intersect in a single interior point."""
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    lab = dist(a, b) or 1.0
    lcd = dist(c, d) or 1.0
    return (
        d1 * d2 < 0
        and d3 * d4 < 0
        and abs(d1) > tol * lab
        and abs(d2) > tol * lab
        and abs(d3) > tol * lcd
        and abs(d4) > tol * lcd
    )


def segments_touch(a, b, c, d, tol=TOL):
    """True when closed segments ab and cd share at least one point (within tol)."""
    if segments_cross(a, b, c, d, tol):
        return True
    for p, (s, e) in ((a, (c, d)), (b, (c, d)), (c, (a, b)), (d, (a, b))):
        if closest_on_segment(p, s, e)[2] <= tol:
            return True
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    return d1 * d2 < 0 and d3 * d4 < 0


def is_simple(coords):
    n = len(coords)
    if n < 3:
        return False
    for i in range(n):
        if dist(coords[i], coords[(i + 1) % n]) <= EPS:
            return False
    for i in range(n):
        a, b = coords[i], coords[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or j == (i + 1) % n:
                continue
            c, d = coords[j], coords[(j + 1) % n]
            if segments_touch(a, b, c, d, EPS):
                return False
    return True


def point_in_polygon(p, coords):
    """Even-odd test; boundary points (within EPS) count as inside."""
    n = len(coords)
    x, y = p
    inside = False
    for i in range(n):
        a = coords[i]
        b = coords[(i + 1) % n]
        if closest_on_segment(p, a, b)[2] <= EPS:
            return True
        if (a[1] > y) != (b[1] > y):
            xi = a[0] + (y - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x < xi:
                inside = not inside
    return inside


class EdgeSet:
    """Vectorised queries against a fixed collection of boundary edges."""

    def __init__(self, rings):
        a, b = [], []
        for ring in rings:
            m = len(ring)
            for i in range(m):
                a.append(ring[i])
                b.append(ring[(i + 1) % m])
        self.a = np.asarray(a, dtype=float).reshape(-1, 2)
        self.b = np.asarray(b, dtype=float).reshape(-1, 2)
        self.d = self.b - self.a
        self.len = np.hypot(self.d[:, 0], self.d[:, 1])
        self.len2 = self.len**2
        self.vertices = self.a.copy()

    def boundary_distance(self, p):
        px, py = p
        t = ((px - self.a[:, 0]) * self.d[:, 0] + (py - self.a[:, 1]) * self.d[:, 1]) / self.len2
        np.clip(t, 0.0, 1.0, out=t)
        qx = self.a[:, 0] + t * self.d[:, 0]
        qy = self.a[:, 1] + t * self.d[:, 1]
        return float(np.min(np.hypot(qx - px, qy - py)))

    def crossings_odd(self, p):
        px, py = p
        ay = self.a[:, 1]
        by = self.b[:, 1]
        spans = (ay > py) != (by > py)
        if not spans.any():
            return False
        a = self.a[spans]
        d = self.d[spans]
        xi = a[:, 0] + (py - a[:, 1]) * d[:, 0] / d[:, 1]
        return bool(np.count_nonzero(px < xi) % 2)

    def contains(self, p):
        """Closed-region membership under the even-odd rule with boundary snap."""
        if self.boundary_distance(p) <= EPS:
            return True
        return self.crossings_odd(p)

    def contains_many(self, pts):
        return np.array([self.contains(p) for p in pts], dtype=bool)

    def segment_clear(self, p, q):
        """True when the closed segment pq lies in the closed region."""
        px, py = p
        qx, qy = q
        dx, dy = qx - px, qy - py
        ln = math.hypot(dx, dy)
        if ln <= EPS:
            return self.contains(p)
        a = self.a
        b = self.b
        # signed distances of edge endpoints from line pq
        sa = (dx * (a[:, 1] - py) - dy * (a[:, 0] - px)) / ln
        sb = (dx * (b[:, 1] - py) - dy * (b[:, 0] - px)) / ln
        # signed distances of p and q from each edge line
        ex, ey = self.d[:, 0], self.d[:, 1]
        tp = (ex * (py - a[:, 1]) - ey * (px - a[:, 0])) / self.len
        tq = (ex * (qy - a[:, 1]) - ey * (qx - a[:, 0])) / self.len
        proper = (
            (sa * sb < 0)
            & (np.abs(sa) > TOL)
            & (np.abs(sb) > TOL)
            & (tp * tq < 0)
            & (np.abs(tp) > TOL)
            & (np.abs(tq) > TOL)
        )
        if proper.any():
            return False
        # split pq where boundary vertices touch it; test each piece's midpoint
        lam = ((a[:, 0] - px) * dx + (a[:, 1] - py) * dy) / (ln * ln)
        on = (np.abs(sa) <= TOL) & (lam > 0.0) & (lam < 1.0)
        ts = [0.0, 1.0]
        if on.any():
            ts.extend(lam[on].tolist())
            ts.sort()
        for t0, t1 in zip(ts, ts[1:]):
            if (t1 - t0) * ln <= EPS:
                continue
            tm = 0.5 * (t0 + t1)
            if not self.contains((px + tm * dx, py + tm * dy)):
                return False
        return True

    def ray_hit(self, origin, direction, skip_tol=TOL):
        """First boundary point hit by the ray origin + s*direction, s > skip_tol.

        Returns (s, edge_index, edge_param) or None.
        """
        ox, oy = origin
        rx, ry = direction
        ex, ey = self.d[:, 0], self.d[:, 1]
        den = rx * ey - ry * ex
        wx = self.a[:, 0] - ox
        wy = self.a[:, 1] - oy
        with np.errstate(divide="ignore", invalid="ignore"):
            s = (wx * ey - wy * ex) / den
            u = (wx * ry - wy * rx) / den
        ok = (np.abs(den) > 1e-15) & (s > skip_tol) & (u >= -TOL) & (u <= 1.0 + TOL)
        # edges parallel to the ray: the nearer endpoint ahead of the origin counts
        par = np.abs(den) <= 1e-15
        best = None
        if ok.any():
            idx = np.flatnonzero(ok)
            j = idx[np.argmin(s[idx])]
            best = (float(s[j]), int(j), float(min(1.0, max(0.0, u[j]))))
        if par.any():
            rl = math.hypot(rx, ry)
            for j in np.flatnonzero(par):
                for ui, pt in ((0.0, self.a[j]), (1.0, self.b[j])):
                    off = (rx * (pt[1] - oy) - ry * (pt[0] - ox)) / rl
                    sj = ((pt[0] - ox) * rx + (pt[1] - oy) * ry) / (rl * rl)
                    if abs(off) <= TOL and sj > skip_tol and (best is None or sj < best[0]):
                        best = (float(sj), int(j), ui)
        return best


def triangulate(coords):
    """Ear-clipping triangulation of a counterclockwise simple polygon.

    Vertices at which the boundary is straight are skipped.  Returns triangles
    as counterclockwise index triples into ``coords``.
    """
    n = len(coords)
    scale = max(max(abs(c[0]), abs(c[1])) for c in coords) or 1.0
    ctol = TOL * scale * scale
    idx = list(range(n))
    # drop straight-angle vertices
    changed = True
    while changed and len(idx) > 3:
        changed = False
        for j in range(len(idx)):
            p, c, q = coords[idx[j - 1]], coords[idx[j]], coords[idx[(j + 1) % len(idx)]]
            if abs(cross(p, c, q)) <= ctol and (c[0] - p[0]) * (q[0] - c[0]) + (c[1] - p[1]) * (q[1] - c[1]) > 0:
                del idx[j]
                changed = True
                break
    tris = []
    guard = 0
    while len(idx) > 3:
        m = len(idx)
        clipped = False
        for j in range(m):
            i0, i1, i2 = idx[j - 1], idx[j], idx[(j + 1) % m]
            a, b, c = coords[i0], coords[i1], coords[i2]
            if cross(a, b, c) <= ctol:
                continue
            blocked = False
            for other in idx:
                if other in (i0, i1, i2):
                    continue
                p = coords[other]
                if (
                    cross(a, b, p) >= -ctol
                    and cross(b, c, p) >= -ctol
                    and cross(c, a, p) >= -ctol
                ):
                    blocked = True
                    break
            if blocked:
                continue
            tris.append((i0, i1, i2))
            del idx[j]
            clipped = True
            break
        if not clipped:
            # remove a degenerate spike if one is present, otherwise give up
            for j in range(m):
                i0, i1, i2 = idx[j - 1], idx[j], idx[(j + 1) % m]
                if abs(cross(coords[i0], coords[i1], coords[i2])) <= ctol:
                    del idx[j]
                    clipped = True
                    break
        if not clipped:
            raise GeometryError("ear clipping failed; polygon is not simple")
        guard += 1
        if guard > 10 * n:
            raise GeometryError("ear clipping did not terminate")
    if len(idx) == 3 and cross(coords[idx[0]], coords[idx[1]], coords[idx[2]]) > ctol:
        tris.append(tuple(idx))
    return tris


def in_triangle(p, a, b, c, tol=TOL):
    return cross(a, b, p) >= -tol and cross(b, c, p) >= -tol and cross(c, a, p) >= -tol
