"""Seeded instance generators and a small library of named shapes."""

import math
import random

from .formats import Instance
from .geodesic import PolygonalDomain, SimplePolygon, engine_for
from .metric import InvalidInput, WeightedPoint

MAX_DRAWS = 10**6
SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def convex(m):
    return [(0.5 + 0.5 * math.cos(2 * math.pi * i / m), 0.5 + 0.5 * math.sin(2 * math.pi * i / m)) for i in range(m)]


def star(m, rng):
    # radially monotone, hence simple
    angles = sorted(rng.uniform(0.0, 2 * math.pi) for _ in range(m))
    return [(0.5 + r * math.cos(a), 0.5 + r * math.sin(a)) for a in angles for r in [rng.uniform(0.15, 0.5)]]


def comb(teeth):
    pts = [(0.0, 0.0), (1.0, 0.0)]
    w = 1.0 / (2 * teeth - 1)
    for i in reversed(range(teeth)):
        x0 = 2 * i * w
        pts += [(x0 + w, 1.0), (x0, 1.0)]
        if i:
            pts += [(x0, 0.25), (x0 - w, 0.25)]
    return pts


SHAPES = {
    "L": lambda rng: ([(0.0, 0.0), (1.0, 0.0), (1.0, 0.4), (0.4, 0.4), (0.4, 1.0), (0.0, 1.0)], []),
    "U": lambda rng: (
        [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.7, 1.0), (0.7, 0.3), (0.3, 0.3), (0.3, 1.0), (0.0, 1.0)],
        [],
    ),
    "square-hole": lambda rng: (SQUARE, [[(0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)]]),
    "two-holes": lambda rng: (
        SQUARE,
        [[(0.1, 0.3), (0.4, 0.3), (0.4, 0.7), (0.1, 0.7)], [(0.6, 0.2), (0.9, 0.5), (0.6, 0.8)]],
    ),
}


def shape(name, rng=None):
    """(outer, holes) for a named shape: convex-m, star-m, comb-t, L, U, square-hole, two-holes."""
    rng = rng or random.Random(0)
    if name in SHAPES:
        return SHAPES[name](rng)
    base, _, arg = name.rpartition("-")
    if base in ("convex", "star", "comb") and arg.isdigit():
        m = int(arg)
        if base == "convex" and m >= 3:
            return convex(m), []
        if base == "star" and m >= 3:
            return star(m, rng), []
        if base == "comb" and m >= 1:
            return comb(m), []
    raise InvalidInput(f"unknown shape {name!r}")


def generate(mode, n, shape_name=None, seed=0, weight_range=(0.0, 1.0), dimension=2):
    if mode not in ("rd", "polygon", "domain"):
        raise InvalidInput(f"unknown mode {mode!r}")
    if n < 0:
        raise InvalidInput("n must be non-negative")
    lo, hi = weight_range
    if not 0 <= lo <= hi:
        raise InvalidInput(f"bad weight range {weight_range}")
    rng = random.Random(seed)
    if mode == "rd":
        coords = [tuple(rng.random() for _ in range(dimension)) for _ in range(n)]
        pts = [WeightedPoint(c, rng.uniform(lo, hi), i) for i, c in enumerate(coords)]
        return Instance("rd", dimension, pts)
    outer, holes = shape(shape_name or ("star-20" if mode == "polygon" else "square-hole"), rng)
    if mode == "polygon" and holes:
        raise InvalidInput(f"shape {shape_name!r} has holes; use mode 'domain'")
    dom = PolygonalDomain(SimplePolygon(outer), tuple(SimplePolygon(h) for h in holes))
    eng = engine_for(dom)
    xs = [x for x, _ in outer]
    ys = [y for _, y in outer]
    coords = []
    draws = 0
    while len(coords) < n:
        if draws >= MAX_DRAWS:
            raise InvalidInput(f"rejection sampling found only {len(coords)} of {n} points")
        draws += 1
        p = (rng.uniform(min(xs), max(xs)), rng.uniform(min(ys), max(ys)))
        if eng.contains(p) and eng.edges.boundary_distance(p) > 1e-9:
            coords.append(p)
    pts = [WeightedPoint(c, rng.uniform(lo, hi), i) for i, c in enumerate(coords)]
    return Instance(mode, 2, pts, [tuple(v) for v in outer], [[tuple(v) for v in h] for h in holes])
