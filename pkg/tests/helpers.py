"""Shared instance builders for the tests."""

import random

from ftspanner.generate import generate, shape
from ftspanner.geodesic import PolygonalDomain, SimplePolygon, engine_for

POLYGON_SHAPES = ["convex-8", "L", "U", "comb-4", "star-20"]
DOMAIN_SHAPES = ["square-hole", "two-holes"]


def region(name, seed=0):
    outer, holes = shape(name, random.Random(seed))
    return PolygonalDomain(SimplePolygon(outer), tuple(SimplePolygon(h) for h in holes))


def free_points(dom, n, seed=0):
    eng = engine_for(dom)
    rng = random.Random(seed)
    xs = [x for x, _ in dom.outer.vertices]
    ys = [y for _, y in dom.outer.vertices]
    out = []
    while len(out) < n:
        p = (rng.uniform(min(xs), max(xs)), rng.uniform(min(ys), max(ys)))
        if eng.contains(p):
            out.append(p)
    return out


def instance(mode, n, shape_name=None, seed=0):
    inst = generate(mode, n, shape_name, seed)
    return inst, inst.domain()
