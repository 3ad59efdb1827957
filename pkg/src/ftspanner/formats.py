"""Instance and spanner files: canonical JSON text with version tags.

Reals are written with Python's shortest round-trip repr, so
parse -> serialize -> parse is the identity.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field

from .geodesic import PolygonalDomain, SimplePolygon
from .geometry import GeometryError
from .metric import InvalidInput, SpannerGraph, WeightedPoint

INSTANCE_VERSION = "ftspanner-instance/1"
SPANNER_VERSION = "ftspanner-spanner/1"
MODES = ("rd", "polygon", "domain")


class FormatError(InvalidInput):
    def __init__(self, kind, invariant, offset=None):
        self.kind = kind
        self.invariant = invariant
        self.offset = offset
        where = f" at byte {offset}" if offset is not None else ""
        super().__init__(f"{kind}: {invariant}{where}")


@dataclass
class Instance:
    mode: str
    dimension: int
    points: list  # WeightedPoint
    outer: list = None
    holes: list = field(default_factory=list)

    def domain(self):
        if self.mode == "rd":
            return None
        return PolygonalDomain(SimplePolygon(self.outer), tuple(SimplePolygon(h) for h in self.holes))

    def to_text(self):
        lines = ["{", f'  "version": {json.dumps(INSTANCE_VERSION)},']
        lines.append(f'  "mode": {json.dumps(self.mode)},')
        lines.append(f'  "dimension": {self.dimension},')
        rows = [json.dumps([float(c) for c in p.coords] + [float(p.weight)]) for p in self.points]
        tail = "," if self.mode != "rd" else ""
        lines.append('  "points": ' + _block(rows, "  ") + tail)
        if self.mode != "rd":
            outer = json.dumps([[float(x), float(y)] for x, y in self.outer])
            holes = [json.dumps([[float(x), float(y)] for x, y in h]) for h in self.holes]
            lines.append('  "polygon": {')
            lines.append(f'    "outer": {outer},')
            lines.append('    "holes": ' + _block(holes, "    "))
            lines.append("  }")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def sha256(self):
        return hashlib.sha256(self.to_text().encode()).hexdigest()


def _block(rows, indent):
    if not rows:
        return "[]"
    inner = (",\n").join(indent + "  " + r for r in rows)
    return "[\n" + inner + "\n" + indent + "]"


@dataclass
class SpannerFile:
    params: dict  # k, eps, mode, refine, t_b, seed
    n: int
    edges: list  # [u, v, base_length], u < v, sorted
    instance_sha256: str

    @classmethod
    def from_graph(cls, G, params, instance_sha256):
        edges = [[u, v, float(length)] for u, v, length in G.sorted_edges()]
        return cls(dict(params), G.n, edges, instance_sha256)

    def graph(self):
        return SpannerGraph(self.n, [(u, v, length) for u, v, length in self.edges])

    def to_text(self):
        p = self.params
        params = {
            "k": int(p["k"]),
            "eps": float(p["eps"]),
            "mode": p["mode"],
            "refine": bool(p["refine"]),
            "t_b": float(p["t_b"]),
            "seed": p.get("seed"),
        }
        rows = [json.dumps([int(u), int(v), float(length)]) for u, v, length in self.edges]
        lines = ["{", f'  "version": {json.dumps(SPANNER_VERSION)},']
        lines.append(f'  "params": {json.dumps(params)},')
        lines.append(f'  "n": {int(self.n)},')
        lines.append('  "edges": ' + _block(rows, "  ") + ",")
        lines.append(f'  "provenance": {json.dumps({"instance_sha256": self.instance_sha256})}')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- locating offending values --------------------------------------------------


def _skip(text, i):
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def locate(text, path):
    """Byte offset of the JSON value at path (keys and indices), or None."""
    dec = json.JSONDecoder()
    i = _skip(text, 0)
    try:
        for step in path:
            if text[i] == "{":
                i = _skip(text, i + 1)
                while text[i] != "}":
                    key, i = dec.raw_decode(text, i)
                    i = _skip(text, _skip(text, i) + 1)
                    if key == step:
                        break
                    _, i = dec.raw_decode(text, i)
                    i = _skip(text, i)
                    if text[i] == ",":
                        i = _skip(text, i + 1)
                else:
                    return None
            elif text[i] == "[":
                i = _skip(text, i + 1)
                for _ in range(step):
                    _, i = dec.raw_decode(text, i)
                    i = _skip(text, _skip(text, i) + 1)
            else:
                return None
    except (ValueError, IndexError, TypeError):
        return None
    return len(text[:i].encode())


def _load(text, kind):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(kind, f"malformed JSON ({e.msg})", len(text[: e.pos].encode())) from None


def _number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _pair_list(value):
    return isinstance(value, list) and all(
        isinstance(v, list) and len(v) == 2 and all(_number(c) for c in v) for v in value
    )


def parse_instance(text):
    kind = "instance"
    doc = _load(text, kind)

    def fail(invariant, path=()):
        raise FormatError(kind, invariant, locate(text, list(path)))

    if not isinstance(doc, dict):
        fail("top level must be an object")
    if doc.get("version") != INSTANCE_VERSION:
        fail(f"version tag must be {INSTANCE_VERSION!r}", ["version"] if "version" in doc else [])
    expected = ["version", "mode", "dimension", "points"]
    if doc.get("mode") in ("polygon", "domain"):
        expected.append("polygon")
    for key in doc:
        if key not in expected:
            fail(f"unexpected field {key!r}", [key])
    for key in expected:
        if key not in doc:
            fail(f"missing field {key!r}")
    mode = doc["mode"]
    if mode not in MODES:
        fail(f"mode must be one of {', '.join(MODES)}", ["mode"])
    d = doc["dimension"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        fail("dimension must be a positive integer", ["dimension"])
    if mode != "rd" and d != 2:
        fail("polygon and domain instances are planar (dimension 2)", ["dimension"])
    if not isinstance(doc["points"], list):
        fail("points must be a list", ["points"])
    points = []
    for i, row in enumerate(doc["points"]):
        if not isinstance(row, list) or len(row) != d + 1 or not all(_number(c) for c in row):
            fail(f"point {i} must be {d} finite coordinates followed by a weight", ["points", i])
        if row[-1] < 0:
            fail(f"weight of point {i} is negative", ["points", i])
        points.append(WeightedPoint(tuple(float(c) for c in row[:-1]), float(row[-1]), i))
    inst = Instance(mode, d, points)
    if mode == "rd":
        return inst
    poly = doc["polygon"]
    if not isinstance(poly, dict) or set(poly) != {"outer", "holes"}:
        fail("polygon must have exactly the fields 'outer' and 'holes'", ["polygon"])
    if not _pair_list(poly["outer"]) or len(poly["outer"]) < 3:
        fail("outer polygon must list at least 3 vertices", ["polygon", "outer"])
    if not isinstance(poly["holes"], list):
        fail("holes must be a list", ["polygon", "holes"])
    for j, h in enumerate(poly["holes"]):
        if not _pair_list(h) or len(h) < 3:
            fail(f"hole {j} must list at least 3 vertices", ["polygon", "holes", j])
    if mode == "polygon" and poly["holes"]:
        fail("polygon instances have no holes", ["polygon", "holes"])
    inst.outer = [(float(x), float(y)) for x, y in poly["outer"]]
    inst.holes = [[(float(x), float(y)) for x, y in h] for h in poly["holes"]]
    try:
        SimplePolygon(inst.outer)
    except (GeometryError, InvalidInput) as e:
        fail(f"outer polygon is not simple ({e})", ["polygon", "outer"])
    for j, h in enumerate(inst.holes):
        try:
            SimplePolygon(h)
        except (GeometryError, InvalidInput) as e:
            fail(f"hole {j} is not simple ({e})", ["polygon", "holes", j])
    try:
        dom = inst.domain()
    except (GeometryError, InvalidInput) as e:
        fail(f"holes must be disjoint and inside the outer polygon ({e})", ["polygon", "holes"])
    for p in points:
        if not dom.contains(p.coords):
            fail(f"point {p.id} is outside the free space", ["points", p.id])
    return inst


def parse_spanner(text):
    kind = "spanner"
    doc = _load(text, kind)

    def fail(invariant, path=()):
        raise FormatError(kind, invariant, locate(text, list(path)))

    if not isinstance(doc, dict):
        fail("top level must be an object")
    if doc.get("version") != SPANNER_VERSION:
        fail(f"version tag must be {SPANNER_VERSION!r}", ["version"] if "version" in doc else [])
    expected = ["version", "params", "n", "edges", "provenance"]
    for key in doc:
        if key not in expected:
            fail(f"unexpected field {key!r}", [key])
    for key in expected:
        if key not in doc:
            fail(f"missing field {key!r}")
    params = doc["params"]
    need = {"k", "eps", "mode", "refine", "t_b", "seed"}
    if not isinstance(params, dict) or set(params) != need:
        fail(f"params must have exactly the fields {sorted(need)}", ["params"])
    if not isinstance(params["k"], int) or params["k"] < 0:
        fail("params.k must be a non-negative integer", ["params", "k"])
    if not _number(params["eps"]) or params["eps"] <= 0:
        fail("params.eps must be positive", ["params", "eps"])
    if params["mode"] not in MODES:
        fail(f"params.mode must be one of {', '.join(MODES)}", ["params", "mode"])
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        fail("n must be a non-negative integer", ["n"])
    edges = []
    prev = None
    for i, e in enumerate(doc["edges"]):
        ok = isinstance(e, list) and len(e) == 3 and all(isinstance(x, int) for x in e[:2]) and _number(e[2])
        if not ok:
            fail(f"edge {i} must be [u, v, base_length]", ["edges", i])
        u, v, length = e
        if not 0 <= u < v < n:
            fail(f"edge {i} must satisfy 0 <= u < v < n", ["edges", i])
        if length < 0:
            fail(f"edge {i} has a negative length", ["edges", i])
        if prev is not None and (u, v) <= prev:
            fail(f"edge {i} is out of lexicographic order or repeated", ["edges", i])
        prev = (u, v)
        edges.append([u, v, float(length)])
    prov = doc["provenance"]
    if not isinstance(prov, dict) or not isinstance(prov.get("instance_sha256"), str):
        fail("provenance must carry instance_sha256", ["provenance"])
    params = dict(params, eps=float(params["eps"]), t_b=float(params["t_b"]))
    return SpannerFile(params, n, edges, prov["instance_sha256"])


def read_instance(path):
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def read_spanner(path):
    with open(path, encoding="utf-8") as fh:
        return parse_spanner(fh.read())
