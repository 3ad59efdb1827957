"""Acceptance criteria, one test each.

Each test prints a single PASS/FAIL line.  Running this file directly prints
the same lines without pytest.
"""

import functools
import statistics
import sys
import time

from ftspanner.cluster import build_vftswp_rd, cluster
from ftspanner.generate import generate
from ftspanner.geodesic import engine_for
from ftspanner.oracle import visibility_oracle_distance
from ftspanner.polygon import build_vftswp_domain, build_vftswp_simple_polygon, decompose_domain
from ftspanner.verify import fault_stretch_check, invariant_suite, size_report, split_balance

from helpers import DOMAIN_SHAPES, POLYGON_SHAPES, free_points, region

EPS = 0.5


def report_line(n, ok, detail):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} | {detail}"


@functools.lru_cache(maxsize=None)
def rd_runs():
    runs = []
    for i in range(20):
        k = 1 + i % 2
        eps = 0.25 if i < 10 else 0.5
        inst = generate("rd", 20, seed=i)
        t0 = time.perf_counter()
        G = build_vftswp_rd(inst.points, k, eps)
        rep = fault_stretch_check(G, inst.points, "euclidean", k, (2 + eps) ** 2)
        runs.append({"inst": inst, "k": k, "eps": eps, "report": rep, "seconds": time.perf_counter() - t0})
    return runs


def polygon_instances(refine):
    out = [generate("polygon", 20, "star-20", seed) for seed in range(10)]
    if refine:
        out.append(generate("domain", 20, "square-hole", 0))
    return out


@functools.lru_cache(maxsize=None)
def polygon_runs(refine):
    bound = 4 + 14 * EPS if refine else 12 + 15 * EPS
    runs = []
    for inst in polygon_instances(refine):
        dom = inst.domain()
        trace = []
        t0 = time.perf_counter()
        if inst.mode == "polygon":
            G = build_vftswp_simple_polygon(dom.outer, inst.points, 1, EPS, refine, trace=trace)
        else:
            G = build_vftswp_domain(dom, inst.points, 1, EPS, refine, trace=trace)
        rep = fault_stretch_check(G, inst.points, dom, 1, bound)
        runs.append({"inst": inst, "trace": trace, "report": rep, "seconds": time.perf_counter() - t0})
    return runs


def check_rd_stretch():
    runs = rd_runs()
    ok = all(r["report"].passed and r["seconds"] < 120 for r in runs)
    worst = max(r["report"].max_stretch / r["report"].t_bound for r in runs)
    slow = max(r["seconds"] for r in runs)
    return ok, f"20 R^d instances, exhaustive, worst stretch/bound {worst:.3f}, slowest {slow:.1f}s"


def check_rd_size():
    means = {}
    for n in (100, 200, 400):
        ratios = []
        for seed in range(5):
            pts = generate("rd", n, seed=1000 + seed).points
            ratios.append(size_report(build_vftswp_rd(pts, 2, EPS), 2, n, EPS)["edges_per_kn"])
        means[n] = statistics.mean(ratios)
    spread = max(means.values()) / min(means.values())
    detail = ", ".join(f"n={n}: {v:.2f}" for n, v in means.items())
    return spread <= 2.0, f"|E|/(kn) {detail}; spread {spread:.2f} (limit 2)"


def check_polygon(refine):
    runs = polygon_runs(refine)
    bound = runs[0]["report"].t_bound
    ok = all(r["report"].passed for r in runs)
    if refine:
        ok = ok and all(r["seconds"] < 300 for r in runs)
    worst = max(r["report"].max_stretch for r in runs)
    slow = max(r["seconds"] for r in runs)
    return ok, f"{len(runs)} instances, worst stretch {worst:.3f} vs bound {bound}, slowest {slow:.1f}s"


def check_oracle():
    worst = 0.0
    for name in POLYGON_SHAPES + DOMAIN_SHAPES:
        dom = region(name, seed=21)
        eng = engine_for(dom)
        pts = free_points(dom, 200, seed=22)
        for a, b in zip(pts[::2], pts[1::2]):
            d = eng.distance(a, b)
            o = visibility_oracle_distance(dom, a, b)
            worst = max(worst, abs(d - o) / o if o > 0 else abs(d))
    return worst <= 1e-9, f"7 regions x 100 pairs, worst relative gap {worst:.2e} (limit 1e-9)"


def check_structure():
    violations = []
    checks = 0
    for r in rd_runs():
        violations += invariant_suite(cluster(r["inst"].points, r["k"], r["eps"]))
        checks += 1
    for refine in (False, True):
        for r in polygon_runs(refine):
            violations += split_balance(r["trace"])
            checks += sum(ev["kind"] in ("split", "separator") for ev in r["trace"])
    # separators on generated decompositions
    for name in DOMAIN_SHAPES:
        inst = generate("domain", 30, name, 3)
        trace = []
        build_vftswp_domain(inst.domain(), inst.points, 1, EPS, True, trace=trace)
        violations += split_balance(trace)
        violations += invariant_suite(decompose_domain(inst.domain(), inst.points), domain=inst.domain(), n=30)
        checks += len(trace)
    # projection optimality on the first chord of every unrefined run
    for r in polygon_runs(False):
        dom = r["inst"].domain()
        eng = engine_for(dom)
        proj = next(ev["projection"] for ev in r["trace"] if ev["kind"] == "projection")
        a, b = proj.segment.endpoints
        for src, w in zip(proj.sources, proj.weights):
            p = r["inst"].points[src]
            d = w - p.weight
            for i in range(64):
                t = i / 63
                x = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                checks += 1
                if d > eng.distance(p.coords, x) + 1e-6:
                    violations.append(f"projection of point {src} beaten by a sample")
    return not violations, f"{checks} checks, {len(violations)} violations" + (f": {violations[:3]}" if violations else "")


def check_lower_bound():
    reports = [r["report"] for r in rd_runs()] + [r["report"] for f in (False, True) for r in polygon_runs(f)]
    slack = min(r.min_slack for r in reports)
    pairs = sum(r.pairs_checked for r in reports)
    return slack >= -1e-9, f"{pairs} checked pairs, min d_G - d_w = {slack:.2e}"


CRITERIA = [
    (1, check_rd_stretch),
    (2, check_rd_size),
    (3, lambda: check_polygon(False)),
    (4, lambda: check_polygon(True)),
    (5, check_oracle),
    (6, check_structure),
    (7, check_lower_bound),
]


def run(n, capsys):
    ok, detail = dict(CRITERIA)[n]()
    with capsys.disabled():
        print("\n" + report_line(n, ok, detail))
    assert ok, detail


def test_criterion_1_rd_stretch(capsys):
    run(1, capsys)


def test_criterion_2_rd_size(capsys):
    run(2, capsys)


def test_criterion_3_polygon_unrefined(capsys):
    run(3, capsys)


def test_criterion_4_refined(capsys):
    run(4, capsys)


def test_criterion_5_oracle(capsys):
    run(5, capsys)


def test_criterion_6_structure(capsys):
    run(6, capsys)


def test_criterion_7_lower_bound(capsys):
    run(7, capsys)


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(report_line(n, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
