"""Command line: gen, build, verify, stats, render.

Exit codes: 0 success, 1 failed verification, 2 bad input.
"""

import argparse
import json
import sys

from .cluster import build_vftswp_rd
from .formats import FormatError, SpannerFile, read_instance, read_spanner
from .generate import generate
from .geometry import GeometryError
from .metric import InvalidInput
from .polygon import build_vftswp_domain, build_vftswp_simple_polygon
from .svg import render_svg
from .verify import fault_stretch_check, size_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def stretch_bound(mode, eps, refine):
    """Stretch each construction is certified against."""
    if mode == "rd":
        return (2.0 + eps) ** 2
    return 4.0 + 14.0 * eps if refine else 12.0 + 15.0 * eps


def build_graph(instance, k, eps, refine=False):
    if instance.mode == "rd":
        return build_vftswp_rd(instance.points, k, eps)
    dom = instance.domain()
    if instance.mode == "polygon":
        return build_vftswp_simple_polygon(dom.outer, instance.points, k, eps, refine)
    return build_vftswp_domain(dom, instance.points, k, eps, refine)


def run_build(instance, k, eps, refine=False, output=None, seed=None):
    G = build_graph(instance, k, eps, refine)
    params = {"k": k, "eps": eps, "mode": instance.mode, "refine": bool(refine), "t_b": 2.0 + eps, "seed": seed}
    sf = SpannerFile.from_graph(G, params, instance.sha256())
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(sf.to_text())
    return sf


def _metric(instance):
    return "euclidean" if instance.mode == "rd" else instance.domain()


def run_verify(instance, spanner, k=None, t_bound=None, mode="exhaustive", seed=0, trials=None, output=None):
    if spanner.instance_sha256 != instance.sha256():
        raise InvalidInput("spanner file was built from a different instance (hash mismatch)")
    if spanner.n != len(instance.points):
        raise InvalidInput(f"spanner has {spanner.n} vertices, instance has {len(instance.points)} points")
    p = spanner.params
    k = p["k"] if k is None else k
    if t_bound is None:
        t_bound = stretch_bound(p["mode"], p["eps"], p["refine"])
    report = fault_stretch_check(
        spanner.graph(), instance.points, _metric(instance), k, t_bound, mode=mode, trials=trials, seed=seed
    )
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(report.to_dict(), indent=2) + "\n")
    return report


def _write(text, path):
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _h(instance):
    return len(instance.holes) if instance.mode == "domain" else 0


def cmd_gen(args):
    lo, hi = (float(x) for x in args.weights.split(","))
    inst = generate(args.mode, args.n, args.shape, args.seed, (lo, hi), args.dim)
    _write(inst.to_text(), args.output)
    return EXIT_OK


def cmd_build(args):
    inst = read_instance(args.instance)
    sf = run_build(inst, args.k, args.eps, args.refine, args.output, args.seed)
    stats = size_report(sf.graph(), args.k, sf.n, args.eps, _h(inst))
    print(json.dumps(stats, sort_keys=True))
    return EXIT_OK


def cmd_verify(args):
    inst = read_instance(args.instance)
    sf = read_spanner(args.spanner)
    mode = "sampled" if args.trials is not None else "exhaustive"
    report = run_verify(inst, sf, args.k, args.t_bound, mode, args.seed, args.trials, args.output)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} max_stretch={report.max_stretch:.6g} t_bound={report.t_bound:.6g} "
          f"pairs={report.pairs_checked} witness={report.witness}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_stats(args):
    inst = read_instance(args.instance)
    sf = read_spanner(args.spanner)
    k = args.k if args.k is not None else sf.params["k"]
    print(json.dumps(size_report(sf.graph(), k, sf.n, sf.params["eps"], _h(inst)), sort_keys=True))
    return EXIT_OK


def cmd_render(args):
    inst = read_instance(args.instance)
    edges = read_spanner(args.spanner).edges if args.spanner else []
    removed = [int(x) for x in args.remove.split(",")] if args.remove else []
    for v in removed:
        if not 0 <= v < len(inst.points):
            raise InvalidInput(f"removed vertex {v} out of range")
    _write(render_svg(inst, edges, removed), args.output)
    return EXIT_OK


def parser():
    ap = argparse.ArgumentParser(prog="ftspanner", description="Fault-tolerant spanners for weighted points.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a seeded instance")
    g.add_argument("--mode", choices=["rd", "polygon", "domain"], default="rd")
    g.add_argument("--n", type=int, default=20)
    g.add_argument("--shape", help="convex-m, star-m, comb-t, L, U, square-hole, two-holes")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--weights", default="0,1", help="weight range lo,hi")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", help="build a spanner for an instance")
    b.add_argument("instance")
    b.add_argument("--k", type=int, default=1)
    b.add_argument("--eps", type=float, default=0.5)
    b.add_argument("--refine", action="store_true")
    b.add_argument("--seed", type=int, help="recorded in the output")
    b.add_argument("-o", "--output", required=True)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="certify fault-tolerant stretch")
    v.add_argument("instance")
    v.add_argument("spanner")
    v.add_argument("--k", type=int)
    v.add_argument("--t-bound", type=float)
    which = v.add_mutually_exclusive_group()
    which.add_argument("--exhaustive", action="store_true", help="all removal sets (default)")
    which.add_argument("--trials", type=int, help="sample this many removal sets instead")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("-o", "--output", help="write the report here")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="size statistics")
    s.add_argument("instance")
    s.add_argument("spanner")
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_stats)

    r = sub.add_parser("render", help="draw as SVG")
    r.add_argument("instance")
    r.add_argument("spanner", nargs="?")
    r.add_argument("--remove", help="comma separated vertices to cross out")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)
    return ap


def main(argv=None):
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidInput, GeometryError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
