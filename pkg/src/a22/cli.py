"""Command-line entry point: ``a22 <group> <command> [options]``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import baker, certify, igraph, runge, search, variety
from . import characteristics as ch
from . import symplectic as sp
from .errors import ConfigurationError, PreconditionError

_REGIMES = {"arch": "archimedean", "nonarch": "non_archimedean"}
_VARIANTS = {"thm22": "theorem22", "p77": "p77"}


def _emit(obj, fmt: str = "json") -> None:
    if fmt == "json":
        json.dump(obj, sys.stdout, indent=2, sort_keys=False)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(obj if obj.endswith("\n") else obj + "\n")


def cmd_chars_enumerate(args) -> int:
    items = ch.enumerate_kind(args.kind)
    if args.kind == "even_chars":
        rows = [{"index": ch.index(m), "char": ch.fmt(m)} for m in items]
    else:
        rows = [{"indices": list(ch.indices(t)), "chars": [ch.fmt(m) for m in t]} for t in items]
    if args.format == "json":
        _emit({"kind": args.kind, "count": len(rows), "items": rows})
    else:
        lines = [f"# {args.kind}: {len(rows)}"]
        for r in rows:
            lines.append(f"{r['index']:>2} {r['char']}" if "index" in r
                         else " ".join(r["chars"]) + "  " + str(tuple(r["indices"])))
        _emit("\n".join(lines), "text")
    return 0


def cmd_group_verify(args) -> int:
    _emit(sp.group_report())
    return 0


def cmd_variety_points(args) -> int:
    pts = variety.enumerate_small_points(args.domain)
    _emit({"domain": args.domain, "count": len(pts), "points": [p.to_json() for p in pts]})
    return 0


def cmd_graph_build(args) -> int:
    g = igraph.build_graph(args.domain)
    igraph.write_graph(g, args.out, args.dot)
    _emit({"domain": args.domain, "depth_profile": {str(k): v for k, v in g.depth_profile().items()},
           "vertices": len(g.vertices), "edges": len(g.edges), "out": args.out, "dot": args.dot})
    return 0


def cmd_runge_bound(args) -> int:
    if args.s_contains_2 and args.s_contains_3:
        raise PreconditionError("|S| <= 2 leaves room for one finite place only")
    # no flags: the generic profile, where a place over 3 may lie in S
    over_3 = not (args.s_contains_2 or args.s_excludes_3)
    rep = runge.runge_bound(args.s_contains_2, over_3)
    if args.format == "json":
        _emit(rep.to_json())
    else:
        lines = [f"{src:<28} {v:.6f}" for src, v in rep.contributions]
        lines.append(f"{'total':<28} {rep.height_bound:.6f}")
        lines.append(f"{'faltings':<28} {rep.faltings_bound} ({rep.faltings_source})")
        _emit("\n".join(lines), "text")
    return 0


def cmd_runge_sample(args) -> int:
    _emit(certify.runge_sample(args.count, args.seed))
    return 0


def cmd_baker_constants(args) -> int:
    c = baker.constants(args.d, args.s, _REGIMES[args.regime], _VARIANTS[args.variant])
    _emit(asdict(c))
    return 0


def cmd_baker_bound(args) -> int:
    inputs = baker.BoundInputs(args.d, args.s, args.hk, args.rs, args.ps)
    out = baker.final_bound(inputs)
    if args.audit:
        out["interval_audit"] = baker.headline_check(args.d, args.s)
    _emit(out)
    return 0


def cmd_search_run(args) -> int:
    kw = {}
    if args.free:
        kw["free_variables"] = tuple(int(c) for c in args.free.split(","))
    cfg = search.SearchConfig(args.height, args.alphabet, args.allow_zeros, **kw)
    res = search.run_search(cfg)
    cert = res.certificate.to_json()
    with open(args.out, "w") as fh:
        json.dump({"config": asdict(cfg), "points": [p.to_json() for p in res.points]}, fh, indent=2)
    if args.cert:
        with open(args.cert, "w") as fh:
            json.dump(cert, fh, indent=2)
    _emit({"points": len(res.points), "certificate": cert})
    return 0


def cmd_theta_verify(args) -> int:
    out = certify.verify(args.suite, args.samples, args.seed, args.tol)
    if args.format == "json":
        _emit(out)
    else:
        lines = [f"{name:<12} {'PASS' if r['passes'] else 'FAIL'}" for name, r in out["suites"].items()]
        _emit("\n".join(lines), "text")
    return 0 if out["passes"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="a22", description=__doc__)
    top = p.add_subparsers(dest="group", required=True)

    g = top.add_parser("chars").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("enumerate")
    s.add_argument("--kind", choices=ch.KINDS, default="even_chars")
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.set_defaults(func=cmd_chars_enumerate)

    g = top.add_parser("group").add_subparsers(dest="cmd", required=True)
    g.add_parser("verify").set_defaults(func=cmd_group_verify)

    domains = ("q", "f2", "f3", "f5", "f7")
    g = top.add_parser("variety").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("points")
    s.add_argument("--domain", choices=domains, default="q")
    s.add_argument("--format", choices=("json",), default="json")
    s.set_defaults(func=cmd_variety_points)

    g = top.add_parser("graph").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("build")
    s.add_argument("--domain", choices=domains, default="q")
    s.add_argument("--out", required=True)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_graph_build)

    g = top.add_parser("runge").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("bound")
    s.add_argument("--s-contains-2", action="store_true")
    s.add_argument("--s-contains-3", action="store_true", help="the default profile, stated explicitly")
    s.add_argument("--s-excludes-3", action="store_true")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_runge_bound)
    s = g.add_parser("sample")
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_runge_sample)

    g = top.add_parser("baker").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("constants")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--regime", choices=tuple(_REGIMES), default="arch")
    s.add_argument("--variant", choices=tuple(_VARIANTS), default="thm22")
    s.set_defaults(func=cmd_baker_constants)
    s = g.add_parser("bound")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--hk", type=int, default=1)
    s.add_argument("--rs", type=float, default=1.0)
    s.add_argument("--ps", type=int, default=1)
    s.add_argument("--audit", action="store_true")
    s.set_defaults(func=cmd_baker_bound)

    g = top.add_parser("search").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("run")
    s.add_argument("--height", type=float, default=4.0)
    s.add_argument("--allow-zeros", action="store_true")
    s.add_argument("--alphabet", choices=("pm2", "pm1"), default="pm2")
    s.add_argument("--free", help="comma-separated free coordinate indices")
    s.add_argument("--out", required=True)
    s.add_argument("--cert")
    s.set_defaults(func=cmd_search_run)

    g = top.add_parser("theta").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("verify")
    s.add_argument("--suite", choices=("all",) + certify.SUITES, default="all")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_theta_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
