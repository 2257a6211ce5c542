"""Command-line entry point.

Exit codes: 0 decided/verified as requested, 1 negative verification,
2 usage or input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import circle as circ
from .catalog import Budget, catalog, decide_graph, screen_catalog, screen_structural
from .enumeration import count_consistent_systems, enumerate_consistent_systems
from .errors import NotBiconnected, PathmetError
from .graph import Graph, parse_graph
from .metrize import (
    decide_metrizable,
    format_certificate,
    format_weights,
    parse_certificate,
    parse_weights,
    verify_certificate,
    verify_weights,
)
from .systems import (
    classify_cycle_system,
    format_path_system,
    is_consistent,
    parse_path_system,
)

OK, NEGATIVE, USAGE, EXHAUSTED = 0, 1, 2, 3


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _load_system(graph_path: str, system_path: str):
    g = _load_graph(graph_path)
    return g, parse_path_system(_read(system_path), g)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_out(args, doc: dict) -> None:
    _emit(args, json.dumps(doc, indent=1, default=str) + "\n")


def cmd_check_system(args) -> int:
    g, ps = _load_system(args.graph, args.system)
    ok, witness = is_consistent(ps)
    if args.format == "json":
        _json_out(args, {"consistent": ok,
                         "witness": None if ok else
                         {"path": list(witness[0]), "x": witness[1], "y": witness[2]}})
    elif ok:
        print("consistent")
    else:
        path, x, y = witness
        print(f"inconsistent: subpath of {list(path)} between {x} and {y} "
              "is not the chosen path")
    return OK if ok else NEGATIVE


def cmd_metrize(args) -> int:
    g, ps = _load_system(args.graph, args.system)
    verdict = decide_metrizable(ps, strict=args.strict)
    if verdict.metrizable:
        body = format_weights(g, verdict.weights)
        if args.format == "json":
            _json_out(args, {"metrizable": True, "strict": args.strict,
                             "weights": {f"{u} {v}": str(verdict.weights.of(u, v))
                                         for u, v in g.edges}})
        else:
            print(f"metrizable (strict={int(args.strict)}); inducing weights:")
            sys.stdout.write(body)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(body)
    else:
        cert = verdict.certificate
        body = format_certificate(cert)
        if args.format == "json":
            _json_out(args, {"metrizable": False, "strict": args.strict,
                             "forced_edges": [list(e) for e in cert.forced_edges(g)],
                             "lines": [{"multiplier": str(l.multiplier),
                                        "chosen": list(l.chosen),
                                        "competitor": list(l.competitor)}
                                       for l in cert.lines]})
        else:
            print(f"not metrizable (strict={int(args.strict)}); certificate:")
            sys.stdout.write(body)
            forced = cert.forced_edges(g)
            if forced:
                print("forced non-positive on edges:",
                      " ".join(f"({u},{v})" for u, v in forced))
            else:
                print("combination cancels to the contradiction 0 < 0")
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(body)
    return OK


def cmd_verify_cert(args) -> int:
    g, ps = _load_system(args.graph, args.system)
    cert = parse_certificate(_read(args.cert))
    ok = verify_certificate(ps, cert)
    if args.format == "json":
        _json_out(args, {"valid": ok})
    else:
        print("valid certificate" if ok else "INVALID certificate")
    return OK if ok else NEGATIVE


def cmd_verify_weights(args) -> int:
    g, ps = _load_system(args.graph, args.system)
    w = parse_weights(_read(args.weights), g)
    ok = verify_weights(ps, w, strict=args.strict)
    if args.format == "json":
        _json_out(args, {"induces": ok, "strict": args.strict})
    else:
        print(("strictly induces" if args.strict else "induces")
              if ok else "does NOT induce")
    return OK if ok else NEGATIVE


def cmd_enumerate(args) -> int:
    g = _load_graph(args.graph)
    if args.count_only:
        n = count_consistent_systems(g, max_vertices=args.max_vertices,
                                     jobs=args.jobs)
        if args.format == "json":
            _json_out(args, {"count": n})
        else:
            print(n)
        return OK
    chunks = []
    for ps in enumerate_consistent_systems(g, limit=args.limit,
                                           max_vertices=args.max_vertices,
                                           jobs=args.jobs):
        chunks.append(format_path_system(ps))
    _emit(args, "\n".join(chunks))
    return OK


def cmd_decide_graph(args) -> int:
    g = _load_graph(args.graph)
    budget = Budget(max_systems=args.budget_systems)
    verdict = decide_graph(g, strict=args.strict, budget=budget, jobs=args.jobs)
    doc = {"verdict": verdict.kind, "reason": verdict.reason,
           "systems_checked": verdict.systems_checked}
    if verdict.rule:
        doc["rule"] = verdict.rule
    if verdict.catalog_id:
        doc["catalog_id"] = verdict.catalog_id
    if args.format == "json":
        if args.explain and verdict.witness_certificate is not None:
            doc["witness_certificate"] = format_certificate(verdict.witness_certificate)
        _json_out(args, doc)
    else:
        print(f"{verdict.kind} ({verdict.reason})")
        if verdict.rule:
            print(f"structural rule: ({verdict.rule})")
        if verdict.catalog_id:
            print(f"catalog entry: {verdict.catalog_id}")
        if args.explain:
            if verdict.subdivision is not None:
                print("branch map:", dict(sorted(verdict.subdivision.branch_map.items())))
                for e, p in sorted(verdict.subdivision.path_map.items()):
                    print(f"  edge {e} -> path {list(p)}")
            if verdict.witness_system is not None:
                sys.stdout.write(format_path_system(verdict.witness_system))
            if verdict.witness_certificate is not None:
                sys.stdout.write(format_certificate(verdict.witness_certificate))
    return EXHAUSTED if verdict.kind == "unknown" else OK


def cmd_screen(args) -> int:
    g = _load_graph(args.graph)
    try:
        rule = screen_structural(g)
    except NotBiconnected:
        rule = None
        if args.format != "json":
            print("structural screen skipped (not 2-connected)")
    hit = screen_catalog(g)
    if args.format == "json":
        _json_out(args, {"structural_rule": rule,
                         "catalog_entry": hit[0] if hit else None})
    else:
        print(f"structural rule: {rule if rule else 'none'}")
        print(f"catalog hit: entry {hit[0]}" if hit else "catalog hit: none")
    return OK


def cmd_cycle_classify(args) -> int:
    g, ps = _load_system(args.graph, args.system)
    cls = classify_cycle_system(ps)
    if args.format == "json":
        _json_out(args, {"kind": cls.kind, "m": cls.m,
                         "vertex_map": list(cls.vertex_map) if cls.vertex_map else None})
    elif cls.kind == "trivial":
        print("trivial (single spanning tree)")
    else:
        print(f"reduced to the shorter-arc system of an odd {cls.m}-cycle")
    return OK


def cmd_suspended_lift(args) -> int:
    from .metrize import (_suspended_between, _suspended_context,
                          build_derived_system, lift_suspended_path)

    g, ps = _load_system(args.graph, args.system)
    u, v = (int(t) for t in args.edge.replace(",", " ").split())
    g2 = Graph.from_edges(g.n, [e for e in g.edges if e != tuple(sorted((u, v)))])
    cands = _suspended_between(g2, u, v)
    if not cands:
        print(f"no suspended path between {u} and {v} after removing the edge",
              file=sys.stderr)
        return USAGE
    q = cands[0]
    ctx = _suspended_context(ps, q)
    vh = decide_metrizable(ctx.ps_h, strict=False)
    vc = decide_metrizable(ctx.ps_c, strict=False)
    if not (vh.metrizable and vc.metrizable):
        print("a sub-instance is not metrizable; lift not applicable")
        return NEGATIVE
    w_prime = None
    if ctx.runs:
        _, psp, _ = build_derived_system(ps, q)
        vp = decide_metrizable(psp, strict=False)
        if not vp.metrizable:
            print("derived system is not metrizable; lift not applicable")
            return NEGATIVE
        w_prime = vp.weights
    w = lift_suspended_path(g, ps, q, vh.weights, vc.weights, w_prime)
    body = format_weights(g, w)
    if args.format == "json":
        _json_out(args, {"suspended_path": list(q),
                         "weights": {f"{a} {b}": str(w.of(a, b)) for a, b in g.edges}})
    else:
        print(f"suspended path: {list(q)}")
        sys.stdout.write(body)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    return OK


def cmd_circle_check(args) -> int:
    t = circ.SampledCircleMap(circ.parse_circle(_read(args.map)))
    ok_cross, witness = circ.is_crossing(t)
    ok_invol = circ.check_involution(t, tol=args.tol)
    results = {"crossing": ok_cross, "involution": ok_invol,
               "witness": list(witness) if witness else None}
    ok = ok_cross and ok_invol
    if args.density:
        mu = circ.SampledDensity(circ.parse_circle(_read(args.density)))
        results["compatible"] = circ.verify_compatibility(t, mu, args.tol)
        results["invariant"] = circ.verify_invariance(t, mu, args.tol)
        ok = ok and results["compatible"] and results["invariant"]
    if args.format == "json":
        _json_out(args, results)
    else:
        for k, val in results.items():
            if k != "witness":
                print(f"{k}: {val}")
    return OK if ok else NEGATIVE


def cmd_fixtures(args) -> int:
    if args.action != "run-all":
        print("unknown fixtures action", file=sys.stderr)
        return USAGE
    from .fixtures_runner import run_all

    results = run_all(seed=args.seed)
    width = max(len(name) for name, _ in results)
    failures = 0
    for name, ok in results:
        print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}")
        failures += 0 if ok else 1
    print(f"{len(results) - failures}/{len(results)} fixture checks passed")
    return OK if failures == 0 else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pathmet",
        description="Consistent path systems: metrizability decisions, "
                    "certificates, enumeration, screening.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        if out:
            p.add_argument("--out", help="write the machine-format result here")

    p = sub.add_parser("check-system", help="consistency check")
    p.add_argument("--graph", required=True)
    p.add_argument("--system", required=True)
    common(p, out=False)
    p.set_defaults(func=cmd_check_system)

    p = sub.add_parser("metrize", help="decide path-system metrizability")
    p.add_argument("--graph", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--strict", action="store_true")
    common(p)
    p.set_defaults(func=cmd_metrize)

    p = sub.add_parser("verify-cert", help="check a certificate file")
    p.add_argument("--graph", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--cert", required=True)
    common(p, out=False)
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("verify-weights", help="check an inducing weight file")
    p.add_argument("--graph", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--strict", action="store_true")
    common(p, out=False)
    p.set_defaults(func=cmd_verify_weights)

    p = sub.add_parser("enumerate", help="all consistent systems of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--limit", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-vertices", type=int, default=9)
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("decide-graph", help="graph-level metrizability")
    p.add_argument("--graph", required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--budget-systems", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--explain", action="store_true")
    common(p, out=False)
    p.set_defaults(func=cmd_decide_graph)

    p = sub.add_parser("screen", help="structural and catalog screens")
    p.add_argument("--graph", required=True)
    common(p, out=False)
    p.set_defaults(func=cmd_screen)

    p = sub.add_parser("cycle-classify", help="classify a system on a cycle")
    p.add_argument("--graph", required=True)
    p.add_argument("--system", required=True)
    common(p, out=False)
    p.set_defaults(func=cmd_cycle_classify)

    p = sub.add_parser("suspended-lift",
                       help="weights via the suspended-path construction")
    p.add_argument("--graph", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--edge", required=True, metavar="U,V")
    common(p)
    p.set_defaults(func=cmd_suspended_lift)

    p = sub.add_parser("circle-check", help="crossing map and measure checks")
    p.add_argument("--map", required=True)
    p.add_argument("--density")
    p.add_argument("--tol", type=float, default=1e-6)
    common(p, out=False)
    p.set_defaults(func=cmd_circle_check)

    p = sub.add_parser("fixtures", help="reproduce the bundled examples")
    p.add_argument("action", choices=("run-all",))
    p.add_argument("--seed", type=int, default=0)
    common(p, out=False)
    p.set_defaults(func=cmd_fixtures)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PathmetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
