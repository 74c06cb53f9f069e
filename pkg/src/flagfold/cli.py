"""Command-line front end.

Exit codes for ``reduce`` and ``certify``: 0 reduced to K1 / Yes, 1 refuted /
No, 2 Unknown.  Unreadable input exits with 65, bad usage with 64.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fixtures
from .algebra import homology
from .complex import (
    FaceCapExceeded,
    SimplicialComplex,
    barycentric,
    clique_complex,
    cyl,
    greedy_collapse,
    link,
    one_skeleton,
    parse_token,
)
from .graph import Graph
from .io import (
    ParseError,
    dumps,
    format_complex,
    format_graph,
    parse_complex,
    parse_graph,
    trace_from_json,
    trace_to_json,
    verdict_to_json,
    write_trace,
)
from .itransform import reduce_via_moves, verify_trace
from .reduction import (
    Budget,
    certify_contractible,
    dismantle,
    dismantling_to_trace,
    s_reduce,
    s_reduction_to_trace,
)
from .suites import ALL_SUITES, RunConfig, run_suites

EXIT_YES, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_DATA = 64, 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    with open(source) as fh:
        return fh.read()


def load_graph(source: str) -> Graph:
    """Read a graph file, ``-`` for stdin, or ``@name`` for a built-in fixture."""
    if source.startswith("@"):
        fx = fixtures.get(source[1:])
        return fx.payload if fx.is_graph else one_skeleton(fx.payload)
    return parse_graph(_read_text(source))


def load_complex(source: str) -> SimplicialComplex:
    if source.startswith("@"):
        return fixtures.get(source[1:]).complex()
    return parse_complex(_read_text(source))


def _budget(args) -> Budget:
    return Budget(args.budget_nodes, args.budget_depth)


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.format == "json":
        sys.stdout.write(dumps(payload))
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _exit_for(kind: str) -> int:
    return {"yes": EXIT_YES, "no": EXIT_NO}.get(kind, EXIT_UNKNOWN)


def cmd_reduce(args) -> int:
    G = load_graph(args.input)
    budget = _budget(args)
    config = {"strategy": args.strategy, "budget_nodes": budget.nodes, "budget_depth": budget.depth}
    witness = None
    if args.strategy in ("dismantle", "s"):
        if args.strategy == "dismantle":
            trace = dismantling_to_trace(dismantle(G))
        else:
            trace = s_reduction_to_trace(s_reduce(G))
        if trace.end.is_k1():
            kind = "yes"
        else:
            witness = homology(clique_complex(G), reduced=True)
            kind = "unknown" if witness.is_trivial() else "no"
    else:
        verdict = reduce_via_moves(G, budget)
        kind, trace, witness = verdict.kind, verdict.certificate, verdict.witness
    outcome = {"yes": "reduced to K1", "no": "refuted", "unknown": "unknown"}[kind]
    lines = [f"config: {config}", f"input: {G.n} vertices, {G.m} edges", f"result: {outcome}"]
    if trace is not None:
        lines.append(f"moves: {len(trace.moves)}; end graph: {trace.end.n} vertices, {trace.end.m} edges")
        if args.emit_trace:
            write_trace(trace, args.emit_trace)
            lines.append(f"trace written to {args.emit_trace}")
    if witness is not None and not witness.is_trivial():
        lines.append(f"witness: {witness}")
    payload = {"config": config, "result": kind,
               "trace": None if trace is None else trace_to_json(trace),
               "witness": None if witness is None else witness.to_json()}
    _emit(args, lines, payload)
    return _exit_for(kind)


def cmd_certify(args) -> int:
    G = load_graph(args.input)
    budget = _budget(args)
    config = {"budget_nodes": budget.nodes, "budget_depth": budget.depth}
    verdict = certify_contractible(G, budget)
    lines = [f"config: {config}", f"input: {G.n} vertices, {G.m} edges",
             f"verdict: {verdict.kind.upper()} ({verdict.method})"]
    if verdict.is_yes:
        lines.append(f"certificate: {len(verdict.certificate.moves)} moves to K1")
        if args.emit_trace:
            write_trace(verdict.certificate, args.emit_trace)
            lines.append(f"trace written to {args.emit_trace}")
    elif verdict.is_no:
        lines.append(f"witness: {verdict.witness}")
    else:
        lines.append(f"diagnostics: {verdict.diagnostics}")
    _emit(args, lines, {"config": config, **verdict_to_json(verdict)})
    return _exit_for(verdict.kind)


def cmd_verify_trace(args) -> int:
    with open(args.trace) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.msg) from None
    try:
        trace = trace_from_json(data)
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(0, f"not a trace document: {exc}") from None
    check = verify_trace(trace, _budget(args))
    lines = [f"moves: {len(trace.moves)}", "verified" if check.ok else
             f"FAILED at step {check.step}: {check.reason}"]
    _emit(args, lines, {"ok": check.ok, "step": check.step, "reason": check.reason})
    return 0 if check.ok else 1


def cmd_verify_theorems(args) -> int:
    config = RunConfig(
        budget_nodes=args.budget_nodes, budget_depth=args.budget_depth, seed=args.seed,
        trials=args.trials, n=args.n, p=tuple(args.p), moves=args.moves,
        suites=tuple(args.suite) if args.suite else ALL_SUITES,
    )
    report = run_suites(config)
    if args.format == "json":
        sys.stdout.write(dumps(report))
    else:
        print(f"config: {report['config']}")
        for name, r in report["suites"].items():
            status = "PASS" if r["passed"] else "FAIL"
            print(f"{status} {name}: {r['checked']} checks, {len(r['failures'])} failures")
            for f in r["failures"]:
                print(f"  counterexample: {f}")
        print("all suites passed" if report["passed"] else "some suites FAILED")
    return 0 if report["passed"] else 1


def _write_out(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_clique(args) -> int:
    _write_out(args, format_complex(clique_complex(load_graph(args.input))))
    return 0


def cmd_skeleton(args) -> int:
    _write_out(args, format_graph(one_skeleton(load_complex(args.input))))
    return 0


def cmd_bd(args) -> int:
    _write_out(args, format_complex(barycentric(load_complex(args.input))))
    return 0


def cmd_cyl(args) -> int:
    _write_out(args, format_complex(cyl(load_complex(args.input))))
    return 0


def cmd_collapse(args) -> int:
    K, steps = greedy_collapse(load_complex(args.input))
    sys.stderr.write(f"{len(steps)} elementary collapses\n")
    _write_out(args, format_complex(K))
    return 0


def cmd_homology(args) -> int:
    K = load_complex(args.input)
    prof = homology(K, reduced=args.reduced)
    _emit(args, [str(prof)], prof.to_json())
    return 0


def cmd_link(args) -> int:
    K = load_complex(args.input)
    _write_out(args, format_complex(link(K, parse_token(args.vertex))))
    return 0


def cmd_fixtures(args) -> int:
    items = fixtures.all_fixtures()
    if args.export:
        os.makedirs(args.export, exist_ok=True)
        for fx in items:
            if fx.is_graph:
                path, text = f"{fx.name}.graph", format_graph(fx.payload)
            else:
                path, text = f"{fx.name}.cx", format_complex(fx.payload)
            with open(os.path.join(args.export, path), "w") as fh:
                fh.write(f"# {fx.name}: {fx.expected}\n" + text)
    for fx in items:
        kind = "graph" if fx.is_graph else "complex"
        print(f"{fx.name:20s} {kind:8s} {fx.expected}")
    return 0


def _add_budget(p) -> None:
    p.add_argument("--budget-nodes", type=int, default=Budget.nodes,
                   help="states expanded per move search (default %(default)s)")
    p.add_argument("--budget-depth", type=int, default=Budget.depth,
                   help="nesting depth for link certification (default %(default)s)")


def _add_format(p) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flagfold", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", help="reduce a graph toward K1 and write the trace")
    p.add_argument("input", help="graph file, '-' for stdin, or @fixture")
    p.add_argument("--strategy", choices=("dismantle", "s", "i-moves"), default="i-moves")
    p.add_argument("--emit-trace", metavar="PATH")
    _add_budget(p)
    _add_format(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("certify", help="decide whether the clique complex is contractible")
    p.add_argument("input")
    p.add_argument("--emit-trace", metavar="PATH")
    _add_budget(p)
    _add_format(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-trace", help="replay a JSON trace with full re-certification")
    p.add_argument("trace")
    _add_budget(p)
    _add_format(p)
    p.set_defaults(func=cmd_verify_trace)

    p = sub.add_parser("verify-theorems", help="run the randomized invariance suites")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--n", type=int, default=12, help="maximum vertex count")
    p.add_argument("--p", type=float, nargs="+", default=[0.3, 0.5, 0.7])
    p.add_argument("--moves", type=int, default=20, help="certified moves per graph")
    p.add_argument("--suite", action="append", choices=ALL_SUITES)
    _add_budget(p)
    _add_format(p)
    p.set_defaults(func=cmd_verify_theorems)

    for name, func, helptext in (
        ("clique", cmd_clique, "clique complex of a graph"),
        ("skeleton", cmd_skeleton, "1-skeleton of a complex, as a graph"),
        ("bd", cmd_bd, "barycentric subdivision"),
        ("cyl", cmd_cyl, "cylinder complex on K and Bd(K)"),
        ("collapse", cmd_collapse, "greedy elementary collapses"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input")
        p.add_argument("-o", "--output")
        p.set_defaults(func=func)

    p = sub.add_parser("homology", help="integral homology of a complex")
    p.add_argument("input")
    p.add_argument("--reduced", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("link", help="link of a vertex")
    p.add_argument("input")
    p.add_argument("vertex")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("fixtures", help="list (and optionally export) the built-in fixtures")
    p.add_argument("--export", metavar="DIR")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_DATA
    except (OSError, KeyError) as exc:
        sys.stderr.write(f"cannot read input: {exc}\n")
        return EXIT_DATA
    except (FaceCapExceeded, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
