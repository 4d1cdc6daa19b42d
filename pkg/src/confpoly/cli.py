"""Command line front end: ``confpoly <verb> ...``.

Exit status: 0 on success, 2 for unreadable or invalid input, 3 when two
computations that must agree do not (or a verification suite fails).
"""
from __future__ import annotations

import argparse
import json
import sys

from .config import Configuration, h1_configuration, phi_config, plucker, psi_det, psi_plucker, restrict
from .errors import CheckFailure, ConfpolyError
from .exactalg import Polynomial, rat_text
from .formats import (
    detect_kind,
    emit_configuration,
    parse_configuration,
    parse_graph,
    parse_momentum,
    parse_point,
    parse_subset,
)
from .graphhom import Multigraph, betti_one, first_graph_polynomial_forests, second_graph_polynomial_cutsets
from .singular import tangent_cone, verify_theorem
from .suites import SUITES, run_suite

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 2, 3
SCHEMA_VERSION = 1


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> Multigraph | Configuration:
    text = _read(path)
    return parse_graph(text) if detect_kind(text) == "graph" else parse_configuration(text)


def _as_configuration(obj) -> Configuration:
    return h1_configuration(obj) if isinstance(obj, Multigraph) else obj


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps({"v": SCHEMA_VERSION, **payload}, indent=2))
    else:
        print(text)


def _polynomial_payload(p: Polynomial, methods: list[str]) -> dict:
    return {"polynomial": p.to_text(), "coefficients": p.coefficient_map(), "methods": methods}


def _agree(results: dict[str, Polynomial]) -> Polynomial:
    names = list(results)
    first = results[names[0]]
    for name in names[1:]:
        if results[name] != first:
            raise CheckFailure(f"methods disagree: {names[0]} gives {first}, {name} gives {results[name]}")
    return first


def cmd_psi(args) -> int:
    obj = _load(args.input)
    is_graph = isinstance(obj, Multigraph)
    if args.method == "forests" and not is_graph:
        raise ConfpolyError("the forests method needs a graph input")
    if args.method == "all":
        methods = ["forests", "det", "plucker"] if is_graph else ["det", "plucker"]
        if is_graph and betti_one(obj) == 0:
            # a forest has no cycle space; only the forest sum applies
            methods = ["forests"]
    else:
        methods = [args.method]
    results = {}
    for m in methods:
        if m == "forests":
            results[m] = first_graph_polynomial_forests(obj)
        elif m == "det":
            results[m] = psi_det(_as_configuration(obj))
        else:
            results[m] = psi_plucker(_as_configuration(obj))
    p = _agree(results)
    _emit(args, p.to_text(), _polynomial_payload(p, methods))
    return EXIT_OK


def cmd_phi(args) -> int:
    G = parse_graph(_read(args.graph))
    p = parse_momentum(_read(args.momentum), G)
    methods = ["cutsets", "config"] if args.method == "all" else [args.method]
    results = {}
    for m in methods:
        results[m] = second_graph_polynomial_cutsets(G, p) if m == "cutsets" else phi_config(G, p)
    poly = _agree(results)
    _emit(args, poly.to_text(), _polynomial_payload(poly, methods))
    return EXIT_OK


def cmd_plucker(args) -> int:
    W = _as_configuration(_load(args.input))
    coords = plucker(W)
    lines = [f"{','.join(str(e + 1) for e in F)} {rat_text(v)}" for F, v in coords.items()]
    _emit(args, "\n".join(lines), {"plucker": {",".join(str(e + 1) for e in F): rat_text(v)
                                              for F, v in coords.items()}})
    return EXIT_OK


def cmd_restrict(args) -> int:
    obj = _load(args.input)
    W = _as_configuration(obj)
    names = obj.edge_names if isinstance(obj, Multigraph) else [str(e + 1) for e in range(W.n)]
    H = parse_subset(args.subset, names)
    R = restrict(W, H)
    if R is None:
        _emit(args, "# the restriction is the zero subspace", {"configuration": None, "polynomial": None})
        return EXIT_OK
    p = psi_det(R)
    text = emit_configuration(R) + f"# psi {p.to_text()}"
    _emit(args, text, {"configuration": emit_configuration(R), **_polynomial_payload(p, ["det"])})
    return EXIT_OK


def cmd_analyze(args) -> int:
    W = _as_configuration(_load(args.input))
    report = verify_theorem(W, parse_point(args.point), with_cone=args.tangent_cone)
    body = report.to_dict()
    # the report is a JSON record in either output mode
    print(json.dumps({"v": SCHEMA_VERSION, "report": body}, indent=2))
    if not report.theorem_ok or report.cones_agree is False:
        return EXIT_CHECK
    return EXIT_OK


def cmd_tangent_cone(args) -> int:
    W = _as_configuration(_load(args.input))
    cone = tangent_cone(W, parse_point(args.point))
    if not cone.agree:
        raise CheckFailure(f"Taylor cone {cone.projective} differs from restriction cone "
                           f"{cone.projective_by_restriction}")
    payload = {**_polynomial_payload(cone.projective, ["taylor", "restriction"]),
               "affine": cone.affine.to_text(), "chart": cone.chart + 1, "order": cone.order}
    _emit(args, cone.projective.to_text(), payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    status = EXIT_OK
    records = []
    for name in suites:
        result = run_suite(name, seed=args.seed, trials=args.trials, max_edges=args.max_edges)
        records.append({"suite": name, "passed": result.passed, "checks": result.checks,
                        "counts": dict(result.counts), "notes": result.notes,
                        "failures": result.failures})
        if not args.json:
            print(result.summary())
            for note in result.notes:
                if isinstance(note, str):
                    print("  note: " + note)
            for failure in result.failures:
                print("  counterexample: " + json.dumps(failure))
        if not result.passed:
            status = EXIT_CHECK
    if args.json:
        print(json.dumps({"v": SCHEMA_VERSION, "seed": args.seed, "trials": args.trials,
                          "suites": records}, indent=2))
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confpoly", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a versioned JSON object")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("psi", parents=[common], help="first polynomial of a graph or configuration")
    p.add_argument("input", help="graph or configuration file ('-' for stdin)")
    p.add_argument("--method", choices=["forests", "det", "plucker", "all"], default="all")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("phi", parents=[common], help="second polynomial of a graph with momentum")
    p.add_argument("graph")
    p.add_argument("momentum")
    p.add_argument("--method", choices=["cutsets", "config", "all"], default="all")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("plucker", parents=[common], help="maximal minors of the basis")
    p.add_argument("input")
    p.set_defaults(func=cmd_plucker)

    p = sub.add_parser("restrict", parents=[common], help="intersection with a coordinate subspace")
    p.add_argument("input")
    p.add_argument("--subset", required=True, help="comma separated edge names or 1-based indices")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("analyze", parents=[common], help="corank, multiplicity and tangent cone at a point")
    p.add_argument("input")
    p.add_argument("--point", required=True, help="comma separated rationals")
    p.add_argument("--tangent-cone", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tangent-cone", parents=[common], help="projective tangent cone at a point")
    p.add_argument("input")
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_tangent_cone)

    p = sub.add_parser("verify", parents=[common], help="run seeded randomized verification suites")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--max-edges", type=int, default=8)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CheckFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (ConfpolyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
