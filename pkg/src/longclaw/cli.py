"""Command-line entry point: ``longclaw <command> ...``.

Exit codes: 0 ok, 1 usage or input error, 2 inconclusive, 3 certification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors
from .decomposer import ClawFound, decompose
from .esd import read_esd, validate_esd, write_esd
from .graph import closed_neighborhood, complement, read_graph
from .gyarfas import gyarfas_path
from .tiat import BudgetExceeded, TiatConfig, find_sttt_exhaustive, parse_cert

OK, USAGE, INCONCLUSIVE, CERT_FAILED = 0, 1, 2, 3

SUITES = {
    "all": None,
    "validator": {1},
    "rigidify": {2},
    "gyarfas": {3},
    "lemmas": {4},
    "separator": {5},
    "sttt": {6},
    "big-particle": {7},
    "arithmetic": {8},
    "terminal-degree": {9},
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _emit(doc) -> None:
    print(json.dumps(doc, sort_keys=True))


def cmd_decompose(args) -> int:
    G = read_graph(args.input)
    cert = None
    if args.linegraph_cert:
        with open(args.linegraph_cert, encoding="utf-8") as fh:
            cert = parse_cert(fh.read())
        cert.check(G)
    config = TiatConfig(certificate=cert, tree_budget=args.tree_budget)
    outcome = decompose(G, args.t, config)
    checks = {k: "pass" if v else "fail" for k, v in outcome.details["checks"].items()}
    if isinstance(outcome, ClawFound):
        report = {"branch": "sttt", "S": [], "esd_file": None, "checks": checks, "sttt": outcome.copy.to_dict()}
    else:
        esd_file = f"{args.out}.esd.json"
        write_esd(outcome.esd, esd_file)
        report = {"branch": "separator", "S": sorted(outcome.S), "esd_file": esd_file, "checks": checks, "case": outcome.branch}
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    _emit(report)
    return OK


def cmd_validate_esd(args) -> int:
    G = read_graph(args.graph)
    D = read_esd(args.esd)
    within = None
    if args.report:
        # a decompose report: the ESD describes G - N[S]
        with open(args.report, encoding="utf-8") as fh:
            S = json.load(fh)["S"]
        within = complement(G, closed_neighborhood(G, S))
    report = validate_esd(G, D, within)
    _emit(
        {
            "ok": report.ok,
            "violations": [{"rule": v.rule, "witness": repr(v.witness), "detail": v.detail} for v in report.violations],
        }
    )
    return OK if report.ok else CERT_FAILED


def cmd_gyarfas(args) -> int:
    G = read_graph(args.input)
    _emit({"Q": list(gyarfas_path(G).Q)})
    return OK


def cmd_find_sttt(args) -> int:
    G = read_graph(args.input)
    result = find_sttt_exhaustive(G, args.t, args.budget)
    if isinstance(result, BudgetExceeded):
        _emit({"found": None, "reason": result.reason})
        return INCONCLUSIVE
    if hasattr(result, "center"):
        _emit({"found": True, "sttt": result.to_dict()})
    else:
        _emit({"found": False, "explored": result.explored})
    return OK


def cmd_generate(args) -> int:
    from .harness.generators import GenParams, generate, write_instance

    p = GenParams(
        args.family,
        args.seed,
        n=args.n,
        host=args.host,
        density=args.density,
        t=args.t,
        weight_min=args.weight_min,
        weight_max=args.weight_max,
        shape=args.shape,
    )
    _emit({"written": write_instance(generate(p), args.out_prefix)})
    return OK


def cmd_selftest(args) -> int:
    from .harness.acceptance import run_all

    results = run_all(SUITES[args.suite])
    for r in results:
        print(r.line(), flush=True)
    return OK if all(r.passed for r in results) else CERT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="longclaw", description="Long-claw-or-separator decompositions with certificates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", help="find an induced S_{t,t,t} or a small separator")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--linegraph-cert")
    p.add_argument("--tree-budget", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("validate-esd", help="check an ESD file against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--esd", required=True)
    p.add_argument("--report", help="decompose report whose S is removed with its neighborhood first")
    p.set_defaults(func=cmd_validate_esd)

    p = sub.add_parser("gyarfas", help="print a Gyarfas path")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_gyarfas)

    p = sub.add_parser("find-sttt", help="exhaustive search for an induced S_{t,t,t}")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_find_sttt)

    p = sub.add_parser("generate", help="write a seeded instance")
    p.add_argument("--family", required=True, choices=("planted-esd", "line-graph", "planted-sttt", "random"))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--host", type=int, default=5)
    p.add_argument("--density", type=float, default=0.2)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--weight-min", type=int, default=1)
    p.add_argument("--weight-max", type=int, default=1)
    p.add_argument("--shape", default="random")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("selftest", help="run acceptance suites")
    p.add_argument("--suite", default="all", choices=tuple(SUITES))
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return args.func(args)
    except (errors.Inconclusive, errors.StepBudgetExceeded) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return INCONCLUSIVE
    except (errors.GraphFormatError, errors.BadCertificate, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except errors.LongclawError as exc:
        print(f"certification failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return CERT_FAILED


if __name__ == "__main__":
    sys.exit(main())
