"""Command-line front end.

Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or parse error,
3 resource limit, 4 outside the fragment the prover is complete for.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import semantics
from .calculus import check_proof
from .errors import ParseError, PCIDError, ResourceLimitError
from .prover import MAX_EXTENSIONS, MAX_PROVER_ATOMS, prove
from .semantics import T, wf_trace
from .syntax import Definition
from .textio import (
    format_formula,
    format_interpretation,
    format_proof,
    parse_assignment,
    parse_proof,
    parse_sequent,
    parse_theory,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RESOURCE, EXIT_SCOPE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _show_model(interp) -> str:
    return format_interpretation(interp) or "(empty)"


def _model_dict(interp) -> dict[str, str]:
    return {a.name: str(interp[a]) for a in sorted(interp)}


def _emit(args, human: list[str], data: dict) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        for line in human:
            print(line)


def cmd_solve(args) -> int:
    theory = parse_theory(_read(args.theory))
    model = semantics.find_model(theory, args.max_atoms)
    if model is None:
        _emit(args, ["UNSAT"], {"verdict": "UNSAT"})
        return EXIT_NEGATIVE
    _emit(args, ["SAT", _show_model(model)], {"verdict": "SAT", "model": _model_dict(model)})
    return EXIT_OK


def _pick_definition(theory, index: int | None) -> tuple[Definition, list]:
    positions = [i for i, f in enumerate(theory) if isinstance(f, Definition)]
    if not positions:
        raise UsageError("the theory contains no definition statement")
    if index is None:
        if len(positions) > 1:
            raise UsageError("the theory has several definitions; choose one with --def")
        index = 0
    if not 0 <= index < len(positions):
        raise UsageError(f"--def {index} is out of range; the theory has {len(positions)} definition(s)")
    chosen = positions[index]
    return theory[chosen], [f for i, f in enumerate(theory) if i != chosen]


def cmd_wfmodel(args) -> int:
    theory = parse_theory(_read(args.theory))
    d, _ = _pick_definition(theory, args.defn)
    try:
        given = parse_assignment(args.open or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    unknown = sorted(a.name for a in set(given) - d.open)
    if unknown:
        raise UsageError("not open atoms of the definition: " + ", ".join(unknown))
    missing = sorted(a.name for a in d.open - set(given))
    if missing:
        raise UsageError("--open must assign every open atom; missing " + ", ".join(missing))
    open_interp = {a: (T if v else semantics.F) for a, v in given.items()}
    trace = wf_trace(d, open_interp)
    limit = trace.limit
    human = []
    if args.trace:
        human.append("start " + format_interpretation(trace.start))
        for step in trace.steps:
            human.append(f"{step} -> {format_interpretation(step.after)}")
    human.append(format_interpretation(limit))
    data = {
        "model": _model_dict(limit),
        "two_valued": limit.is_two_valued(),
    }
    if args.trace:
        data["trace"] = [
            {"kind": s.kind, "atoms": sorted(a.name for a in s.atoms), "after": _model_dict(s.after)}
            for s in trace.steps
        ]
    _emit(args, human, data)
    return EXIT_OK


def cmd_totality(args) -> int:
    theory = parse_theory(_read(args.theory))
    d, context = _pick_definition(theory, args.defn)
    witness = semantics.totality_witness(d, context, args.max_atoms)
    if witness is None:
        _emit(args, ["TOTAL"], {"verdict": "TOTAL"})
        return EXIT_OK
    _emit(
        args,
        ["NOT TOTAL", "witness: " + _show_model(witness)],
        {"verdict": "NOT TOTAL", "witness": _model_dict(witness)},
    )
    return EXIT_NEGATIVE


def cmd_prove(args) -> int:
    sequent = parse_sequent(_read(args.sequent))
    outcome = prove(sequent, args.max_atoms, args.max_extensions)
    if outcome.status == "proved":
        text = format_proof(outcome.proof)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
            _emit(args, ["PROVED", f"proof written to {args.output}"],
                  {"verdict": "PROVED", "output": args.output, "nodes": outcome.proof.size()})
        elif args.json:
            _emit(args, [], {"verdict": "PROVED", "proof": text, "nodes": outcome.proof.size()})
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if outcome.status == "counter-model":
        cm = outcome.counter_model
        _emit(args, ["COUNTER-MODEL", _show_model(cm)],
              {"verdict": "COUNTER-MODEL", "model": _model_dict(cm)})
        return EXIT_NEGATIVE
    if outcome.status == "out-of-scope":
        _emit(args, ["OUT OF SCOPE", outcome.reason], {"verdict": "OUT OF SCOPE", "reason": outcome.reason})
        return EXIT_SCOPE
    _emit(args, ["RESOURCE LIMIT", outcome.reason], {"verdict": "RESOURCE LIMIT", "reason": outcome.reason})
    return EXIT_RESOURCE


def cmd_check(args) -> int:
    tree = parse_proof(_read(args.proof))
    report = check_proof(tree, verify_totality=args.verify_totality, max_atoms=args.max_atoms)
    human = ["ACCEPTED" if report.accepted else "REJECTED", f"root: {report.root}"]
    human += [f"error: {e}" for e in report.errors]
    human.append(f"uses def-intro: {'yes' if report.uses_def_intro else 'no'}")
    totality = {}
    for d in report.introduced_definitions:
        human.append(f"introduces: {format_formula(d)}")
    if report.totality is not None:
        for d, verdict in report.totality:
            word = {True: "total", False: "NOT TOTAL", None: "undecided"}[verdict]
            totality[format_formula(d)] = word
            human.append(f"totality of {format_formula(d)}: {word}")
    data = {
        "verdict": "ACCEPTED" if report.accepted else "REJECTED",
        "root": str(report.root),
        "errors": list(report.errors),
        "uses_def_intro": report.uses_def_intro,
        "introduced_definitions": [format_formula(d) for d in report.introduced_definitions],
    }
    if report.totality is not None:
        data["totality"] = totality
    _emit(args, human, data)
    if not report.accepted:
        return EXIT_NEGATIVE
    if args.verify_totality and report.totality_discharged is False:
        return EXIT_NEGATIVE
    if args.verify_totality and report.totality_discharged is None:
        return EXIT_RESOURCE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    parser = argparse.ArgumentParser(prog="pcid", description="Reasoning tools for PC(ID).")
    # The global flags may appear before or after the subcommand.
    for target, prefix in ((common, ""), (parser, "global_")):
        target.add_argument("--max-atoms", dest=prefix + "max_atoms", type=int, default=None,
                            help="enumeration / prover atom bound")
        target.add_argument("--max-extensions", dest=prefix + "max_extensions", type=int,
                            default=None, help="bound on case-split extensions in the prover")
        target.add_argument("--json", dest=prefix + "json", action="store_true",
                            help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="find a model of a theory")
    p.add_argument("theory")
    p.set_defaults(func=cmd_solve, default_atoms=semantics.MAX_ENUM_ATOMS)

    p = sub.add_parser("wfmodel", parents=[common], help="well-founded model of a definition")
    p.add_argument("theory")
    p.add_argument("--open", default="", help="values of the open atoms, e.g. o=T,r=F")
    p.add_argument("--def", dest="defn", type=int, default=None, help="which definition (0-based)")
    p.add_argument("--trace", action="store_true", help="print every induction step")
    p.set_defaults(func=cmd_wfmodel, default_atoms=semantics.MAX_ENUM_ATOMS)

    p = sub.add_parser("totality", parents=[common], help="is a definition total in the rest of the theory")
    p.add_argument("theory")
    p.add_argument("--def", dest="defn", type=int, default=None, help="which definition (0-based)")
    p.set_defaults(func=cmd_totality, default_atoms=semantics.MAX_ENUM_ATOMS)

    p = sub.add_parser("prove", parents=[common], help="prove a sequent or find a counter-model")
    p.add_argument("sequent")
    p.add_argument("-o", "--output", help="write the proof here instead of stdout")
    p.set_defaults(func=cmd_prove, default_atoms=MAX_PROVER_ATOMS)

    p = sub.add_parser("check", parents=[common], help="check a proof document")
    p.add_argument("proof")
    p.add_argument("--verify-totality", action="store_true",
                   help="decide totality of definitions introduced by def-intro")
    p.set_defaults(func=cmd_check, default_atoms=semantics.MAX_ENUM_ATOMS)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = args.json or args.global_json
    for name, fallback in (("max_atoms", args.default_atoms), ("max_extensions", MAX_EXTENSIONS)):
        if getattr(args, name) is None:
            setattr(args, name, getattr(args, "global_" + name))
        if getattr(args, name) is None:
            setattr(args, name, fallback)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except PCIDError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
