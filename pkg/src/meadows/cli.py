"""Command-line front end.

Exit codes: 0 for success (including valid / sampled-clean results), 1 when a
check is refuted or a suite entry fails, 2 for usage, parse and structure
errors.  All randomness is seeded (--seed, default from MEADOW_SEED or 0), so
identical invocations produce identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import botworld, semantics
from .errors import MeadowError
from .flatten import cancel_unit_factors, flatten
from .semantics import Refuted, SampledClean, Valid, check_identity, check_valid
from .structures import eval_term, parse_structure, parse_value, value_str
from .syntax import (
    Frac,
    Signature,
    formula_to_json,
    parse_formula,
    parse_identity,
    parse_term,
    print_formula,
    print_identity,
    print_term,
    term_to_json,
)

_SUITES = ("eqcl", "ftcpm", "assertions", "rationals", "soundness", "cm")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meadow",
        description="Evaluate, check and transform terms and formulae over "
        "structures with partial division.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_structure(p, required=True):
        p.add_argument("--structure", "-s", required=required,
                       help="structure specifier: q, gf:<p>, tot0:<spec>, enl:<spec>")

    def add_sampling(p):
        p.add_argument("--samples", type=int, default=None,
                       help="sample count for infinite carriers (default 10000)")
        p.add_argument("--seed", type=int, default=None,
                       help="random seed (default: MEADOW_SEED or 0)")

    p = sub.add_parser("parse", help="parse input and print its canonical form")
    p.add_argument("--kind", choices=("formula", "term", "identity"), default="formula")
    p.add_argument("--sig", choices=("plain", "enlarged"), default="plain")
    p.add_argument("--json", action="store_true")
    p.add_argument("text")

    p = sub.add_parser("eval", help="evaluate a term under bindings")
    add_structure(p)
    p.add_argument("--bind", "-b", action="append", default=[],
                   metavar="NAME=VALUE", help="variable binding, repeatable")
    p.add_argument("text")

    p = sub.add_parser("check", help="check validity of a formula")
    add_structure(p)
    add_sampling(p)
    p.add_argument("text")

    p = sub.add_parser("eq", help="check an identity between two formulae")
    add_structure(p)
    add_sampling(p)
    p.add_argument("text")

    p = sub.add_parser("flatten", help="flatten a term into guard and flat fracterm")
    p.add_argument("--json", action="store_true")
    p.add_argument("--simplify", action="store_true",
                   help="cancel unit factors in the printed output (display only)")
    p.add_argument("text")

    p = sub.add_parser("translate", help="translate a formula into classical logic over bot")
    p.add_argument("--mode", choices=("true", "false"), default="true")
    p.add_argument("--json", action="store_true")
    p.add_argument("text")

    p = sub.add_parser("axioms", help="run a law suite against a structure")
    p.add_argument("--suite", choices=_SUITES, required=True)
    add_structure(p, required=False)
    add_sampling(p)
    p.add_argument("--json", action="store_true")

    return parser


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    return int(os.environ.get("MEADOW_SEED", "0"))


def _verdict_lines(verdict) -> tuple[str, int]:
    if isinstance(verdict, Valid):
        return "valid", 0
    if isinstance(verdict, SampledClean):
        return f"sampled-clean ({verdict.samples} samples, seed {verdict.seed})", 0
    assert isinstance(verdict, Refuted)
    witness = ", ".join(f"{k}={value_str(v)}" for k, v in verdict.witness.items())
    if verdict.status is not None:
        return f"refuted ({verdict.status.value}) at {witness}", 1
    return f"refuted at {witness}", 1


def _entry_line(entry) -> str:
    parts = [f"{entry.name}: {entry.verdict}"]
    if entry.status is not None:
        parts.append(f"status={entry.status}")
    if entry.witness:
        parts.append("witness " + ", ".join(f"{k}={v}" for k, v in entry.witness.items()))
    if entry.samples is not None:
        parts.append(f"samples={entry.samples}")
    if entry.notes:
        parts.append(f"[{entry.notes}]")
    return "  ".join(parts)


def _cmd_parse(args) -> int:
    sig = Signature(args.sig)
    if args.kind == "term":
        t = parse_term(args.text, sig)
        print(json.dumps(term_to_json(t), sort_keys=True) if args.json else print_term(t))
    elif args.kind == "identity":
        ident = parse_identity(args.text, sig)
        if args.json:
            payload = {
                "left": formula_to_json(ident.left),
                "right": formula_to_json(ident.right),
            }
            print(json.dumps(payload, sort_keys=True))
        else:
            print(print_identity(ident))
    else:
        f = parse_formula(args.text, sig)
        print(json.dumps(formula_to_json(f), sort_keys=True) if args.json else print_formula(f))
    return 0


def _cmd_eval(args) -> int:
    structure = parse_structure(args.structure)
    sig = Signature.ENLARGED if structure.enlarged else Signature.PLAIN
    term = parse_term(args.text, sig)
    valuation = {}
    for binding in args.bind:
        name, _, raw = binding.partition("=")
        if not _:
            raise MeadowError(f"binding {binding!r} is not of the form name=value")
        valuation[name.strip()] = parse_value(structure, raw)
    result = eval_term(structure, valuation, term)
    print(value_str(result.value) if result.defined else "undefined")
    return 0


def _cmd_check(args) -> int:
    structure = parse_structure(args.structure)
    formula = parse_formula(args.text)
    samples = args.samples
    if samples is None and not structure.finite:
        samples = 10000
    verdict = check_valid(structure, formula, samples=samples, seed=_seed(args))
    line, code = _verdict_lines(verdict)
    print(line)
    return code


def _cmd_eq(args) -> int:
    structure = parse_structure(args.structure)
    ident = parse_identity(args.text)
    samples = args.samples
    if samples is None and not structure.finite:
        samples = 10000
    verdict = check_identity(structure, ident, samples=samples, seed=_seed(args))
    line, code = _verdict_lines(verdict)
    print(line)
    return code


def _cmd_flatten(args) -> int:
    result = flatten(parse_term(args.text))
    guard, num, den = result.guard, result.numerator, result.denominator
    if args.simplify:
        guard, num, den = map(cancel_unit_factors, (guard, num, den))
    if args.json:
        payload = {
            "guard": print_term(guard),
            "numerator": print_term(num),
            "denominator": print_term(den),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(print_term(guard))
        print(print_term(Frac(num, den)))
    return 0


def _cmd_translate(args) -> int:
    formula = parse_formula(args.text)
    translated = botworld.psi(args.mode, formula)
    if args.json:
        print(json.dumps(botworld.fol_to_json(translated), sort_keys=True))
    else:
        print(botworld.print_fol(translated))
    return 0


def _cmd_axioms(args) -> int:
    seed = _seed(args)
    if args.suite == "cm":
        if not args.structure:
            raise MeadowError("--suite cm needs --structure enl:gf:<p>")
        structure = parse_structure(args.structure)
        report = botworld.run_cm_suite(structure, seed=seed)
    elif args.suite == "eqcl":
        report = semantics.run_axiom_suite("eqcl", None)
    else:
        if not args.structure:
            raise MeadowError(f"--suite {args.suite} needs --structure")
        structure = parse_structure(args.structure)
        samples = args.samples
        if samples is None and not structure.finite and args.suite != "soundness":
            samples = 10000
        report = semantics.run_axiom_suite(args.suite, structure, samples=samples, seed=seed)
    if args.json:
        if args.suite == "eqcl":
            # the law suite keeps its own entry schema
            payload = [
                {k: v for k, v in e.to_json().items()}
                for e in report.entries
            ]
            payload = [
                {"law": e["name"], "status": e["verdict"], **(
                    {"counterexample": e["witness"]} if "witness" in e else {}
                )}
                for e in payload
            ]
            print(json.dumps(payload, sort_keys=True, indent=2))
        else:
            print(json.dumps(report.to_json(), sort_keys=True, indent=2))
    else:
        for entry in report.entries:
            print(_entry_line(entry))
    return 0 if report.ok else 1


_COMMANDS = {
    "parse": _cmd_parse,
    "eval": _cmd_eval,
    "check": _cmd_check,
    "eq": _cmd_eq,
    "flatten": _cmd_flatten,
    "translate": _cmd_translate,
    "axioms": _cmd_axioms,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except MeadowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
