"""Command-line interface.

Exit codes: 0 equal or ok, 1 not equal or a failed check, 2 parse or usage
error, 3 a refused request (size guard, open term where a closed one is
needed, or an independence question with no known countermodel).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import os
import sys
from typing import Sequence

from .axioms import AXIOM_SETS, lookup_axiom
from .basic_forms import Variety, decide, to_basic_form, to_bf_cr, to_bf_rp, to_bf_st
from .boolean import decide_st_via_ba, from_ba, to_ba
from .errors import (AlphabetError, DepthExceeded, OpenTermError, ParseError, SizeGuardError,
                     UnresolvedIndependence)
from .independence import DEFAULT_BOUND, independence_report
from .rewrite import normal_form
from .syntax import format_history, parse_ba, parse_term, parse_valuation, print_ba, print_term
from .terms import Alphabet, is_closed
from .valuations import SemVariety, check_axiom_soundness, run as run_term, truth_rows

EXIT_OK, EXIT_DIFFERENT, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3

# Axioms each variety is expected to satisfy, checked by ``check-laws``.
LAWS = {
    SemVariety.FREE: ("CP1", "CP2", "CP3", "CP4"),
    SemVariety.RP: ("CP1", "CP2", "CP3", "CP4", "CPrp1", "CPrp2"),
    SemVariety.CR: ("CP1", "CP2", "CP3", "CP4", "CPcr1", "CPcr2"),
    SemVariety.ST: ("CP1", "CP2", "CP3", "CP4", "CPstat", "CPcontr"),
    SemVariety.NR: ("CP1", "CP2", "CP3", "CP4", "CP5"),
    SemVariety.RP1: ("CP1", "CP2", "CP3", "CP4", "CPrp2"),
    SemVariety.RP2: ("CP1", "CP2", "CP3", "CP4", "CPrp1"),
    SemVariety.CR1: ("CP1", "CP2", "CP3", "CP4", "CPcr2"),
    SemVariety.CR2: ("CP1", "CP2", "CP3", "CP4", "CPcr1"),
    SemVariety.STATCOUNTER: ("CP1", "CP2", "CP3", "CP4", "CPcontr"),
}


def _default_seed() -> int:
    try:
        return int(os.environ.get("SEQPROP_SEED", "0"))
    except ValueError:
        return 0


def _alphabet(text: str | None) -> Alphabet | None:
    return Alphabet.parse(text) if text else None


def _term(text: str, alphabet: Alphabet | None):
    return parse_term(text, alphabet)


def cmd_normalize(args) -> int:
    nf = normal_form(_term(args.term, _alphabet(args.alphabet)), args.strategy)
    print(print_term(nf.term))
    if args.trace:
        for line in nf.format_trace():
            print(line)
    return EXIT_OK


def cmd_prove(args) -> int:
    alphabet = _alphabet(args.alphabet)
    variety = Variety.parse(args.variety)
    p, q = _term(args.left, alphabet), _term(args.right, alphabet)
    if variety is Variety.ST and not (is_closed(p) and is_closed(q)):
        equal = decide_st_via_ba(p, q)
    else:
        equal = decide(variety, p, q, alphabet)
    print("EQUAL" if equal else "NOT EQUAL")
    return EXIT_OK if equal else EXIT_DIFFERENT


def cmd_basic_form(args) -> int:
    alphabet = _alphabet(args.alphabet)
    variety = Variety.parse(args.variety)
    p = _term(args.term, alphabet)
    convert = {Variety.FR: lambda t, _: to_basic_form(t), Variety.RP: to_bf_rp,
               Variety.CR: to_bf_cr, Variety.ST: to_bf_st}[variety]
    print(print_term(convert(p, alphabet)))
    return EXIT_OK


def cmd_eval(args) -> int:
    with open(args.valuation, encoding="utf-8") as fh:
        text = fh.read()
    v = parse_valuation(text)
    value, hist = run_term(_term(args.term, v.alphabet), v)
    print("T" if value else "F")
    print(format_history(hist))
    return EXIT_OK


def _cell(hist, atom, value) -> str:
    return f"{atom}@{format_history(hist)}={int(value)}"


def cmd_truth_table(args) -> int:
    alphabet = _alphabet(args.alphabet)
    variety = SemVariety.parse(args.variety)
    p = _term(args.term, alphabet)
    for cells, value, hist in truth_rows(p, variety, alphabet):
        read = " ".join(_cell(h, a, b) for (h, a), b in cells.items()) or "-"
        print(f"{read} | {'T' if value else 'F'} | {format_history(hist)}")
    return EXIT_OK


def cmd_to_ba(args) -> int:
    print(print_ba(to_ba(_term(args.term, _alphabet(args.alphabet)))))
    return EXIT_OK


def cmd_from_ba(args) -> int:
    print(print_term(from_ba(parse_ba(args.baterm))))
    return EXIT_OK


def cmd_independence(args) -> int:
    try:
        report = independence_report(args.set, args.target, args.bound, args.alphabet or None,
                                     seed=args.seed)
    except UnresolvedIndependence:
        print("OPEN (paper)")
        return EXIT_REFUSED
    for line in report.format():
        print(line)
    return EXIT_OK if report.valid else EXIT_DIFFERENT


def cmd_check_laws(args) -> int:
    variety = SemVariety.parse(args.variety)
    axioms = args.axiom or LAWS[variety]
    alphabet = _alphabet(args.alphabet) or Alphabet(["a", "b", "c"])
    ok = True
    for name in axioms:
        result = check_axiom_soundness(variety, name, args.trials, args.seed, alphabet, args.height)
        if result.holds:
            extra = f", {result.skipped} skipped" if result.skipped else ""
            print(f"{result.axiom} holds ({result.trials} trials{extra})")
            continue
        ok = False
        ce = result.counterexample
        print(f"{result.axiom} FAILS")
        print(f"  instance {print_term(ce.lhs)} = {print_term(ce.rhs)}")
        for side, (value, hist) in (("lhs", ce.lhs_result), ("rhs", ce.rhs_result)):
            print(f"  {side} {'T' if value else 'F'} {format_history(hist)}")
        print("  cells " + " ".join(_cell(h, a, b) for (h, a), b in ce.cells.items()))
    return EXIT_OK if ok else EXIT_DIFFERENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqprop", description="Conditional composition terms under reactive valuations.")
    sub = parser.add_subparsers(dest="command", required=True)
    varieties = ["fr", "rp", "cr", "st"]
    sem_varieties = ["fr", *[v.value for v in SemVariety if v is not SemVariety.FREE]]

    p = sub.add_parser("normalize", help="rewrite to the free normal form")
    p.add_argument("term")
    p.add_argument("--trace", action="store_true", help="print every rewrite step")
    p.add_argument("--strategy", choices=["innermost", "outermost"], default="innermost")
    p.add_argument("--alphabet")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("prove", help="decide congruence of two terms")
    p.add_argument("--variety", choices=varieties, required=True)
    p.add_argument("--alphabet")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("basic-form", help="canonical basic form of a closed term")
    p.add_argument("--variety", choices=varieties, required=True)
    p.add_argument("--alphabet")
    p.add_argument("term")
    p.set_defaults(func=cmd_basic_form)

    p = sub.add_parser("eval", help="evaluate a closed term against a valuation file")
    p.add_argument("--valuation", required=True, metavar="FILE")
    p.add_argument("term")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("truth-table", help="list the outcomes over all lawful valuations")
    p.add_argument("--variety", choices=sem_varieties, required=True)
    p.add_argument("--alphabet")
    p.add_argument("term")
    p.set_defaults(func=cmd_truth_table)

    p = sub.add_parser("to-ba", help="translate a term to Boolean algebra")
    p.add_argument("--alphabet")
    p.add_argument("term")
    p.set_defaults(func=cmd_to_ba)

    p = sub.add_parser("from-ba", help="translate a Boolean term to a conditional term")
    p.add_argument("baterm")
    p.set_defaults(func=cmd_from_ba)

    p = sub.add_parser("independence", help="check an axiom independence countermodel")
    p.add_argument("--set", required=True, type=str.lower, choices=[s.lower() for s in AXIOM_SETS])
    p.add_argument("--target", required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--alphabet")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("check-laws", help="random soundness checks of a variety's axioms")
    p.add_argument("--variety", choices=sem_varieties, required=True)
    p.add_argument("--axiom", action="append", type=lambda s: lookup_axiom(s).id,
                   help="check only this axiom (repeatable)")
    p.add_argument("--alphabet")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--height", type=int, default=4, help="maximum height of instance terms")
    p.set_defaults(func=cmd_check_laws)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, AlphabetError, KeyError, ValueError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_USAGE
    except (SizeGuardError, OpenTermError, DepthExceeded) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


def run(argv: Sequence[str], stdin: str = "") -> tuple[int, str, str]:
    """Run one command in-process and capture its exit code and output."""
    out, err = io.StringIO(), io.StringIO()
    old_stdin = sys.stdin
    sys.stdin = io.StringIO(stdin)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
    finally:
        sys.stdin = old_stdin
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
