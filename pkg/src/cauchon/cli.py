"""Command-line entry point: ``cauchon check|count|recurrence|verify|dfa``.

Exit codes: 0 success, 1 usage or verification failure, 2 the independent
primitivity tests disagreed on a diagram.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import automata, checks, rep3
from .diagram import (
    BudgetExceeded,
    Diagram,
    DiagramError,
    diagram_from_json,
    enumerate_diagrams,
    is_cauchon,
    parse_diagram,
)
from .excess_algebra import is_primitive_fast
from .pfaffian import DEFAULT_MAX_WHITE, determinant, pfaffian_matchings, skew_adjacency

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DISAGREEMENT = 2

# the algebra's multiplication table has 4**(2m-1) entries
MAX_FAST_ROWS = 5
BRUTE_BUDGET = 1 << 22


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAILURE, f"{self.prog}: error: {message}\n")


def check_report(d: Diagram, max_white: int = DEFAULT_MAX_WHITE) -> dict:
    det = determinant(skew_adjacency(d))
    report = {
        "rows": d.rows,
        "cols": d.cols,
        "cauchon": is_cauchon(d),
        "whiteCount": d.white_count,
        "pfaffian": pfaffian_matchings(d, None) if d.white_count <= max_white else None,
        "determinant": det,
        "primitiveOracle": det != 0,
        "primitiveFast": is_primitive_fast(d) if d.rows <= MAX_FAST_ROWS else None,
    }
    if d.rows == 3:
        report["primitiveS4"] = rep3.is_primitive_s4(d)
    verdicts = [report["primitiveOracle"]]
    if report["pfaffian"] is not None:
        verdicts.append(report["pfaffian"] != 0)
        if report["pfaffian"] ** 2 != det:
            verdicts.append(None)
    for key in ("primitiveFast", "primitiveS4"):
        if report.get(key) is not None:
            verdicts.append(report[key])
    report["agreement"] = len(set(verdicts)) == 1
    return report


def _read_diagram(args) -> Diagram:
    if args.inline is not None:
        return parse_diagram(args.inline)
    if args.path is None:
        raise UsageError("give a diagram file or --inline TEXT")
    text = Path(args.path).read_text()
    if text.lstrip().startswith("{"):
        return diagram_from_json(text)
    return parse_diagram(text)


def cmd_check(args) -> int:
    d = _read_diagram(args)
    report = check_report(d, args.max_white)
    print(json.dumps(report))
    return EXIT_OK if report["agreement"] else EXIT_DISAGREEMENT


def _language_dfa(rows: int, what: str) -> automata.Dfa:
    if what == "diagrams":
        return automata.all_words_dfa(rows)
    if what == "cauchon":
        return automata.build_cauchon_dfa(rows)
    if rows > 3:
        raise UsageError("the primitive automaton is only available for rows <= 3")
    return automata.primitive_cauchon_dfa(rows)


def _brute_count(rows: int, n: int, what: str) -> int:
    if what == "diagrams":
        return 1 << (rows * n)
    total = 0
    for d in enumerate_diagrams(rows, n, budget=BRUTE_BUDGET):
        if is_cauchon(d) and (what == "cauchon" or determinant(skew_adjacency(d)) != 0):
            total += 1
    return total


def cmd_count(args) -> int:
    if args.rows < 1 or args.cols_max < 1:
        raise UsageError("--rows and --cols-max must be positive")
    if args.method == "dfa":
        counts = automata.count_sequence(_language_dfa(args.rows, args.what), args.cols_max)
    else:
        counts = [_brute_count(args.rows, n, args.what) for n in range(1, args.cols_max + 1)]
    print("n\tcount")
    for n, c in enumerate(counts, start=1):
        print(f"{n}\t{c}")
    return EXIT_OK


def cmd_recurrence(args) -> int:
    if not 1 <= args.rows <= 3:
        raise UsageError("--rows must be 1, 2 or 3")
    dfa = automata.primitive_cauchon_dfa(args.rows)
    terms = args.terms if args.terms is not None else automata.recommended_terms(dfa)
    if terms < 1:
        raise UsageError("--terms must be positive")
    counts = automata.count_sequence(dfa, terms)
    try:
        rec = automata.find_recurrence(counts)
    except automata.RecurrenceError as exc:
        raise UsageError(f"{exc}; rerun with a larger --terms") from exc
    out = {"rows": args.rows, "terms": terms, **rec.to_json(), "recurrence": str(rec)}
    if args.rows == 3:
        out["closedFormResidual"] = max(
            abs(c - rep3.closed_form_P3(n)) for n, c in enumerate(counts, start=1)
        )
    print(json.dumps(out, ensure_ascii=False))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = checks.run_suite(args.suite, seed=args.seed, threads=args.threads)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.ok]
    summary = {
        "suite": args.suite,
        "seed": args.seed,
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "failures": failed,
        "ok": not failed,
    }
    print(json.dumps(summary, ensure_ascii=False))
    return EXIT_OK if not failed else EXIT_FAILURE


def cmd_dfa(args) -> int:
    dfa = _language_dfa(args.rows, args.what)
    if args.minimize:
        dfa = automata.minimize(dfa)
    print(dfa.dumps())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cauchon", description="Primitivity and enumeration of Cauchon diagrams.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="run every applicable primitivity test on one diagram")
    p.add_argument("path", nargs="?", help="file with '.'/'#' rows (or a JSON diagram)")
    p.add_argument("--inline", help="diagram with '/' between rows, e.g. '.#/#.'")
    p.add_argument("--max-white", type=int, default=DEFAULT_MAX_WHITE,
                   help="skip the matching Pfaffian above this many white squares")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count", help="TSV table of counts for n = 1..cols-max")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols-max", type=int, required=True)
    p.add_argument("--what", choices=("diagrams", "cauchon", "primitive"), default="primitive")
    p.add_argument("--method", choices=("dfa", "brute"), default="dfa")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("recurrence", help="linear recurrence for primitive Cauchon counts")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--terms", type=int, help="number of counts to synthesise from")
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("verify", help="run the self-verification suites")
    p.add_argument("--suite", choices=("all",) + checks.SUITES, default="all")
    p.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dfa", help="export an automaton as JSON")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--what", choices=("diagrams", "cauchon", "primitive"), default="cauchon")
    p.add_argument("--minimize", action="store_true")
    p.set_defaults(func=cmd_dfa)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DiagramError, BudgetExceeded, OSError) as exc:
        print(f"cauchon: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
