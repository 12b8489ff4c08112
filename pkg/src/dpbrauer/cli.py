"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .brauer import brauer_results
from .checks import run_checks
from .piclattice import MAX_DEGREE, MIN_DEGREE
from .tables import build_rows, render
from .typeexpr import TypeParseError, parse_type

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _degree(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"degree must be an integer, got {text!r}")
    if not MIN_DEGREE <= d <= MAX_DEGREE:
        raise argparse.ArgumentTypeError(f"degree must be between {MIN_DEGREE} and {MAX_DEGREE}, got {d}")
    return d


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpbrauer",
        description="Brauer groups of singular del Pezzo surfaces over an algebraically closed field.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="list singularity types with their Brauer groups")
    p.add_argument("--degree", type=_degree, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--include-trivial", action="store_true",
                   help="also list types whose Brauer group is trivial")
    p.add_argument("--include-excluded", action=argparse.BooleanOptionalAction, default=True,
                   help="show types not realized on del Pezzo surfaces (default: shown, marked #)")

    p = sub.add_parser("brauer", help="Brauer groups of every embedding of one singularity type")
    p.add_argument("--degree", type=_degree, required=True)
    p.add_argument("--type", dest="type_expr", required=True, help='e.g. "2A1+A3"')
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check", help="run the self-validation suite")
    p.add_argument("--oracle-floor", type=int, default=3,
                   help="run the brute-force oracle for degrees >= this (default 3)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def cmd_tables(args) -> int:
    rows = build_rows(args.degree, include_trivial=args.include_trivial,
                      include_excluded=args.include_excluded)
    sys.stdout.write(render(args.degree, rows, args.format, args.include_trivial))
    return EXIT_OK


def cmd_brauer(args) -> int:
    try:
        expr = parse_type(args.type_expr)
    except TypeParseError as exc:
        print(f"dpbrauer brauer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    wanted = str(expr)
    matches = [r for r in brauer_results(args.degree) if str(r.type) == wanted]
    if args.format == "json":
        payload = {
            "degree": args.degree,
            "type": wanted,
            "embeddable": bool(matches),
            "embeddings": [
                {"group": {"invariant_factors": list(r.group.invariant_factors)},
                 "locally_trivial": r.locally_trivial,
                 "excluded": r.excluded}
                for r in matches
            ],
        }
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    if not matches:
        print(f"Degree {args.degree}, type {wanted}: not embeddable")
        return EXIT_OK
    noun = "embedding" if len(matches) == 1 else "embeddings"
    print(f"Degree {args.degree}, type {wanted}: {len(matches)} {noun}")
    for i, r in enumerate(matches, 1):
        line = (f"  [{i}] Brauer group {r.group}; "
                f"locally trivial: {'yes' if r.locally_trivial else 'no'}")
        if r.excluded:
            line += f"; excluded (not realized on a del Pezzo surface; {r.caveat})"
        print(line)
    return EXIT_OK


def cmd_check(args) -> int:
    results = run_checks(args.oracle_floor)
    ok = all(r.ok for r in results)
    if args.format == "json":
        print(json.dumps({"ok": ok, "checks": [r.to_json() for r in results]}, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}")
            for f in r.failures:
                print(f"      {f}")
    return EXIT_OK if ok else EXIT_FAILED


COMMANDS = {"tables": cmd_tables, "brauer": cmd_brauer, "check": cmd_check}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
