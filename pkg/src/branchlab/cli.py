"""Command line front end: ``branchlab run|list|describe``.

Exit codes: 0 success, 2 invalid scenario or parameters, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import CapacityError, ScenarioError, SpecError, UnknownKind
from .runner import KINDS, bundled_path, describe, list_scenarios, run_scenario

EXIT_OK, EXIT_INVALID, EXIT_CAPACITY = 0, 2, 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="branchlab", description="Run branching-multiverse experiments from JSON scenarios.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a scenario file (or the name of a bundled one)")
    run.add_argument("file")
    run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    run.add_argument("--out-dir", default=".", help="directory for JSON/CSV reports (default: .)")
    mode = run.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="float_report", action="store_false", help="exact rationals only (default)")
    mode.add_argument("--float-report", dest="float_report", action="store_true", help="add floating-point renderings")
    run.set_defaults(float_report=False)

    sub.add_parser("list", help="list bundled scenarios")

    desc = sub.add_parser("describe", help="print the parameter schema of an experiment kind")
    desc.add_argument("kind", help=f"one of: {', '.join(KINDS)}")
    return parser


def _resolve(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    try:
        return bundled_path(name)
    except FileNotFoundError:
        return path  # let the loader report it


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        for item in list_scenarios():
            print(f"{item['file']:<40} {item['kind']:<18} {item['description']}")
        return EXIT_OK
    if args.command == "describe":
        try:
            print(describe(args.kind))
        except UnknownKind as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_INVALID
        return EXIT_OK
    try:
        result = run_scenario(_resolve(args.file), seed=args.seed, out_dir=args.out_dir, float_report=args.float_report)
    except (ScenarioError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, TypeError) as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for path in result.files:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
