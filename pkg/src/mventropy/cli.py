"""Command line interface.

    mventropy run <scenario.json | builtin-name> [--out DIR] [--max-n N]
              [--grid M] [--eps-ladder L] [--exact-threshold K]
    mventropy suite <name> [--seed S] [--count C]
    mventropy list
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .scenarios import (
    BUILTIN_SCENARIOS,
    EXIT_PARSE_ERROR,
    PROPERTY_SUITES,
    ScenarioError,
    run_property_suite,
    run_scenario,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mventropy",
        description="entropy laboratory for multivalued dynamical systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario file or built-in")
    run_p.add_argument("scenario", help="path to a scenario JSON or a built-in name")
    run_p.add_argument("--out", default=None, help="directory for report and CSV tables")
    run_p.add_argument("--max-n", type=int, default=None, help="override depth cap")
    run_p.add_argument("--grid", type=int, default=None, help="override grid size")
    run_p.add_argument(
        "--eps-ladder", default=None, help="comma-separated rational eps values"
    )
    run_p.add_argument(
        "--exact-threshold", type=int, default=None, help="exact-solver size cutoff"
    )

    suite_p = sub.add_parser("suite", help="run a randomized property suite")
    suite_p.add_argument("name", help="suite name (see `list`)")
    suite_p.add_argument("--seed", type=int, default=0)
    suite_p.add_argument("--count", type=int, default=100)

    sub.add_parser("list", help="list built-in scenarios and suites")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "list":
        print("built-in scenarios:")
        for name in sorted(BUILTIN_SCENARIOS):
            print(f"  {name}")
        print("property suites:")
        for name in sorted(PROPERTY_SUITES):
            print(f"  {name}")
        return 0

    if args.command == "suite":
        try:
            report = run_property_suite(args.name, seed=args.seed, count=args.count)
        except ScenarioError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE_ERROR
        print(json.dumps(report, indent=2, sort_keys=True))
        return 0 if report["ok"] else 1

    overrides = {}
    if args.max_n is not None:
        overrides["max_n"] = args.max_n
    if args.grid is not None:
        overrides["grid"] = args.grid
    if args.eps_ladder is not None:
        overrides["eps_ladder"] = args.eps_ladder.split(",")
    if args.exact_threshold is not None:
        overrides["exact_threshold"] = args.exact_threshold
    report, code = run_scenario(args.scenario, out_dir=args.out, overrides=overrides)
    print(json.dumps(report, indent=2, sort_keys=True, default=str))
    return code


def cli() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    cli()
