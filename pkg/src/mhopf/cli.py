"""Command line driver.

    mhopf run <scenario> [--window N] [--seed N] [--out PATH] [--format F]
    mhopf list
    mhopf explain <check-name>

<scenario> is a file path or the name of a bundled scenario.  Exit codes:
0 all checks pass, 1 at least one failure, 2 inconclusive results only,
3 parse or resolution errors.  The machine report is canonical JSON and is
byte-identical for identical scenario + seed; timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import pathlib
import sys
import time

from .errors import MhopfError
from .scenarios import (
    ScenarioError,
    builtin_catalog,
    builtin_scenarios,
    explain_check,
    load_scenario,
    run_scenario,
)

PARSE_ERROR = 3


def _read_scenario(ref: str) -> tuple[str, str]:
    path = pathlib.Path(ref)
    if path.exists():
        return path.read_text(), str(path)
    bundled = builtin_scenarios()
    if ref in bundled:
        return bundled[ref], f"bundled:{ref}"
    raise ScenarioError(f"no scenario file or bundled scenario named {ref!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mhopf",
        description="Exact check suites for multiplier Hopf algebra structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file or bundled scenario")
    p_run.add_argument("scenario")
    p_run.add_argument("--window", type=int, default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--out", default=None)
    p_run.add_argument("--format", choices=("machine", "human"), default="machine")

    sub.add_parser("list", help="list built-in groups, instances, checks, scenarios")

    p_explain = sub.add_parser("explain", help="describe a registered check")
    p_explain.add_argument("name")

    args = parser.parse_args(argv)

    if args.command == "list":
        for line in builtin_catalog():
            print(line)
        return 0

    if args.command == "explain":
        try:
            print(explain_check(args.name))
        except ScenarioError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return PARSE_ERROR
        return 0

    started = time.monotonic()
    try:
        text, origin = _read_scenario(args.scenario)
        doc = load_scenario(text, name=origin)
        report = run_scenario(doc, seed=args.seed, window=args.window)
    except (ScenarioError, MhopfError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    rendered = report.to_json() if args.format == "machine" else report.to_text()
    if args.out:
        pathlib.Path(args.out).write_text(rendered)
    else:
        sys.stdout.write(rendered)
    elapsed = time.monotonic() - started
    print(
        f"{report.scenario}: {len(report.checks)} checks in {elapsed:.3f}s "
        f"-> {report.outcome()}",
        file=sys.stderr,
    )
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
