"""Command-line front end: run, sweep, and check subcommands.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on a
configuration error (malformed scenario, unknown parameter) with no partial
output.  Machine-readable payloads go to --out or stdout; human-readable
per-check lines go to stderr so redirected output stays clean.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import acceptance, runner


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holobit",
        description="coarse-graining entropy, wedge geometry, counting "
                    "networks, and their consistency checks")
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="run every consistency check "
                                       "on one scenario")
    sweep_p = sub.add_parser("sweep", help="rerun the pipeline while varying "
                                           "one scalar parameter")
    check_p = sub.add_parser("check", help="run the acceptance suite")
    for p in (run_p, sweep_p, check_p):
        p.add_argument("--scenario", metavar="PATH",
                       help="JSON scenario file (defaults apply when omitted)")
        p.add_argument("--out", metavar="PATH",
                       help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, help="override the scenario seed")
        p.add_argument("--strict-regime", action="store_true",
                       help="refuse fluid velocity beyond the warning bound")
    sweep_p.add_argument("--parameter", required=True,
                         help="dotted scalar field, e.g. geometry.l or fluid.u")
    sweep_p.add_argument("--values", required=True,
                         help="comma-separated numbers")
    return parser


def _load(args) -> runner.Scenario:
    scenario = (runner.load_scenario(args.scenario) if args.scenario
                else runner.Scenario())
    if args.seed is not None:
        if args.seed < 0:
            raise runner.ConfigError("seed: must be a nonnegative integer")
        scenario = replace(scenario, seed=args.seed)
    if args.strict_regime:
        scenario = replace(scenario, strict_regime=True)
    return scenario


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args) -> int:
    scenario = _load(args)
    report = runner.run_scenario(scenario)
    for check in report.checks:
        print(f"[{'PASS' if check.passed else 'FAIL'}] {check.name}"
              + (f" ({check.error})" if check.error else ""), file=sys.stderr)
    print(f"{report.n_passed}/{len(report.checks)} checks passed",
          file=sys.stderr)
    _emit(runner.serialize_report(report, args.format), args.out)
    return 0 if report.all_passed else 1


def _parse_values(raw: str) -> list[float]:
    try:
        values = [float(v) for v in raw.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise runner.ConfigError(f"values: {exc}") from exc
    if not values:
        raise runner.ConfigError("values: at least one value required")
    return values


def _cmd_sweep(args) -> int:
    scenario = _load(args)
    table = runner.sweep(scenario, args.parameter, _parse_values(args.values))
    for row in table.rows:
        print(f"{args.parameter} = {row['value']}: "
              f"{row['n_passed']} passed, {row['n_failed']} failed",
              file=sys.stderr)
    _emit(runner.serialize_sweep(table, args.format), args.out)
    return 0 if all(row["all_passed"] for row in table.rows) else 1


def _cmd_check(args) -> int:
    if args.format == "csv":
        raise runner.ConfigError("format: the acceptance report is JSON only")
    scenario = _load(args)
    report = acceptance.run_acceptance(seed=scenario.seed)
    for result in report.results:
        print(f"[{'PASS' if result.passed else 'FAIL'}] "
              f"criterion {result.number}: {result.name}", file=sys.stderr)
    n_ok = sum(1 for r in report.results if r.passed)
    print(f"{n_ok}/{len(report.results)} criteria passed", file=sys.stderr)
    _emit(acceptance.serialize_acceptance(report), args.out)
    return 0 if report.all_passed else 1


_COMMANDS = {"run": _cmd_run, "sweep": _cmd_sweep, "check": _cmd_check}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except runner.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
