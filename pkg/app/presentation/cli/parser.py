"""Argument parsing for the ``positivity-audit`` command."""

import argparse
from pathlib import Path
from typing import Any, NoReturn

from app.application.exceptions import UsageError

COMMANDS = ("forensics", "fit", "claims", "simulate", "transform")


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so main() owns exit codes."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{message}\n\n{self.format_usage()}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", type=Path, help="input CSV file")
    parser.add_argument(
        "--config", type=Path, help="JSON settings file or an earlier report"
    )
    parser.add_argument("--seed", type=int, help="master random seed")
    parser.add_argument("--alpha", type=float, help="significance level")
    parser.add_argument(
        "--threshold", type=float, help="critical positivity ratio (default 2.9013)"
    )
    parser.add_argument(
        "--upper-threshold",
        type=float,
        help="upper critical ratio (default 11.6346)",
    )
    parser.add_argument(
        "--x-var", choices=("ratio", "fraction"), help="predictor of an x,y file"
    )
    parser.add_argument("--output", type=Path, help="write to a file instead of stdout")
    parser.add_argument(
        "--log-level",
        choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
        type=str.upper,
    )


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog="positivity-audit",
        description="Statistical audit of positivity-ratio claims.",
    )
    subparsers = parser.add_subparsers(
        dest="command", metavar="{" + ",".join(COMMANDS) + "}", parser_class=CliArgumentParser
    )
    subparsers.required = True

    forensics = subparsers.add_parser(
        "forensics", help="reverse-engineer published two-group statistics"
    )
    _add_common(forensics)
    forensics.add_argument("--label", default=None, help="label of an inline sample")
    forensics.add_argument("--n1", type=int, help="flourishing group size")
    forensics.add_argument("--n2", type=int, help="nonflourishing group size")
    forensics.add_argument("--mean1", type=float, help="flourishing group mean ratio")
    forensics.add_argument("--mean2", type=float, help="nonflourishing group mean ratio")
    forensics.add_argument("--t-stat", type=float, help="reported pooled t statistic")
    forensics.add_argument(
        "--allowance", type=float, help="impurity allowance for the verdict"
    )

    fit = subparsers.add_parser(
        "fit", help="linear and quadratic fits in both parameterizations"
    )
    _add_common(fit)
    fit.add_argument(
        "--curves",
        type=Path,
        help="TSV file for sampled fitted curves (default: <report or input stem>.curves.tsv)",
    )

    claims = subparsers.add_parser("claims", help="test the ladder of threshold claims")
    _add_common(claims)
    claims.add_argument("--permutations", type=int, help="changepoint permutations")

    simulate = subparsers.add_parser(
        "simulate", help="power of dichotomized versus full-data tests"
    )
    _add_common(simulate)
    simulate.add_argument("--replications", type=int, help="datasets per shape")
    simulate.add_argument("--workers", type=int, help="worker processes")
    simulate.add_argument("--permutations", type=int, help="changepoint permutations")

    transform = subparsers.add_parser(
        "transform", help="append ratio and fraction columns to a records file"
    )
    _add_common(transform)

    return parser


INLINE_SAMPLE_FLAGS = ("n1", "n2", "mean1", "mean2", "t_stat")


def settings_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Settings values given on the command line; unset flags are left out."""
    overrides: dict[str, Any] = {}
    for name in ("seed", "alpha", "threshold", "upper_threshold", "x_var", "log_level"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value

    match args.command:
        case "forensics":
            inline = {name: getattr(args, name) for name in INLINE_SAMPLE_FLAGS}
            given = [name for name, value in inline.items() if value is not None]
            if given and len(given) != len(INLINE_SAMPLE_FLAGS):
                missing = sorted(set(INLINE_SAMPLE_FLAGS) - set(given))
                flags = ", ".join("--" + name.replace("_", "-") for name in missing)
                raise UsageError(f"inline sample is incomplete; missing {flags}")
            forensics: dict[str, Any] = {}
            if given:
                forensics["samples"] = [{"label": args.label or "inline", **inline}]
            if args.allowance is not None:
                forensics["impurity_allowance"] = args.allowance
            if forensics:
                overrides["forensics"] = forensics
        case "claims":
            if args.permutations is not None:
                overrides["claims"] = {"permutations": args.permutations}
        case "simulate":
            simulation = {
                name: getattr(args, name)
                for name in ("replications", "workers", "permutations")
                if getattr(args, name) is not None
            }
            if simulation:
                overrides["simulation"] = simulation
    return overrides
