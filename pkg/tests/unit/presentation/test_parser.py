from pathlib import Path

import pytest

from app.application.exceptions import UsageError
from app.presentation.cli import build_parser, settings_overrides


def _overrides(*argv: str) -> dict[str, object]:
    return settings_overrides(build_parser().parse_args(list(argv)))


class TestBuildParser:
    def test_common_flags(self) -> None:
        args = build_parser().parse_args(
            ["fit", "--input", "data.csv", "--x-var", "fraction", "--log-level", "debug"]
        )

        assert args.command == "fit"
        assert args.input == Path("data.csv")
        assert args.x_var == "fraction"
        assert args.log_level == "DEBUG"

    def test_unknown_subcommand(self) -> None:
        with pytest.raises(UsageError, match="usage:"):
            build_parser().parse_args(["plot"])

    def test_subcommand_is_required(self) -> None:
        with pytest.raises(UsageError):
            build_parser().parse_args([])

    def test_bad_number(self) -> None:
        with pytest.raises(UsageError, match="invalid float value"):
            build_parser().parse_args(["claims", "--alpha", "often"])


class TestSettingsOverrides:
    def test_unset_flags_are_left_out(self) -> None:
        assert _overrides("claims", "--input", "d.csv") == {}

    def test_global_values(self) -> None:
        assert _overrides("claims", "--seed", "3", "--threshold", "3.1") == {
            "seed": 3,
            "threshold": 3.1,
        }

    def test_claims_permutations(self) -> None:
        assert _overrides("claims", "--permutations", "1999") == {
            "claims": {"permutations": 1999}
        }

    def test_simulation_flags(self) -> None:
        assert _overrides("simulate", "--replications", "200", "--workers", "2") == {
            "simulation": {"replications": 200, "workers": 2}
        }

    def test_inline_sample(self) -> None:
        overrides = _overrides(
            "forensics",
            "--n1", "36", "--n2", "51", "--mean1", "3.2", "--mean2", "2.3", "--t-stat", "2.32",
            "--allowance", "0.2",
        )

        assert overrides["forensics"] == {
            "samples": [
                {"label": "inline", "n1": 36, "n2": 51, "mean1": 3.2, "mean2": 2.3, "t_stat": 2.32}
            ],
            "impurity_allowance": 0.2,
        }

    def test_incomplete_inline_sample(self) -> None:
        with pytest.raises(UsageError, match="--mean2, --t-stat"):
            _overrides("forensics", "--n1", "36", "--n2", "51", "--mean1", "3.2")
