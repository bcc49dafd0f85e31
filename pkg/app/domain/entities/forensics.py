"""Forensic audit entities."""

import math
from dataclasses import dataclass, field
from enum import StrEnum

from app.domain.exceptions import ValidationError
from app.domain.value_objects import SummaryStats


class Verdict(StrEnum):
    CONSISTENT = "consistent-with-tipping"
    INCONSISTENT = "inconsistent-with-tipping"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class TailEstimate:
    """Normal-approximation probability mass above a cut value."""

    mu: float
    sigma: float
    threshold: float
    fraction_above: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.fraction_above <= 1.0 or math.isnan(self.fraction_above):
            raise ValidationError(
                f"fraction_above must lie in [0, 1], got {self.fraction_above}"
            )

    @property
    def fraction_below(self) -> float:
        return 1.0 - self.fraction_above


@dataclass(frozen=True)
class AllowanceVerdict:
    allowance: float
    verdict: Verdict


@dataclass(frozen=True)
class ForensicsReport:
    """Reverse-engineered audit of one published two-group comparison.

    ``tail`` is the estimated share of nonflourishers above the threshold;
    ``flourishing_tail`` describes the flourishing group against the same cut,
    so its ``fraction_below`` is the share of flourishers under it.
    """

    input: SummaryStats
    implied_sd: float | None
    support_bound: float | None
    tail: TailEstimate | None
    flourishing_tail: TailEstimate | None
    upper_tail: TailEstimate | None
    recomputed_p_one_tailed: float
    recomputed_p_two_tailed: float
    degrees_of_freedom: int
    rounds_down_to_alpha: bool
    means_flank_threshold: bool
    impurity_allowance: float
    verdict: Verdict
    verdicts_by_allowance: tuple[AllowanceVerdict, ...] = ()
    assumptions: tuple[str, ...] = ()
    diagnostics: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.implied_sd is not None and not self.implied_sd > 0:
            raise ValidationError("implied_sd must be positive when produced")


@dataclass(frozen=True)
class SensitivityEntry:
    """Audit quantities under an assumed flourishing/nonflourishing SD ratio."""

    sd_ratio: float
    sd_flourishing: float | None
    sd_nonflourishing: float | None
    support_bound: float | None
    tail: TailEstimate | None
    feasible: bool
    note: str = ""
