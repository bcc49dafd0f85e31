"""Claims-ladder entities."""

import math
from dataclasses import dataclass
from enum import StrEnum

from app.domain.exceptions import ValidationError
from app.domain.value_objects import XKind

CLAIM_DESCRIPTIONS: dict[int, str] = {
    1: "There is a discontinuous phase transition (tipping point) exactly at "
    "the critical threshold.",
    2: "There is a discontinuous phase transition somewhere around 3.",
    3: "There is a rapid change somewhere around 3.",
    4: "There is an inflection point (separating convexity from concavity) "
    "somewhere around 3.",
    5: "There is an inflection point (separating convexity from concavity) "
    "somewhere.",
    6: "There is some nonlinearity somewhere.",
    7: "There is a positive (but substantially linear) correlation between "
    "the positivity ratio and degree of flourishing.",
    8: "There is no correlation between the positivity ratio and degree of "
    "flourishing.",
}


class Decision(StrEnum):
    SUPPORTED = "supported"
    NOT_SUPPORTED = "not-supported"
    UNTESTABLE = "untestable-with-this-data"


class ThresholdMode(StrEnum):
    EXACT = "exact"
    SAMPLE_SPECIFIC = "sample_specific"


@dataclass(frozen=True)
class ClaimVerdict:
    claim_id: int
    description: str
    statistic: float | None
    p_value: float | None
    decision: Decision
    procedure: str
    details: str = ""

    def __post_init__(self) -> None:
        if self.claim_id not in CLAIM_DESCRIPTIONS:
            raise ValidationError(f"claim_id must be in 1..8, got {self.claim_id}")
        if self.decision is not Decision.UNTESTABLE:
            p = self.p_value
            if p is None or math.isnan(p) or not 0.0 <= p <= 1.0:
                raise ValidationError(
                    f"claim {self.claim_id}: p_value must lie in [0, 1], got {p}"
                )

    @property
    def supported(self) -> bool:
        return self.decision is Decision.SUPPORTED

    @classmethod
    def untestable(cls, claim_id: int, procedure: str, details: str) -> "ClaimVerdict":
        return cls(
            claim_id=claim_id,
            description=CLAIM_DESCRIPTIONS[claim_id],
            statistic=None,
            p_value=None,
            decision=Decision.UNTESTABLE,
            procedure=procedure,
            details=details,
        )


@dataclass(frozen=True)
class ChangepointScan:
    """Best two-line segmentation against a single line.

    Segments are ``x < best_x`` and ``x >= best_x``; the lines are
    (intercept, slope) pairs.
    """

    candidate_x: tuple[float, ...]
    best_x: float
    improvement_stat: float
    p_value: float
    rss_single: float
    rss_segmented: float
    permutations: int
    left_line: tuple[float, float]
    right_line: tuple[float, float]
    n: int

    def __post_init__(self) -> None:
        if self.improvement_stat < 0:
            raise ValidationError("improvement_stat must be nonnegative")


@dataclass(frozen=True)
class ClaimReport:
    """Ordered verdicts 1-8 for one dataset and one threshold.

    ``alternate_nonlinearity`` repeats claim 6 with the predictor converted
    between ratio and fraction.
    """

    verdicts: tuple[ClaimVerdict, ...]
    x_kind: XKind
    n: int
    threshold: float
    window: tuple[float, float]
    threshold_mode: ThresholdMode
    dichotomized: bool
    scan: ChangepointScan | None
    seed: int
    alternate_x_kind: XKind | None = None
    alternate_nonlinearity: ClaimVerdict | None = None

    def verdict(self, claim_id: int) -> ClaimVerdict:
        for item in self.verdicts:
            if item.claim_id == claim_id:
                return item
        raise KeyError(claim_id)

    @property
    def supported_claims(self) -> tuple[int, ...]:
        return tuple(v.claim_id for v in self.verdicts if v.supported)
