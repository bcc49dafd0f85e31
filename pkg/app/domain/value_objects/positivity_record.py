"""Positivity record value object."""

import math

from app.domain.exceptions import ValidationError


class PositivityRecord:
    """One participant: positive and negative emotion scores plus an outcome."""

    def __init__(self, p_count: float, n_count: float, outcome: float) -> None:
        self.p_count, self.n_count = self._validate_counts(p_count, n_count)
        self.outcome = self._validate_outcome(outcome)

    @staticmethod
    def _validate_counts(p_count: float, n_count: float) -> tuple[float, float]:
        for name, value in (("p", p_count), ("n", n_count)):
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite")
            if value < 0:
                raise ValidationError(f"{name} must be nonnegative")
        if p_count == 0 and n_count == 0:
            raise ValidationError("p and n must not both be zero")
        return float(p_count), float(n_count)

    @staticmethod
    def _validate_outcome(outcome: float) -> float:
        if not math.isfinite(outcome):
            raise ValidationError("outcome must be finite")
        return float(outcome)

    @property
    def ratio(self) -> float | None:
        """P/N, or None when no negative emotions were reported."""
        if self.n_count == 0:
            return None
        return self.p_count / self.n_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PositivityRecord):
            return False
        return (self.p_count, self.n_count, self.outcome) == (
            other.p_count,
            other.n_count,
            other.outcome,
        )

    def __hash__(self) -> int:
        return hash((self.p_count, self.n_count, self.outcome))

    def __repr__(self) -> str:
        return (
            f"PositivityRecord(p_count={self.p_count}, n_count={self.n_count}, "
            f"outcome={self.outcome})"
        )
