"""Summary statistics value object."""

import math
from typing import Any

from app.domain.exceptions import ValidationError


class SummaryStats:
    """Published group-level statistics of a two-group study.

    Group 1 is the "flourishing" group, group 2 the "nonflourishing" group.
    Means are in positivity-ratio units.
    """

    MIN_GROUP_SIZE = 2

    def __init__(
        self,
        n1: int,
        n2: int,
        mean1: float,
        mean2: float,
        t_stat: float,
        label: str = "",
    ) -> None:
        self.n1, self.n2 = self._validate_counts(n1, n2)
        self.mean1, self.mean2 = self._validate_means(mean1, mean2)
        self.t_stat = self._validate_t(t_stat)
        self.label = label

    def _validate_counts(self, n1: int, n2: int) -> tuple[int, int]:
        for name, value in (("n1", n1), ("n2", n2)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValidationError(f"{name} must be an integer")
            if value < self.MIN_GROUP_SIZE:
                raise ValidationError(
                    f"{name} must be at least {self.MIN_GROUP_SIZE}, got {value}"
                )
        return n1, n2

    def _validate_means(self, mean1: float, mean2: float) -> tuple[float, float]:
        for name, value in (("mean1", mean1), ("mean2", mean2)):
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite")
            if value < 0:
                raise ValidationError(
                    f"{name} must be nonnegative (positivity ratios are), got {value}"
                )
        return float(mean1), float(mean2)

    def _validate_t(self, t_stat: float) -> float:
        if not math.isfinite(t_stat):
            raise ValidationError("t_stat must be finite")
        return float(t_stat)

    @property
    def degrees_of_freedom(self) -> int:
        """Pooled-variance degrees of freedom, n1 + n2 - 2."""
        return self.n1 + self.n2 - 2

    @property
    def mean_difference(self) -> float:
        return self.mean1 - self.mean2

    def as_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "n1": self.n1,
            "n2": self.n2,
            "mean1": self.mean1,
            "mean2": self.mean2,
            "t_stat": self.t_stat,
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SummaryStats):
            return False
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def _key(self) -> tuple[int, int, float, float, float]:
        return (self.n1, self.n2, self.mean1, self.mean2, self.t_stat)

    def __repr__(self) -> str:
        return (
            f"SummaryStats(n1={self.n1}, n2={self.n2}, mean1={self.mean1}, "
            f"mean2={self.mean2}, t_stat={self.t_stat})"
        )
