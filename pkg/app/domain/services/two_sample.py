"""Pooled-variance two-sample t-test, forward and inverted, plus support and
tail bounds for a nonnegative variable."""

import math

from app.domain.entities.forensics import TailEstimate
from app.domain.exceptions import (
    DegenerateStatisticsError,
    InconsistentSummaryError,
    ValidationError,
)
from app.domain.services.special_functions import normal_sf
from app.domain.value_objects import SummaryStats


def _group_scale(n1: int, n2: int) -> float:
    return math.sqrt(1.0 / n1 + 1.0 / n2)


def pooled_t(mean1: float, mean2: float, n1: int, n2: int, s: float) -> float:
    """t = (mean1 - mean2) / (s * sqrt(1/n1 + 1/n2))."""
    if not s > 0:
        raise ValidationError(f"pooled SD must be positive, got {s}")
    return (mean1 - mean2) / (s * _group_scale(n1, n2))


def pooled_sd(
    var1: float, var2: float, n1: int, n2: int
) -> float:
    """Equal-variance pooled SD from unbiased group variances."""
    return math.sqrt(((n1 - 1) * var1 + (n2 - 1) * var2) / (n1 + n2 - 2))


def two_sample_t(stats: SummaryStats, s: float) -> float:
    """Forward pooled t-statistic for the published means and a pooled SD."""
    return pooled_t(stats.mean1, stats.mean2, stats.n1, stats.n2, s)


def pooled_sd_from_t(stats: SummaryStats) -> float:
    """Pooled SD implied by a reported t-statistic."""
    if stats.t_stat == 0:
        raise DegenerateStatisticsError(
            "t = 0 leaves the implied standard deviation unbounded"
        )
    difference = stats.mean_difference
    if difference == 0:
        raise InconsistentSummaryError(
            f"equal means cannot produce a nonzero t ({stats.t_stat})"
        )
    if (difference > 0) != (stats.t_stat > 0):
        raise InconsistentSummaryError(
            f"t = {stats.t_stat} disagrees in sign with the mean difference "
            f"{difference:+.6g}"
        )
    return difference / (stats.t_stat * _group_scale(stats.n1, stats.n2))


def support_lower_bound(mu: float, sigma: float) -> float:
    """Smallest M such that a distribution on [0, M] can have mean mu and SD sigma.

    Any such distribution has sigma**2 <= mu * (M - mu); the two-point
    distribution on {0, M} attains equality.
    """
    if not (math.isfinite(mu) and mu > 0):
        raise ValidationError(f"mu must be positive, got {mu}")
    if not (math.isfinite(sigma) and sigma >= 0):
        raise ValidationError(f"sigma must be nonnegative, got {sigma}")
    return mu + sigma * sigma / mu


def tail_fraction_above(mu: float, sigma: float, threshold: float) -> TailEstimate:
    """Normal-approximation share of the population above ``threshold``."""
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValidationError(f"sigma must be positive, got {sigma}")
    if not (math.isfinite(mu) and math.isfinite(threshold)):
        raise ValidationError("mu and threshold must be finite")
    if threshold == mu:
        fraction = 0.5
    else:
        fraction = normal_sf((threshold - mu) / sigma)
    return TailEstimate(mu=mu, sigma=sigma, threshold=threshold, fraction_above=fraction)
