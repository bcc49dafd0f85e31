"""Dichotomized group-means design and calibration of linear generators.

The calibration matches a linear generator to a reference shape on the only
quantities a dichotomized study observes: the share classified as
flourishing and the two groups' mean predictor values.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray
from scipy import optimize, stats

from app.domain.entities.simulation import (
    CalibrationResult,
    DichotomyExperiment,
    GeneratorSpec,
    Shape,
    ShapeParams,
)
from app.domain.exceptions import DegenerateSplitError, ValidationError
from app.domain.services.generators import draw_predictors, shape_curve
from app.domain.services.special_functions import student_t_sf, student_t_sf_two_tailed
from app.domain.services.two_sample import pooled_sd, pooled_t
from app.domain.value_objects import ScatterData

logger = logging.getLogger(__name__)

CALIBRATION_SAMPLE = 4096
CALIBRATION_SEED = 20_140_101
CALIBRATION_ROUNDS = 40
BISECTION_STEPS = 200
BISECTION_XTOL = 1e-12
CALIBRATION_TOLERANCE = 1e-4
SLOPE_BRACKET = (1e-4, 1e4)


def dichotomize_and_test(data: ScatterData, threshold_y: float) -> DichotomyExperiment:
    """Classify by ``y >= threshold_y`` and t-test the groups' predictor means.

    The flourishing group comes first, so a positive t means flourishers have
    the higher mean predictor value.
    """
    if not math.isfinite(threshold_y):
        raise ValidationError("threshold_y must be finite")
    flourishing = data.y >= threshold_y
    x1 = data.x[flourishing]
    x2 = data.x[~flourishing]
    if x1.size < 2 or x2.size < 2:
        raise DegenerateSplitError(
            f"split at y = {threshold_y:.6g} leaves groups of {x1.size} and {x2.size}"
        )
    var1 = float(np.var(x1, ddof=1))
    var2 = float(np.var(x2, ddof=1))
    s = pooled_sd(var1, var2, x1.size, x2.size)
    if s == 0:
        raise DegenerateSplitError("both groups have constant predictor values")
    mean1, mean2 = float(x1.mean()), float(x2.mean())
    t_stat = pooled_t(mean1, mean2, x1.size, x2.size, s)
    df = x1.size + x2.size - 2
    return DichotomyExperiment(
        threshold_y=threshold_y,
        n_flourishing=int(x1.size),
        n_nonflourishing=int(x2.size),
        group_means=(mean1, mean2),
        group_sds=(math.sqrt(var1), math.sqrt(var2)),
        pooled_sd=s,
        t_stat=t_stat,
        p_one_tailed=student_t_sf(t_stat, df),
        p_two_tailed=student_t_sf_two_tailed(t_stat, df),
    )


@dataclass(frozen=True)
class ExpectedGroups:
    """Population-level share of flourishers and group mean predictors."""

    share: float
    mean_flourishing: float
    mean_nonflourishing: float

    @property
    def difference(self) -> float:
        return self.mean_flourishing - self.mean_nonflourishing


def calibration_sample(spec: GeneratorSpec, size: int = CALIBRATION_SAMPLE) -> NDArray[np.float64]:
    """Fixed predictor sample standing in for the population."""
    rng = np.random.default_rng(CALIBRATION_SEED)
    return np.sort(draw_predictors(spec.x_dist, size, rng))


def flourishing_probability(
    spec: GeneratorSpec, threshold_y: float, x: NDArray[np.float64]
) -> NDArray[np.float64]:
    """P(y >= threshold_y | x) under the generator, clipping included."""
    if threshold_y <= spec.y_min:
        return np.ones_like(x)
    if threshold_y > spec.y_max:
        return np.zeros_like(x)
    curve = shape_curve(spec.shape, spec.params, x)
    if spec.noise_sd == 0:
        return (curve >= threshold_y).astype(float)
    return np.asarray(stats.norm.sf((threshold_y - curve) / spec.noise_sd), dtype=float)


def expected_groups(
    spec: GeneratorSpec, threshold_y: float, x: NDArray[np.float64]
) -> ExpectedGroups:
    p = flourishing_probability(spec, threshold_y, x)
    mass = float(p.sum())
    rest = float(x.size - mass)
    share = mass / x.size
    return ExpectedGroups(
        share=share,
        mean_flourishing=float(x @ p) / mass if mass > 0 else math.nan,
        mean_nonflourishing=float(x @ (1.0 - p)) / rest if rest > 0 else math.nan,
    )


def _bisect(
    func: Callable[[float], float], low: float, high: float, geometric: bool = False
) -> float:
    """Root of an increasing function on [low, high], clamped to the bracket.

    ``geometric`` bisects in log space, for scale parameters.
    """
    if func(low) >= 0:
        return low
    if func(high) <= 0:
        return high
    if not geometric:
        root = optimize.bisect(func, low, high, xtol=BISECTION_XTOL, maxiter=BISECTION_STEPS)
        return float(root)
    root = optimize.bisect(
        lambda u: func(math.exp(u)),
        math.log(low),
        math.log(high),
        xtol=BISECTION_XTOL,
        maxiter=BISECTION_STEPS,
    )
    return math.exp(root)


def _linear(
    base: GeneratorSpec, threshold_y: float, crossing: float, slope: float
) -> GeneratorSpec:
    params = ShapeParams(intercept=threshold_y - slope * crossing, slope=slope)
    return replace(base, shape=Shape.LINEAR, params=params)


def _difference_or_zero(groups: ExpectedGroups) -> float:
    return 0.0 if math.isnan(groups.difference) else groups.difference


def calibrate_linear_to_targets(
    base: GeneratorSpec,
    threshold_y: float,
    target_share: float,
    target_difference: float,
    x: NDArray[np.float64] | None = None,
) -> tuple[GeneratorSpec, ExpectedGroups, bool]:
    """Alternating bisection on the crossing point and slope of
    ``y = threshold_y + slope * (x - crossing)``.

    With the share fixed, the flourishing and nonflourishing means are
    pinned by the population mean, so matching the difference matches both.
    """
    if not 0.0 < target_share < 1.0:
        raise ValidationError(f"target share must lie in (0, 1), got {target_share}")
    if target_difference <= 0:
        raise ValidationError("target mean difference must be positive")
    sample = calibration_sample(base) if x is None else x
    low_x, high_x = float(sample.min()), float(sample.max())
    crossing = float(np.quantile(sample, 1.0 - target_share))
    slope = 1.0

    def share_gap(c: float) -> float:
        # decreasing in the crossing point, so negate
        groups = expected_groups(_linear(base, threshold_y, c, slope), threshold_y, sample)
        return target_share - groups.share

    def difference_gap(b: float) -> float:
        groups = expected_groups(_linear(base, threshold_y, crossing, b), threshold_y, sample)
        return _difference_or_zero(groups) - target_difference

    converged = False
    achieved = expected_groups(_linear(base, threshold_y, crossing, slope), threshold_y, sample)
    for _ in range(CALIBRATION_ROUNDS):
        crossing = _bisect(share_gap, low_x, high_x)
        slope = _bisect(difference_gap, *SLOPE_BRACKET, geometric=True)
        achieved = expected_groups(_linear(base, threshold_y, crossing, slope), threshold_y, sample)
        if (
            abs(achieved.share - target_share) < CALIBRATION_TOLERANCE
            and abs(_difference_or_zero(achieved) - target_difference) < CALIBRATION_TOLERANCE
        ):
            converged = True
            break
    if not converged:
        logger.warning(
            "Linear calibration did not converge",
            extra={"target_share": target_share, "target_difference": target_difference},
        )
    return _linear(base, threshold_y, crossing, slope), achieved, converged


def calibrate_linear(reference: GeneratorSpec, threshold_y: float) -> CalibrationResult:
    """Linear generator with the reference shape's expected group means."""
    sample = calibration_sample(reference)
    target = expected_groups(reference, threshold_y, sample)
    if not 0.0 < target.share < 1.0:
        raise DegenerateSplitError(
            f"reference {reference.name} never (or always) crosses y = {threshold_y:.6g}"
        )
    spec, achieved, converged = calibrate_linear_to_targets(
        replace(reference, label=f"linear-calibrated-to-{reference.name}"),
        threshold_y,
        target.share,
        target.difference,
        sample,
    )
    logger.info(
        "Calibrated linear generator",
        extra={
            "reference": reference.name,
            "intercept": spec.params.intercept,
            "slope": spec.params.slope,
            "converged": converged,
        },
    )
    return CalibrationResult(
        spec=spec,
        target_means=(target.mean_flourishing, target.mean_nonflourishing),
        achieved_means=(achieved.mean_flourishing, achieved.mean_nonflourishing),
        target_flourishing_share=target.share,
        achieved_flourishing_share=achieved.share,
        converged=converged,
    )


def calibrate_linear_to_means(
    base: GeneratorSpec, threshold_y: float, means: tuple[float, float]
) -> CalibrationResult:
    """Linear generator whose flourishing/nonflourishing mean predictors are ``means``.

    The share follows from the population mean: share * m1 + (1 - share) * m2.
    """
    sample = calibration_sample(base)
    mean1, mean2 = means
    if mean1 <= mean2:
        raise ValidationError("flourishing mean must exceed the nonflourishing mean")
    share = (float(sample.mean()) - mean2) / (mean1 - mean2)
    if not 0.0 < share < 1.0:
        raise ValidationError(
            f"means {mean1:.6g} and {mean2:.6g} do not bracket the predictor mean "
            f"{float(sample.mean()):.6g}"
        )
    spec, achieved, converged = calibrate_linear_to_targets(
        base, threshold_y, share, mean1 - mean2, sample
    )
    return CalibrationResult(
        spec=spec,
        target_means=(mean1, mean2),
        achieved_means=(achieved.mean_flourishing, achieved.mean_nonflourishing),
        target_flourishing_share=share,
        achieved_flourishing_share=achieved.share,
        converged=converged,
    )
