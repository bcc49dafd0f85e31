"""Ordinary least-squares polynomial fits and the ratio/fraction transform.

Fits are computed on a centered and scaled predictor with a QR
decomposition, then mapped back to the raw basis together with their
covariance.
"""

import logging
import math
from math import comb

import numpy as np
from numpy.typing import NDArray

from app.domain.entities.regression import (
    CurveSample,
    FitDivergence,
    InflectionPoint,
    RegressionFit,
)
from app.domain.exceptions import (
    SampleSizeError,
    SingularFitError,
    UndefinedFractionError,
    ValidationError,
)
from app.domain.services.special_functions import student_t_sf_two_tailed
from app.domain.value_objects import ScatterData

logger = logging.getLogger(__name__)

SUPPORTED_DEGREES = (1, 2, 3)
# Residual SD never drops below this share of the response SD, so exact
# (noiseless) fits keep finite, meaningful t-statistics.
RESIDUAL_SD_FLOOR = 1e-10
RANK_TOLERANCE = 1e-10
DEFAULT_INFLECTION_FLOOR = 1e-3


def ratio_to_fraction(r: float) -> float:
    """P/N -> P/(P+N)."""
    if not math.isfinite(r) or r < 0:
        raise ValidationError(f"ratio must be finite and nonnegative, got {r}")
    return r / (1.0 + r)


def fraction_to_ratio(f: float) -> float:
    """P/(P+N) -> P/N for f in [0, 1)."""
    if not math.isfinite(f) or not 0.0 <= f < 1.0:
        raise ValidationError(f"fraction must lie in [0, 1), got {f}")
    return f / (1.0 - f)


def fraction_from_counts(p: float, n: float) -> float:
    """Positivity fraction from raw counts; defined when n = 0."""
    if not (math.isfinite(p) and math.isfinite(n)) or p < 0 or n < 0:
        raise ValidationError("counts must be finite and nonnegative")
    if p + n == 0:
        raise UndefinedFractionError("p and n are both zero")
    return p / (p + n)


def _raw_basis_map(center: float, scale: float, degree: int) -> NDArray[np.float64]:
    """Matrix T with raw_coeffs = T @ scaled_coeffs for z = (x - center) / scale."""
    transform = np.zeros((degree + 1, degree + 1))
    for j in range(degree + 1):
        for k in range(j + 1):
            transform[k, j] = comb(j, k) * (-center) ** (j - k) / scale**j
    return transform


def fit_polynomial(data: ScatterData, degree: int) -> RegressionFit:
    """Least-squares polynomial of the given degree with coefficient inference."""
    if degree not in SUPPORTED_DEGREES:
        raise ValidationError(f"degree must be one of {SUPPORTED_DEGREES}")
    n = data.n
    if n <= degree + 1:
        raise SampleSizeError(
            f"a degree-{degree} fit with inference needs at least {degree + 2} "
            f"points, got {n}"
        )
    x, y = data.x, data.y
    center = float(np.mean(x))
    scale = float(np.std(x))
    if scale == 0:
        raise SingularFitError("predictor values are all identical")

    design = np.vander((x - center) / scale, degree + 1, increasing=True)
    q, r = np.linalg.qr(design)
    diagonal = np.abs(np.diag(r))
    if diagonal.min() <= RANK_TOLERANCE * diagonal.max():
        raise SingularFitError(
            f"design matrix is rank deficient for degree {degree} "
            f"({np.unique(x).size} distinct predictor values)"
        )
    scaled = np.linalg.solve(r, q.T @ y)
    residuals = y - design @ scaled
    rss = float(residuals @ residuals)
    df_resid = n - degree - 1
    response_sd = float(np.std(y, ddof=1))
    resid_var = max(rss / df_resid, (RESIDUAL_SD_FLOOR * response_sd) ** 2)

    r_inv = np.linalg.inv(r)
    scaled_cov = resid_var * (r_inv @ r_inv.T)
    transform = _raw_basis_map(center, scale, degree)
    coeffs = transform @ scaled
    cov = transform @ scaled_cov @ transform.T
    std_errors = np.sqrt(np.clip(np.diag(cov), 0.0, None))

    t_stats = np.zeros_like(coeffs)
    np.divide(coeffs, std_errors, out=t_stats, where=std_errors > 0)
    p_values = [student_t_sf_two_tailed(float(t), df_resid) for t in t_stats]

    tss = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if tss == 0 else min(1.0, max(0.0, 1.0 - rss / tss))

    logger.debug(
        "Fitted polynomial",
        extra={"degree": degree, "n": n, "r_squared": r_squared, "x_kind": str(data.x_kind)},
    )
    return RegressionFit(
        degree=degree,
        coeffs=tuple(float(c) for c in coeffs),
        std_errors=tuple(float(s) for s in std_errors),
        t_stats=tuple(float(t) for t in t_stats),
        p_values=tuple(p_values),
        r_squared=r_squared,
        n=n,
        resid_var=resid_var,
        df_resid=df_resid,
        rss=rss,
        x_kind=data.x_kind,
        x_min=float(x.min()),
        x_max=float(x.max()),
        response_sd=response_sd,
        predictor_sd=float(np.std(x, ddof=1)),
    )


def predict(fit: RegressionFit, x: float) -> float:
    """Horner evaluation of the fitted polynomial."""
    if not math.isfinite(x):
        raise ValidationError(f"x must be finite, got {x}")
    value = 0.0
    for coefficient in reversed(fit.coeffs):
        value = value * x + coefficient
    return value


def is_extrapolation(fit: RegressionFit, x: float) -> bool:
    return not fit.covers(x)


def inflection_point(
    fit: RegressionFit, floor_factor: float = DEFAULT_INFLECTION_FLOOR
) -> InflectionPoint | None:
    """Inflection of a fitted cubic, or None when the cubic term is numerically null."""
    if fit.degree != 3:
        raise ValidationError(f"inflection_point needs a cubic fit, got degree {fit.degree}")
    if fit.response_sd == 0:
        return None
    b2, b3 = fit.coeffs[2], fit.coeffs[3]
    floor = floor_factor * fit.response_sd / fit.predictor_sd**3
    if abs(b3) <= floor:
        return None
    x_star = -b2 / (3.0 * b3)
    return InflectionPoint(x=x_star, within_range=fit.covers(x_star))


def fit_divergence(
    linear: RegressionFit,
    quadratic: RegressionFit,
    data: ScatterData,
    band: tuple[float, float] = (0.1, 0.9),
    points: int = 201,
) -> FitDivergence:
    """Largest linear/quadratic disagreement where most of the data lie."""
    low, high = (float(q) for q in np.quantile(data.x, band))
    grid = np.linspace(low, high, points)
    gaps = np.array([abs(predict(quadratic, g) - predict(linear, g)) for g in grid])
    index = int(np.argmax(gaps))
    largest = float(gaps[index])
    spread = quadratic.response_sd
    return FitDivergence(
        band_low=low,
        band_high=high,
        at_x=float(grid[index]),
        max_abs_difference=largest,
        relative_difference=largest / spread if spread > 0 else 0.0,
    )


def sample_curve(
    fit: RegressionFit, points: int = 200, extension: float = 0.0
) -> list[CurveSample]:
    """Evenly spaced curve samples over the observed range, optionally extended."""
    if points < 2:
        raise ValidationError("need at least two curve samples")
    if extension < 0:
        raise ValidationError("extension must be nonnegative")
    width = fit.x_max - fit.x_min
    grid = np.linspace(
        fit.x_min - extension * width, fit.x_max + extension * width, points
    )
    if extension == 0:
        grid[0], grid[-1] = fit.x_min, fit.x_max
    return [
        CurveSample(x=x, y=predict(fit, x), extrapolated=is_extrapolation(fit, x))
        for x in grid.tolist()
    ]
