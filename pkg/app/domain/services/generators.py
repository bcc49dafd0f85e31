"""Synthetic scatter data for the four outcome shapes."""

import numpy as np
from numpy.typing import NDArray

from app.domain.entities.simulation import (
    GeneratorSpec,
    PredictorDistribution,
    PredictorKind,
    Shape,
    ShapeParams,
)
from app.domain.exceptions import ValidationError
from app.domain.value_objects import ScatterData, XKind

MAX_REDRAWS = 1000


def shape_curve(shape: Shape, params: ShapeParams, x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Noiseless outcome curve evaluated at ``x``."""
    match shape:
        case Shape.LINEAR:
            return params.intercept + params.slope * x
        case Shape.STEP:
            return np.where(x < params.location, params.low, params.high)
        case Shape.LOGISTIC:
            z = np.clip(-params.slope * (x - params.location), -700.0, 700.0)
            return params.low + (params.high - params.low) / (1.0 + np.exp(z))
        case Shape.INVERTED_U:
            return params.high - params.curvature * (x - params.location) ** 2
    raise ValidationError(f"unknown shape {shape!r}")


def draw_predictors(
    dist: PredictorDistribution, n: int, rng: np.random.Generator
) -> NDArray[np.float64]:
    match dist.kind:
        case PredictorKind.FIXED:
            return np.asarray(dist.values, dtype=float)
        case PredictorKind.GRID:
            return np.linspace(dist.x_min, dist.x_max, n)
        case PredictorKind.UNIFORM:
            return rng.uniform(dist.x_min, dist.x_max, n)
        case PredictorKind.LOGNORMAL:
            return _truncated_lognormal(dist, n, rng)
    raise ValidationError(f"unknown predictor kind {dist.kind!r}")


def _truncated_lognormal(
    dist: PredictorDistribution, n: int, rng: np.random.Generator
) -> NDArray[np.float64]:
    mean = float(np.log(dist.median))
    values = rng.lognormal(mean, dist.spread, n)
    for _ in range(MAX_REDRAWS):
        outside = (values < dist.x_min) | (values > dist.x_max)
        count = int(np.count_nonzero(outside))
        if count == 0:
            return values
        values[outside] = rng.lognormal(mean, dist.spread, count)
    raise ValidationError(
        "predictor bounds exclude almost all of the lognormal distribution"
    )


def generate(spec: GeneratorSpec) -> ScatterData:
    """Draw a dataset; identical specs give bit-identical data."""
    rng = np.random.default_rng(spec.seed)
    x = draw_predictors(spec.x_dist, spec.n, rng)
    y = shape_curve(spec.shape, spec.params, x)
    if spec.noise_sd > 0:
        y = y + rng.normal(0.0, spec.noise_sd, spec.n)
    y = np.clip(y, spec.y_min, spec.y_max)
    return ScatterData.from_arrays(x, y, XKind.RATIO if spec.x_dist.x_min >= 0 else XKind.RAW)
