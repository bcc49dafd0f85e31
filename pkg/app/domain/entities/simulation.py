"""Simulation entities: generator specifications and power results."""

import math
from dataclasses import dataclass, field
from enum import StrEnum

from app.domain.exceptions import ValidationError
from app.domain.value_objects import SummaryStats


class Shape(StrEnum):
    LINEAR = "linear"
    STEP = "step"
    LOGISTIC = "logistic"
    INVERTED_U = "inverted_u"


class PredictorKind(StrEnum):
    LOGNORMAL = "lognormal"
    UNIFORM = "uniform"
    GRID = "grid"
    FIXED = "fixed"


@dataclass(frozen=True)
class ShapeParams:
    """Parameters of the noiseless outcome curve.

    linear: intercept + slope * x
    step: low below location, high at or above it
    logistic: low + (high - low) / (1 + exp(-slope * (x - location)))
    inverted_u: high - curvature * (x - location) ** 2
    """

    intercept: float = 0.0
    slope: float = 1.0
    location: float = 2.9013
    low: float = 0.0
    high: float = 1.0
    curvature: float = 0.1


@dataclass(frozen=True)
class PredictorDistribution:
    """Predictor sampling scheme.

    The lognormal default is right-skewed with the given median and log-scale
    spread, redrawn until it falls inside [x_min, x_max].
    """

    kind: PredictorKind = PredictorKind.LOGNORMAL
    median: float = 2.5
    spread: float = 0.6
    x_min: float = 0.0
    x_max: float = 15.0
    values: tuple[float, ...] = ()


@dataclass(frozen=True)
class GeneratorSpec:
    shape: Shape
    params: ShapeParams = field(default_factory=ShapeParams)
    noise_sd: float = 0.0
    n: int = 200
    x_dist: PredictorDistribution = field(default_factory=PredictorDistribution)
    y_min: float = 0.0
    y_max: float = 6.0
    seed: int = 0
    label: str = ""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.noise_sd) and self.noise_sd >= 0):
            raise ValidationError("noise_sd must be finite and nonnegative")
        if self.n < 4:
            raise ValidationError("n must be at least 4")
        if not self.x_dist.x_max > 0:
            raise ValidationError("x_max must be positive")
        if self.x_dist.x_min >= self.x_dist.x_max:
            raise ValidationError("x_min must be below x_max")
        if self.x_dist.kind is PredictorKind.FIXED and len(self.x_dist.values) != self.n:
            raise ValidationError("fixed predictor values must number exactly n")
        if self.x_dist.kind is PredictorKind.LOGNORMAL and not (
            self.x_dist.median > 0 and self.x_dist.spread > 0
        ):
            raise ValidationError("lognormal median and spread must be positive")
        params = self.params
        numbers = (
            params.intercept,
            params.slope,
            params.location,
            params.low,
            params.high,
            params.curvature,
        )
        if not all(math.isfinite(value) for value in numbers):
            raise ValidationError("shape parameters must be finite")
        if self.shape is Shape.LOGISTIC and params.slope <= 0:
            raise ValidationError("logistic slope must be positive")
        if not self.y_min < self.y_max:
            raise ValidationError("y_min must be below y_max")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")

    @property
    def name(self) -> str:
        return self.label or self.shape.value


@dataclass(frozen=True)
class DichotomyExperiment:
    """Group-means t-test after classifying outcomes at ``threshold_y``."""

    threshold_y: float
    n_flourishing: int
    n_nonflourishing: int
    group_means: tuple[float, float]
    group_sds: tuple[float, float]
    pooled_sd: float
    t_stat: float
    p_one_tailed: float
    p_two_tailed: float

    @property
    def n(self) -> int:
        return self.n_flourishing + self.n_nonflourishing

    def as_summary(self) -> SummaryStats:
        return SummaryStats(
            n1=self.n_flourishing,
            n2=self.n_nonflourishing,
            mean1=self.group_means[0],
            mean2=self.group_means[1],
            t_stat=self.t_stat,
        )


@dataclass(frozen=True)
class CalibrationResult:
    """Linear generator tuned to a reference shape's expected group means."""

    spec: GeneratorSpec
    target_means: tuple[float, float]
    achieved_means: tuple[float, float]
    target_flourishing_share: float
    achieved_flourishing_share: float
    converged: bool


@dataclass(frozen=True)
class PowerRow:
    shape: Shape
    label: str
    replications: int
    dichotomized_t_rate: float
    quadratic_rate: float
    changepoint_rate: float
    degenerate_splits: int


@dataclass(frozen=True)
class PowerTable:
    rows: tuple[PowerRow, ...]
    replications: int
    alpha: float
    threshold_y: float
    master_seed: int
    permutations: int
    calibration: CalibrationResult | None = None
    notes: tuple[str, ...] = ()

    def row(self, label: str) -> PowerRow:
        for item in self.rows:
            if item.label == label:
                return item
        raise KeyError(label)
