"""Request Data Transfer Objects, one per use case."""

from pathlib import Path

from pydantic import BaseModel, Field

from app.domain.entities import Shape, ThresholdMode
from app.domain.value_objects import XKind

from .report_dtos import SummaryStatsDTO


class AuditRequest(BaseModel):
    """Summary statistics come from ``input_path`` or ``samples``, not both."""

    input_path: Path | None = None
    samples: list[SummaryStatsDTO] = Field(default_factory=list)
    threshold: float = 2.9013
    upper_threshold: float = 11.6346
    alpha: float = Field(default=0.05, gt=0, lt=1)
    impurity_allowance: float = Field(default=0.10, ge=0, le=1)
    allowance_grid: tuple[float, ...] = (0.05, 0.10, 0.20)
    sd_ratio_grid: tuple[float, ...] = (0.5, 1.0, 1.5, 2.0)


class FitRequest(BaseModel):
    input_path: Path
    x_var: XKind = XKind.RATIO
    curve_points: int = Field(default=200, ge=2)
    curve_extension: float = Field(default=0.0, ge=0)
    divergence_band: tuple[float, float] = (0.1, 0.9)


class ClaimsRequest(BaseModel):
    input_path: Path
    x_var: XKind = XKind.RATIO
    seed: int = Field(default=12345, ge=0)
    alpha: float = Field(default=0.05, gt=0, lt=1)
    threshold: float = 2.9013
    upper_threshold: float | None = 11.6346
    threshold_tolerance: float = Field(default=0.1, ge=0)
    window_center: float = 3.0
    window_halfwidth: float = Field(default=1.0, gt=0)
    threshold_mode: ThresholdMode = ThresholdMode.EXACT
    trim: float = Field(default=0.1, ge=0, lt=0.5)
    permutations: int = Field(default=999, ge=999)
    steepness_factor: float = Field(default=4.0, gt=0)
    smoother_span: float = Field(default=0.3, gt=0, le=1)
    jump_window: int = Field(default=5, ge=3)
    min_jump_fraction: float = Field(default=0.5, ge=0)
    inflection_floor: float = Field(default=1e-3, ge=0)


class SimulateRequest(BaseModel):
    seed: int = Field(default=12345, ge=0)
    alpha: float = Field(default=0.05, gt=0, lt=1)
    location: float = Field(default=2.9013, description="Step/logistic/vertex location")
    replications: int = Field(default=1000, ge=100)
    n: int = Field(default=200, ge=20)
    noise_sd: float = Field(default=0.75, ge=0)
    threshold_y: float = 3.0
    x_median: float = Field(default=2.5, gt=0)
    x_spread: float = Field(default=0.6, gt=0)
    x_max: float = Field(default=15.0, gt=0)
    y_min: float = 0.0
    y_max: float = 20.0
    step_low: float = 2.25
    step_high: float = 3.75
    logistic_slope: float = Field(default=2.0, gt=0)
    u_curvature: float = 0.1
    permutations: int = Field(default=999, ge=999)
    trim: float = Field(default=0.1, ge=0, lt=0.5)
    workers: int = Field(default=1, ge=1)
    shapes: tuple[Shape, ...] = (Shape.LINEAR, Shape.STEP, Shape.LOGISTIC, Shape.INVERTED_U)
    calibrate: bool = True


class TransformRequest(BaseModel):
    input_path: Path
    output_path: Path | None = None
