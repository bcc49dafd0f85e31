"""Layered configuration: CLI flags > config file > environment > defaults."""

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.application.exceptions import ConfigurationError
from app.domain.entities import Shape, ThresholdMode

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
# run-local knobs that never change a report
VOLATILE_FIELDS: dict[str, Any] = {"log_level": True, "simulation": {"workers"}}


class SampleEntry(BaseModel):
    label: str = ""
    n1: int = Field(..., ge=2)
    n2: int = Field(..., ge=2)
    mean1: float = Field(..., ge=0)
    mean2: float = Field(..., ge=0)
    t_stat: float


class ClaimsSettings(BaseModel):
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


class ForensicsSettings(BaseModel):
    impurity_allowance: float = Field(default=0.10, ge=0, le=1)
    allowance_grid: tuple[float, ...] = (0.05, 0.10, 0.20)
    sd_ratio_grid: tuple[float, ...] = (0.5, 1.0, 1.5, 2.0)
    samples: list[SampleEntry] = Field(default_factory=list)

    @field_validator("sd_ratio_grid")
    @classmethod
    def validate_sd_ratio_grid(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if any(not ratio > 0 for ratio in v):
            raise ValueError("sd_ratio_grid values must be positive")
        return v


class RegressionSettings(BaseModel):
    curve_points: int = Field(default=200, ge=2)
    curve_extension: float = Field(default=0.0, ge=0)
    divergence_band: tuple[float, float] = (0.1, 0.9)


class SimulationSettings(BaseModel):
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
    workers: int = Field(default=1, ge=1)
    shapes: tuple[Shape, ...] = (
        Shape.LINEAR,
        Shape.STEP,
        Shape.LOGISTIC,
        Shape.INVERTED_U,
    )
    calibrate: bool = True


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="POSITIVITY_",
        env_nested_delimiter="__",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: str = Field(default="INFO")
    seed: int = Field(default=12345, ge=0, lt=2**64)
    alpha: float = Field(default=0.05, gt=0, lt=1)
    threshold: float = Field(default=2.9013, description="Critical positivity ratio")
    upper_threshold: float = Field(default=11.6346, description="Upper critical ratio")
    x_var: Literal["ratio", "fraction"] = "ratio"

    claims: ClaimsSettings = Field(default_factory=ClaimsSettings)
    forensics: ForensicsSettings = Field(default_factory=ForensicsSettings)
    regression: RegressionSettings = Field(default_factory=RegressionSettings)
    simulation: SimulationSettings = Field(default_factory=SimulationSettings)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return level

    def report_parameters(self) -> dict[str, Any]:
        """Effective configuration as embedded in reports."""
        return self.model_dump(mode="json", exclude=VOLATILE_FIELDS)


def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def read_config_file(path: Path) -> dict[str, Any]:
    """Settings from a JSON file: a bare settings object or an earlier report."""
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigurationError(f"cannot read config file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"config file {path} is not valid JSON: {e}") from e
    if not isinstance(payload, dict):
        raise ConfigurationError(f"config file {path} must hold a JSON object")
    if "schema_version" in payload and "parameters" in payload:
        parameters = payload["parameters"]
        if not isinstance(parameters, dict):
            raise ConfigurationError(f"report {path} has malformed parameters")
        return parameters
    return payload


def load_settings(
    config_path: Path | None = None, overrides: dict[str, Any] | None = None
) -> Settings:
    """Merge config file and CLI overrides over environment and defaults.

    Values passed to the constructor outrank the environment, so the file and
    flags are merged first and handed over together.
    """
    values = read_config_file(config_path) if config_path is not None else {}
    values = deep_merge(values, overrides or {})
    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigurationError(f"invalid configuration: {e}") from e
