"""Regression result entities."""

from dataclasses import dataclass

from app.domain.exceptions import ValidationError
from app.domain.value_objects import XKind


@dataclass(frozen=True)
class RegressionFit:
    """Least-squares polynomial fit in the raw predictor basis.

    ``coeffs[k]`` multiplies ``x**k``. The predictor range and the response
    and predictor spreads are recorded at fit time so that later steps can
    flag extrapolation and scale numerical floors.
    """

    degree: int
    coeffs: tuple[float, ...]
    std_errors: tuple[float, ...]
    t_stats: tuple[float, ...]
    p_values: tuple[float, ...]
    r_squared: float
    n: int
    resid_var: float
    df_resid: int
    rss: float
    x_kind: XKind
    x_min: float
    x_max: float
    response_sd: float
    predictor_sd: float

    def __post_init__(self) -> None:
        width = self.degree + 1
        for name in ("coeffs", "std_errors", "t_stats", "p_values"):
            if len(getattr(self, name)) != width:
                raise ValidationError(f"{name} must hold {width} values")
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValidationError("r_squared must lie in [0, 1]")

    def covers(self, x: float) -> bool:
        """True when x lies inside the predictor range seen at fit time."""
        return self.x_min <= x <= self.x_max

    def coefficient(self, power: int) -> float:
        return self.coeffs[power]


@dataclass(frozen=True)
class InflectionPoint:
    x: float
    within_range: bool


@dataclass(frozen=True)
class FitDivergence:
    """Largest gap between two fitted curves over a central predictor band."""

    band_low: float
    band_high: float
    at_x: float
    max_abs_difference: float
    relative_difference: float


@dataclass(frozen=True)
class CurveSample:
    x: float
    y: float
    extrapolated: bool
