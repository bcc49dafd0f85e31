"""Local linear (tricube-weighted) smoother used for the steepness heuristic."""

import math
from dataclasses import dataclass

import numpy as np

from app.domain.exceptions import SampleSizeError, ValidationError
from app.domain.value_objects import ScatterData

MIN_NEIGHBOURS = 3


@dataclass(frozen=True)
class Steepness:
    """Where the smoothed curve is steepest, relative to its typical slope."""

    grid: tuple[float, ...]
    slopes: tuple[float, ...]
    location: float
    max_abs_slope: float
    median_abs_slope: float
    ratio: float


def local_linear_slopes(
    data: ScatterData, span: float = 0.3
) -> tuple[np.ndarray, np.ndarray]:
    """Slopes of tricube-weighted local lines at each distinct predictor value.

    Each local fit uses the ``ceil(span * n)`` nearest points.
    """
    if not 0.0 < span <= 1.0:
        raise ValidationError(f"span must lie in (0, 1], got {span}")
    x, y = data.x, data.y
    k = max(MIN_NEIGHBOURS, math.ceil(span * data.n))
    if data.n < k or np.unique(x).size < MIN_NEIGHBOURS:
        raise SampleSizeError("too few points for the local smoother")

    grid = np.unique(x)
    slopes = np.zeros_like(grid)
    for i, x0 in enumerate(grid):
        distance = np.abs(x - x0)
        nearest = np.argpartition(distance, k - 1)[:k]
        bandwidth = float(distance[nearest].max()) * (1.0 + 1e-9)
        if bandwidth == 0:
            continue
        w = (1.0 - (distance[nearest] / bandwidth) ** 3) ** 3
        xs, ys = x[nearest], y[nearest]
        total = w.sum()
        x_bar = (w @ xs) / total
        y_bar = (w @ ys) / total
        sxx = w @ (xs - x_bar) ** 2
        if sxx <= 0:
            continue
        slopes[i] = (w @ ((xs - x_bar) * (ys - y_bar))) / sxx
    return grid, slopes


def steepness(data: ScatterData, span: float = 0.3) -> Steepness:
    """Maximum over median absolute smoothed slope.

    The ratio is infinite when the curve is flat almost everywhere but not
    everywhere, and zero when it is flat everywhere.
    """
    grid, slopes = local_linear_slopes(data, span)
    magnitude = np.abs(slopes)
    index = int(np.argmax(magnitude))
    largest = float(magnitude[index])
    median = float(np.median(magnitude))

    x_range = float(np.ptp(data.x))
    y_range = float(np.ptp(data.y))
    flat = 1e-9 * y_range / x_range if x_range > 0 else 0.0
    if median > flat:
        ratio = largest / median
    elif largest > flat:
        ratio = math.inf
    else:
        ratio = 0.0
    return Steepness(
        grid=tuple(float(g) for g in grid),
        slopes=tuple(float(s) for s in slopes),
        location=float(grid[index]),
        max_abs_slope=largest,
        median_abs_slope=median,
        ratio=ratio,
    )
