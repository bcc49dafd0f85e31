"""Segmented-line changepoint scan with residual-permutation calibration.

Every candidate breakpoint c splits the sorted data into ``x < c`` and
``x >= c``; each side gets its own least-squares line. Segment residual sums
of squares for all candidates come from cumulative sums, so a whole block of
permuted outcome vectors is scanned at once.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from app.domain.entities.claims import ChangepointScan
from app.domain.exceptions import SampleSizeError, ValidationError
from app.domain.services.regression import RESIDUAL_SD_FLOOR
from app.domain.services.special_functions import student_t_sf_two_tailed
from app.domain.value_objects import ScatterData

logger = logging.getLogger(__name__)

MIN_POINTS = 20
MIN_DISTINCT = 10
MIN_SEGMENT = 3
MIN_PERMUTATIONS = 999
PERMUTATION_BLOCK = 128
# share of the total sum of squares below which a fit counts as exact
EXACT_FIT_SHARE = 1e-12


@dataclass(frozen=True)
class LocalJump:
    """Gap between one-sided local lines extrapolated to a breakpoint."""

    at_x: float
    estimate: float
    std_error: float
    t_stat: float
    p_value: float
    df: int


@dataclass(frozen=True)
class _Sums:
    count: NDArray[np.float64]
    sx: NDArray[np.float64]
    sxx: NDArray[np.float64]
    sy: NDArray[np.float64]
    sxy: NDArray[np.float64]
    syy: NDArray[np.float64]


def _segment_rss(sums: _Sums) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Residual sum of squares of a line on each segment, and a validity mask."""
    m = sums.count
    sxx_c = sums.sxx - sums.sx**2 / m
    syy_c = sums.syy - sums.sy**2 / m
    sxy_c = sums.sxy - sums.sx * sums.sy / m
    valid = sxx_c > 1e-12 * np.max(np.abs(sums.sxx))
    safe = np.where(valid, sxx_c, 1.0)
    rss = np.where(valid, syy_c - sxy_c**2 / safe, np.inf)
    return np.clip(rss, 0.0, None), valid


def _split_rss(
    x: NDArray[np.float64], rows: NDArray[np.float64], splits: NDArray[np.intp]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Segmented RSS per (row, split) and single-line RSS per row."""
    n = x.size
    ys = rows - rows.mean(axis=1, keepdims=True)
    zero = np.zeros((rows.shape[0], 1))
    cx = np.concatenate(([0.0], np.cumsum(x)))
    cxx = np.concatenate(([0.0], np.cumsum(x * x)))
    cy = np.concatenate((zero, np.cumsum(ys, axis=1)), axis=1)
    cxy = np.concatenate((zero, np.cumsum(ys * x, axis=1)), axis=1)
    cyy = np.concatenate((zero, np.cumsum(ys * ys, axis=1)), axis=1)

    k = splits.astype(float)
    left = _Sums(
        count=k,
        sx=cx[splits],
        sxx=cxx[splits],
        sy=cy[:, splits],
        sxy=cxy[:, splits],
        syy=cyy[:, splits],
    )
    right = _Sums(
        count=n - k,
        sx=cx[n] - cx[splits],
        sxx=cxx[n] - cxx[splits],
        sy=cy[:, [n]] - cy[:, splits],
        sxy=cxy[:, [n]] - cxy[:, splits],
        syy=cyy[:, [n]] - cyy[:, splits],
    )
    rss_left, _ = _segment_rss(left)
    rss_right, _ = _segment_rss(right)
    whole = _Sums(
        count=np.array([float(n)]),
        sx=cx[[n]],
        sxx=cxx[[n]],
        sy=cy[:, [n]],
        sxy=cxy[:, [n]],
        syy=cyy[:, [n]],
    )
    rss_single, _ = _segment_rss(whole)
    return rss_left + rss_right, rss_single[:, 0]


def _improvement(
    rss_single: NDArray[np.float64], rss_segmented: NDArray[np.float64], n: int, floor: float
) -> NDArray[np.float64]:
    gain = np.clip(rss_single - rss_segmented, 0.0, None)
    return (gain / 2.0) / (np.maximum(rss_segmented, floor) / (n - 4))


def _line(x: NDArray[np.float64], y: NDArray[np.float64]) -> tuple[float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    return float(intercept), float(slope)


def candidate_breakpoints(
    x_sorted: NDArray[np.float64], trim: float = 0.1
) -> tuple[NDArray[np.float64], NDArray[np.intp]]:
    """Distinct predictor values inside the trimmed quantile band that leave
    at least MIN_SEGMENT points with two distinct values on each side."""
    if not 0.0 <= trim < 0.5:
        raise ValidationError(f"trim must lie in [0, 0.5), got {trim}")
    low, high = np.quantile(x_sorted, [trim, 1.0 - trim])
    values = np.unique(x_sorted[(x_sorted >= low) & (x_sorted <= high)])
    splits = np.searchsorted(x_sorted, values, side="left")
    n = x_sorted.size
    keep = []
    for value, k in zip(values, splits, strict=True):
        if k < MIN_SEGMENT or n - k < MIN_SEGMENT:
            continue
        if x_sorted[0] == x_sorted[k - 1] or x_sorted[k] == x_sorted[-1]:
            continue
        keep.append((value, k))
    if not keep:
        raise SampleSizeError("no admissible breakpoint inside the trimmed band")
    chosen = np.array([v for v, _ in keep])
    return chosen, np.array([k for _, k in keep], dtype=np.intp)


def scan_changepoint(
    data: ScatterData,
    trim: float = 0.1,
    permutations: int = MIN_PERMUTATIONS,
    seed: int = 0,
) -> ChangepointScan:
    """Grid search for the best single breakpoint with a permutation p-value.

    improvement_stat = ((RSS0 - RSS1) / 2) / (RSS1 / (n - 4)); the null
    distribution permutes residuals of the single-line fit.
    """
    n = data.n
    if n < MIN_POINTS:
        raise SampleSizeError(f"changepoint scan needs at least {MIN_POINTS} points, got {n}")
    if np.unique(data.x).size < MIN_DISTINCT:
        raise SampleSizeError(
            f"changepoint scan needs at least {MIN_DISTINCT} distinct predictor values"
        )
    if permutations < MIN_PERMUTATIONS:
        raise ValidationError(f"use at least {MIN_PERMUTATIONS} permutations")

    order = np.argsort(data.x, kind="stable")
    x = data.x[order]
    y = data.y[order]
    candidates, splits = candidate_breakpoints(x, trim)
    xc = x - x.mean()

    response_sd = float(np.std(y, ddof=1))
    tss = response_sd**2 * (n - 1)
    floor = max((RESIDUAL_SD_FLOOR * response_sd) ** 2 * n, EXACT_FIT_SHARE * tss)

    rss_seg, rss_single = _split_rss(xc, y[np.newaxis, :], splits)
    best = int(np.argmin(rss_seg[0]))
    rss1 = float(rss_seg[0, best])
    rss0 = float(rss_single[0])
    best_x = float(candidates[best])
    left_line = _line(x[: splits[best]], y[: splits[best]])
    right_line = _line(x[splits[best] :], y[splits[best] :])

    if rss0 <= floor:
        # a single line already fits exactly; nothing to improve on
        logger.debug("Single line fits exactly; skipping permutations", extra={"n": n})
        return ChangepointScan(
            candidate_x=tuple(float(c) for c in candidates),
            best_x=best_x,
            improvement_stat=0.0,
            p_value=1.0,
            rss_single=rss0,
            rss_segmented=rss1,
            permutations=permutations,
            left_line=left_line,
            right_line=right_line,
            n=n,
        )

    observed = float(_improvement(np.array([rss0]), np.array([rss1]), n, floor)[0])

    slope, intercept = np.polyfit(x, y, 1)
    fitted = intercept + slope * x
    residuals = y - fitted
    rng = np.random.default_rng(seed)
    exceed = 0
    done = 0
    while done < permutations:
        size = min(PERMUTATION_BLOCK, permutations - done)
        rows = fitted + rng.permuted(np.tile(residuals, (size, 1)), axis=1)
        seg, single = _split_rss(xc, rows, splits)
        stats = _improvement(single, seg.min(axis=1), n, floor)
        exceed += int(np.count_nonzero(stats >= observed * (1.0 - 1e-12)))
        done += size
    p_value = (1 + exceed) / (permutations + 1)

    logger.debug(
        "Changepoint scan finished",
        extra={"n": n, "best_x": best_x, "stat": observed, "p_value": p_value},
    )
    return ChangepointScan(
        candidate_x=tuple(float(c) for c in candidates),
        best_x=best_x,
        improvement_stat=observed,
        p_value=p_value,
        rss_single=rss0,
        rss_segmented=rss1,
        permutations=permutations,
        left_line=left_line,
        right_line=right_line,
        n=n,
    )


def local_jump(data: ScatterData, at_x: float, window: int = 5) -> LocalJump:
    """Jump at ``at_x`` between lines fitted to the nearest points on each side.

    Smooth curves sampled densely give jumps that shrink with the window;
    a genuine discontinuity keeps its full height.
    """
    if window < MIN_SEGMENT:
        raise ValidationError(f"window must be at least {MIN_SEGMENT}")
    order = np.argsort(data.x, kind="stable")
    x = data.x[order]
    y = data.y[order]
    k = int(np.searchsorted(x, at_x, side="left"))
    left = slice(max(0, k - window), k)
    right = slice(k, min(x.size, k + window))
    xl, yl, xr, yr = x[left], y[left], x[right], y[right]
    if xl.size < MIN_SEGMENT or xr.size < MIN_SEGMENT:
        raise SampleSizeError("too few points on one side of the breakpoint")
    if np.unique(xl).size < 2 or np.unique(xr).size < 2:
        raise SampleSizeError("one side of the breakpoint has a single predictor value")

    def side(xs: NDArray[np.float64], ys: NDArray[np.float64]) -> tuple[float, float, float]:
        intercept, slope = _line(xs, ys)
        resid = ys - (intercept + slope * xs)
        lever = 1.0 / xs.size + (at_x - xs.mean()) ** 2 / float(np.sum((xs - xs.mean()) ** 2))
        return intercept + slope * at_x, float(resid @ resid), lever

    left_value, left_rss, left_lever = side(xl, yl)
    right_value, right_rss, right_lever = side(xr, yr)
    df = xl.size + xr.size - 4
    response_sd = float(np.std(y, ddof=1))
    sigma2 = (left_rss + right_rss) / df if df > 0 else 0.0
    sigma2 = max(sigma2, (RESIDUAL_SD_FLOOR * response_sd) ** 2)
    estimate = right_value - left_value
    std_error = math.sqrt(sigma2 * (left_lever + right_lever))
    if std_error == 0:
        t_stat = 0.0
        p_value = 1.0
    else:
        t_stat = estimate / std_error
        p_value = student_t_sf_two_tailed(t_stat, max(df, 1))
    return LocalJump(
        at_x=at_x,
        estimate=estimate,
        std_error=std_error,
        t_stat=t_stat,
        p_value=p_value,
        df=df,
    )
