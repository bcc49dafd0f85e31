"""Scatter data value object."""

from collections.abc import Iterable, Sequence
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.domain.exceptions import ValidationError


class XKind(StrEnum):
    """Parameterization of the predictor column."""

    RATIO = "ratio"
    FRACTION = "fraction"
    RAW = "raw"


class ScatterData:
    """Ordered (x, y) observations.

    Arrays are stored read-only so a ScatterData can be shared between fits
    and threads.
    """

    def __init__(
        self,
        points: Iterable[tuple[float, float]],
        x_kind: XKind = XKind.RAW,
    ) -> None:
        pairs = list(points)
        if pairs:
            xy = np.asarray(pairs, dtype=float)
            if xy.ndim != 2 or xy.shape[1] != 2:
                raise ValidationError("points must be (x, y) pairs")
            x, y = xy[:, 0], xy[:, 1]
        else:
            x, y = np.empty(0), np.empty(0)
        self._x, self._y = self._validate(x, y, XKind(x_kind))
        self.x_kind = XKind(x_kind)

    @classmethod
    def from_arrays(
        cls, x: ArrayLike, y: ArrayLike, x_kind: XKind = XKind.RAW
    ) -> "ScatterData":
        xs = np.asarray(x, dtype=float).ravel()
        ys = np.asarray(y, dtype=float).ravel()
        if xs.shape != ys.shape:
            raise ValidationError(
                f"x and y lengths differ ({xs.size} vs {ys.size})"
            )
        return cls(zip(xs.tolist(), ys.tolist(), strict=True), x_kind)

    @staticmethod
    def _validate(
        x: NDArray[np.float64], y: NDArray[np.float64], x_kind: XKind
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValidationError("all coordinates must be finite")
        if x_kind is XKind.FRACTION and np.any((x < 0) | (x > 1)):
            raise ValidationError("fraction predictors must lie in [0, 1]")
        if x_kind is XKind.RATIO and np.any(x < 0):
            raise ValidationError("ratio predictors must be nonnegative")
        x = x.copy()
        y = y.copy()
        x.flags.writeable = False
        y.flags.writeable = False
        return x, y

    @property
    def x(self) -> NDArray[np.float64]:
        return self._x

    @property
    def y(self) -> NDArray[np.float64]:
        return self._y

    @property
    def n(self) -> int:
        return int(self._x.size)

    @property
    def points(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self._x.tolist(), self._y.tolist(), strict=True))

    def with_x(self, x: Sequence[float] | NDArray[np.float64], x_kind: XKind) -> "ScatterData":
        """Same outcomes against a re-parameterized predictor."""
        return ScatterData.from_arrays(x, self._y, x_kind)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScatterData):
            return False
        return (
            self.x_kind == other.x_kind
            and np.array_equal(self._x, other._x)
            and np.array_equal(self._y, other._y)
        )

    def __hash__(self) -> int:
        return hash((self.x_kind, self._x.tobytes(), self._y.tobytes()))

    def __repr__(self) -> str:
        return f"ScatterData(n={self.n}, x_kind='{self.x_kind}')"
