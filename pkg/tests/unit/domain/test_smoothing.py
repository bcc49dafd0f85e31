import math

import numpy as np
import pytest

from app.domain.exceptions import SampleSizeError, ValidationError
from app.domain.services.smoothing import local_linear_slopes, steepness
from app.domain.value_objects import ScatterData


class TestLocalLinearSlopes:
    def test_line_has_constant_slope(self) -> None:
        x = np.linspace(0, 5, 50)
        grid, slopes = local_linear_slopes(ScatterData.from_arrays(x, 1 + 0.7 * x))

        assert grid.size == 50
        assert np.allclose(slopes, 0.7)

    def test_rejects_bad_span(self) -> None:
        data = ScatterData.from_arrays(np.arange(10.0), np.arange(10.0))
        with pytest.raises(ValidationError):
            local_linear_slopes(data, 0.0)

    def test_too_few_points(self) -> None:
        data = ScatterData.from_arrays([1.0, 1.0, 2.0, 2.0], [0.0, 1.0, 0.0, 1.0])
        with pytest.raises(SampleSizeError):
            local_linear_slopes(data, 0.5)


class TestSteepness:
    def test_line_ratio_is_one(self) -> None:
        x = np.linspace(0, 5, 60)
        shape = steepness(ScatterData.from_arrays(x, 2 - 0.3 * x))

        assert shape.ratio == pytest.approx(1.0)

    def test_step_is_infinitely_steep_at_the_jump(self) -> None:
        x = np.linspace(0, 6, 200)
        shape = steepness(ScatterData.from_arrays(x, np.where(x < 2.9013, 1.0, 3.0)))

        assert math.isinf(shape.ratio)
        assert shape.location == pytest.approx(2.9013, abs=0.1)

    def test_flat_curve_ratio_is_zero(self) -> None:
        x = np.linspace(0, 6, 40)
        assert steepness(ScatterData.from_arrays(x, np.full(40, 2.0))).ratio == 0.0

    def test_logistic_is_steepest_at_its_centre(self) -> None:
        x = np.linspace(0, 6, 200)
        y = 1 + 3 / (1 + np.exp(-4 * (x - 3)))
        shape = steepness(ScatterData.from_arrays(x, y))

        assert shape.location == pytest.approx(3.0, abs=0.05)
        assert shape.ratio > 1.0
