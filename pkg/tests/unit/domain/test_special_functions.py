import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special, stats

from app.domain.exceptions import ValidationError
from app.domain.services.special_functions import (
    normal_cdf,
    normal_sf,
    regularized_incomplete_beta,
    rounds_down_to_alpha,
    student_t_sf,
    student_t_sf_two_tailed,
)


class TestNormal:
    @pytest.mark.parametrize("z", [-8.0, -3.0, -1.0, -0.25, 0.0, 0.5, 1.96, 4.0, 9.0])
    def test_cdf_matches_reference(self, z: float) -> None:
        assert normal_cdf(z) == pytest.approx(float(special.ndtr(z)), rel=1e-10, abs=1e-300)

    def test_sf_keeps_precision_in_far_tail(self) -> None:
        assert normal_sf(10.0) == pytest.approx(7.619853024160527e-24, rel=1e-10)

    def test_cdf_at_zero_is_half(self) -> None:
        assert normal_cdf(0.0) == 0.5

    @given(st.floats(min_value=-30, max_value=30))
    def test_cdf_and_sf_are_complementary(self, z: float) -> None:
        assert normal_cdf(z) + normal_sf(z) == pytest.approx(1.0, abs=1e-14)

    def test_rejects_non_finite(self) -> None:
        with pytest.raises(ValidationError):
            normal_cdf(math.nan)
        with pytest.raises(ValidationError):
            normal_sf(math.inf)


class TestIncompleteBeta:
    @pytest.mark.parametrize(
        "a,b,x",
        [
            (0.5, 0.5, 0.3),
            (2.0, 3.0, 0.7),
            (49.5, 0.5, 0.95),
            (1.0, 1.0, 0.42),
            (10.0, 0.5, 0.01),
            (250.0, 0.5, 0.99),
            (300.0, 120.0, 0.7),
            (0.5, 5e5, 2e-6),
        ],
    )
    def test_matches_reference(self, a: float, b: float, x: float) -> None:
        assert regularized_incomplete_beta(a, b, x) == pytest.approx(
            float(special.betainc(a, b, x)), rel=1e-10
        )

    def test_endpoints(self) -> None:
        assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
        assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0

    def test_rejects_bad_arguments(self) -> None:
        with pytest.raises(ValidationError):
            regularized_incomplete_beta(0.0, 1.0, 0.5)
        with pytest.raises(ValidationError):
            regularized_incomplete_beta(1.0, 1.0, 1.5)


class TestStudentT:
    @pytest.mark.parametrize("df", [1, 2, 5, 30, 85, 99, 1000])
    @pytest.mark.parametrize("t", [-3.0, -0.5, 0.3, 1.62, 2.32, 6.0])
    def test_one_tailed_matches_reference(self, t: float, df: int) -> None:
        assert student_t_sf(t, df) == pytest.approx(float(stats.t.sf(t, df)), rel=1e-9)

    def test_zero_statistic_is_half(self) -> None:
        assert student_t_sf(0.0, 10) == 0.5

    def test_reported_one_tailed_p_of_small_sample(self) -> None:
        assert student_t_sf(1.62, 99) == pytest.approx(0.0542, abs=5e-4)

    @settings(max_examples=50)
    @given(
        st.floats(min_value=-20, max_value=20, allow_nan=False),
        st.integers(min_value=1, max_value=500),
    )
    def test_symmetry(self, t: float, df: int) -> None:
        assert student_t_sf(t, df) + student_t_sf(-t, df) == pytest.approx(1.0, abs=1e-12)

    def test_two_tailed_is_twice_the_tail(self) -> None:
        assert student_t_sf_two_tailed(-2.0, 20) == pytest.approx(
            2 * float(stats.t.sf(2.0, 20)), rel=1e-10
        )
        assert student_t_sf_two_tailed(0.0, 20) == 1.0

    def test_rejects_bad_arguments(self) -> None:
        with pytest.raises(ValidationError):
            student_t_sf(math.inf, 10)
        with pytest.raises(ValidationError):
            student_t_sf(1.0, 0.5)

    @pytest.mark.parametrize("df", [1e5, 1e6])
    @pytest.mark.parametrize("t", [-2.32, 1.62, 4.0])
    def test_large_df_keeps_absolute_precision(self, t: float, df: float) -> None:
        assert student_t_sf(t, df) == pytest.approx(float(stats.t.sf(t, df)), abs=1e-11)

    def test_large_df_approaches_the_normal(self) -> None:
        assert student_t_sf(1.62, 1e6) == pytest.approx(normal_sf(1.62), abs=1e-6)
        assert student_t_sf(1.62, 1e6) > normal_sf(1.62)


class TestRoundsDownToAlpha:
    def test_just_above_alpha(self) -> None:
        assert rounds_down_to_alpha(0.0542, 0.05)

    def test_below_alpha_is_not_rounding(self) -> None:
        assert not rounds_down_to_alpha(0.049, 0.05)

    def test_clearly_above_alpha(self) -> None:
        assert not rounds_down_to_alpha(0.056, 0.05)
