import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats as scipy_stats

from app.domain.exceptions import (
    DegenerateStatisticsError,
    InconsistentSummaryError,
    ValidationError,
)
from app.domain.services.two_sample import (
    pooled_sd,
    pooled_sd_from_t,
    support_lower_bound,
    tail_fraction_above,
    two_sample_t,
)
from app.domain.value_objects import SummaryStats


class TestPooledT:
    def test_matches_equal_variance_t_test(self) -> None:
        rng = np.random.default_rng(7)
        a = rng.normal(3.0, 1.2, 25)
        b = rng.normal(2.4, 1.2, 40)
        s = pooled_sd(float(np.var(a, ddof=1)), float(np.var(b, ddof=1)), a.size, b.size)
        stats = SummaryStats(
            a.size, b.size, float(a.mean()), float(b.mean()), t_stat=1.0
        )
        expected = scipy_stats.ttest_ind(a, b, equal_var=True).statistic
        assert two_sample_t(stats, s) == pytest.approx(float(expected), rel=1e-12)

    def test_rejects_nonpositive_sd(self) -> None:
        stats = SummaryStats(10, 10, 3.0, 2.0, 1.0)
        with pytest.raises(ValidationError):
            two_sample_t(stats, 0.0)


class TestPooledSdFromT:
    def test_first_published_sample(self) -> None:
        stats = SummaryStats(36, 51, 3.2, 2.3, 2.32)
        assert pooled_sd_from_t(stats) == pytest.approx(1.78, abs=0.01)

    def test_second_published_sample(self) -> None:
        stats = SummaryStats(9, 92, 3.4, 2.1, 1.62)
        assert pooled_sd_from_t(stats) == pytest.approx(2.30, abs=0.01)

    @given(
        st.integers(min_value=2, max_value=500),
        st.integers(min_value=2, max_value=500),
        st.floats(min_value=0.0, max_value=20.0),
        st.floats(min_value=0.01, max_value=10.0),
        st.floats(min_value=0.05, max_value=10.0),
    )
    def test_inversion_recovers_the_statistic(
        self, n1: int, n2: int, mean2: float, gap: float, s: float
    ) -> None:
        forward = SummaryStats(n1, n2, mean2 + gap, mean2, t_stat=1.0)
        t = two_sample_t(forward, s)
        implied = pooled_sd_from_t(SummaryStats(n1, n2, mean2 + gap, mean2, t))
        assert implied == pytest.approx(s, rel=1e-10)

    def test_zero_t_is_degenerate(self) -> None:
        with pytest.raises(DegenerateStatisticsError):
            pooled_sd_from_t(SummaryStats(10, 10, 3.0, 2.0, 0.0))

    def test_sign_mismatch_is_inconsistent(self) -> None:
        with pytest.raises(InconsistentSummaryError):
            pooled_sd_from_t(SummaryStats(10, 10, 3.0, 2.0, -1.5))

    def test_equal_means_with_nonzero_t_are_inconsistent(self) -> None:
        with pytest.raises(InconsistentSummaryError):
            pooled_sd_from_t(SummaryStats(10, 10, 2.0, 2.0, 1.5))


class TestSupportBound:
    def test_first_published_sample(self) -> None:
        assert support_lower_bound(2.3, 1.782) == pytest.approx(3.68, abs=0.01)

    def test_two_point_distribution_attains_the_bound(self) -> None:
        # mass q at M and 1 - q at 0
        m, q = 5.0, 0.3
        mu = q * m
        sigma = math.sqrt(q * (1 - q)) * m
        assert support_lower_bound(mu, sigma) == pytest.approx(m, rel=1e-12)

    def test_rejects_nonpositive_mean(self) -> None:
        with pytest.raises(ValidationError):
            support_lower_bound(0.0, 1.0)


class TestTailFraction:
    def test_first_published_sample(self) -> None:
        tail = tail_fraction_above(2.3, 1.782, 2.9013)
        assert 0.355 <= tail.fraction_above <= 0.375
        assert tail.fraction_below == pytest.approx(1 - tail.fraction_above)

    def test_threshold_at_mean_is_half(self) -> None:
        assert tail_fraction_above(3.0, 1.0, 3.0).fraction_above == 0.5

    @given(st.floats(min_value=-5, max_value=5), st.floats(min_value=0.1, max_value=5))
    def test_monotone_in_threshold(self, mu: float, sigma: float) -> None:
        lower = tail_fraction_above(mu, sigma, mu - 0.5).fraction_above
        upper = tail_fraction_above(mu, sigma, mu + 0.5).fraction_above
        assert lower >= upper

    def test_rejects_zero_sigma(self) -> None:
        with pytest.raises(ValidationError):
            tail_fraction_above(2.0, 0.0, 2.9013)
