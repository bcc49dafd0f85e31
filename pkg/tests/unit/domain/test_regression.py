import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as scipy_stats

from app.domain.exceptions import (
    SampleSizeError,
    SingularFitError,
    UndefinedFractionError,
    ValidationError,
)
from app.domain.services.regression import (
    fit_divergence,
    fit_polynomial,
    fraction_from_counts,
    fraction_to_ratio,
    inflection_point,
    is_extrapolation,
    predict,
    ratio_to_fraction,
    sample_curve,
)
from app.domain.value_objects import ScatterData, XKind


def _quadratic(x: np.ndarray, b0: float, b1: float, b2: float) -> ScatterData:
    return ScatterData.from_arrays(x, b0 + b1 * x + b2 * x**2, XKind.RATIO)


class TestReparameterization:
    @pytest.mark.parametrize("r", [0.1, 1.0, 2.9013, 3.0, 11.6346, 100.0])
    def test_round_trip(self, r: float) -> None:
        assert fraction_to_ratio(ratio_to_fraction(r)) == pytest.approx(r, rel=1e-12)

    def test_known_values(self) -> None:
        assert ratio_to_fraction(3.0) == 0.75
        assert ratio_to_fraction(0.0) == 0.0
        assert fraction_to_ratio(0.5) == 1.0

    def test_fraction_one_has_no_ratio(self) -> None:
        with pytest.raises(ValidationError):
            fraction_to_ratio(1.0)

    def test_negative_ratio_is_rejected(self) -> None:
        with pytest.raises(ValidationError):
            ratio_to_fraction(-0.1)

    def test_fraction_from_counts(self) -> None:
        assert fraction_from_counts(3.0, 1.0) == 0.75
        assert fraction_from_counts(2.0, 0.0) == 1.0
        with pytest.raises(UndefinedFractionError):
            fraction_from_counts(0.0, 0.0)


class TestFitPolynomial:
    def test_recovers_noiseless_quadratic(self) -> None:
        data = _quadratic(np.linspace(0.2, 9.0, 60), 1.5, -0.7, 0.3)
        fit = fit_polynomial(data, 2)

        for got, want in zip(fit.coeffs, (1.5, -0.7, 0.3), strict=True):
            assert got == pytest.approx(want, rel=1e-9)
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.df_resid == 57

    def test_linear_fit_matches_reference(self) -> None:
        rng = np.random.default_rng(3)
        x = rng.uniform(0, 10, 80)
        y = 2.0 + 0.4 * x + rng.normal(0, 1, 80)
        fit = fit_polynomial(ScatterData.from_arrays(x, y), 1)
        reference = scipy_stats.linregress(x, y)

        assert fit.coeffs[1] == pytest.approx(reference.slope, rel=1e-10)
        assert fit.coeffs[0] == pytest.approx(reference.intercept, rel=1e-10)
        assert fit.std_errors[1] == pytest.approx(reference.stderr, rel=1e-8)
        assert fit.p_values[1] == pytest.approx(reference.pvalue, rel=1e-6, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_residuals_are_orthogonal_to_the_design(self, seed: int) -> None:
        rng = np.random.default_rng(seed)
        x = rng.lognormal(1.0, 0.5, 50)
        y = 1.0 + 0.5 * x + rng.normal(0, 1.0, 50)
        data = ScatterData.from_arrays(x, y)
        fit = fit_polynomial(data, 2)
        residuals = y - np.array([predict(fit, float(v)) for v in x])
        for power in range(3):
            column = (x - x.mean()) ** power
            scale = np.linalg.norm(column) * np.linalg.norm(y)
            assert abs(residuals @ column) <= 1e-8 * scale

    def test_too_few_points(self) -> None:
        data = ScatterData.from_arrays([1.0, 2.0, 3.0], [1.0, 2.0, 2.0])
        with pytest.raises(SampleSizeError):
            fit_polynomial(data, 2)

    def test_constant_predictor_is_singular(self) -> None:
        data = ScatterData.from_arrays([2.0] * 10, np.arange(10.0))
        with pytest.raises(SingularFitError):
            fit_polynomial(data, 1)

    def test_too_few_distinct_values_is_singular(self) -> None:
        data = ScatterData.from_arrays([1.0, 1.0, 2.0, 2.0, 1.0, 2.0], np.arange(6.0))
        with pytest.raises(SingularFitError):
            fit_polynomial(data, 2)

    def test_unsupported_degree(self) -> None:
        data = _quadratic(np.linspace(0, 1, 20), 0, 1, 1)
        with pytest.raises(ValidationError):
            fit_polynomial(data, 4)

    def test_exact_line_has_null_quadratic_term(self) -> None:
        data = ScatterData.from_arrays(np.linspace(0, 5, 40), 1 + 0.5 * np.linspace(0, 5, 40))
        fit = fit_polynomial(data, 2)

        assert fit.p_values[2] > 0.05
        assert np.isfinite(fit.t_stats).all()


class TestParameterizationMatters:
    def test_linear_in_fraction_is_curved_in_ratio(self) -> None:
        ratio = np.linspace(0.2, 12.0, 200)
        fraction = ratio / (1.0 + ratio)
        y = 1.0 + 4.0 * fraction
        in_fraction = fit_polynomial(ScatterData.from_arrays(fraction, y, XKind.FRACTION), 2)
        in_ratio = fit_polynomial(ScatterData.from_arrays(ratio, y, XKind.RATIO), 2)

        assert in_fraction.coeffs[2] == pytest.approx(0.0, abs=1e-9)
        assert in_ratio.p_values[2] < 0.01


class TestCurveHelpers:
    def test_prediction_and_extrapolation(self) -> None:
        fit = fit_polynomial(_quadratic(np.linspace(1, 4, 30), 0.0, 0.0, 1.0), 2)

        assert predict(fit, 2.0) == pytest.approx(4.0)
        assert not is_extrapolation(fit, 2.5)
        assert is_extrapolation(fit, 4.5)

    def test_curve_spans_the_observed_range(self) -> None:
        fit = fit_polynomial(_quadratic(np.linspace(1, 4, 30), 0.0, 1.0, 0.0), 1)
        samples = sample_curve(fit, 200)

        assert len(samples) == 200
        assert samples[0].x == 1.0 and samples[-1].x == 4.0
        assert not any(s.extrapolated for s in samples)
        spacing = np.diff([s.x for s in samples])
        assert np.allclose(spacing, spacing[0])

    def test_extension_flags_extrapolated_samples(self) -> None:
        fit = fit_polynomial(_quadratic(np.linspace(1, 4, 30), 0.0, 1.0, 0.0), 1)
        samples = sample_curve(fit, 50, extension=0.5)

        assert samples[0].extrapolated and samples[-1].extrapolated
        assert samples[0].x == pytest.approx(-0.5)

    def test_divergence_of_identical_models_is_zero(self) -> None:
        data = ScatterData.from_arrays(np.linspace(0, 5, 40), 2 + 0.3 * np.linspace(0, 5, 40))
        linear = fit_polynomial(data, 1)
        quadratic = fit_polynomial(data, 2)
        divergence = fit_divergence(linear, quadratic, data)

        assert divergence.max_abs_difference == pytest.approx(0.0, abs=1e-8)
        assert divergence.band_low == pytest.approx(0.5)
        assert divergence.band_high == pytest.approx(4.5)


class TestInflectionPoint:
    def test_cubic_inflection(self) -> None:
        x = np.linspace(-1.0, 5.0, 60)
        # (x - 2)^3 - (x - 2) has its inflection at 2
        data = ScatterData.from_arrays(x, (x - 2) ** 3 - (x - 2))
        point = inflection_point(fit_polynomial(data, 3))

        assert point is not None
        assert point.x == pytest.approx(2.0, abs=1e-9)
        assert point.within_range

    def test_noisy_logistic_inflection_sits_near_its_center(self) -> None:
        rng = np.random.default_rng(21)
        x = rng.uniform(0.0, 6.0, 200)
        y = 1.0 + 4.0 / (1.0 + np.exp(-2.0 * (x - 3.0))) + rng.normal(0.0, 0.2, 200)
        point = inflection_point(fit_polynomial(ScatterData.from_arrays(x, y, XKind.RATIO), 3))

        assert point is not None
        assert point.x == pytest.approx(3.0, abs=0.5)
        assert point.within_range

    def test_quadratic_data_has_no_inflection(self) -> None:
        data = _quadratic(np.linspace(0, 5, 40), 1.0, 0.0, 0.5)
        assert inflection_point(fit_polynomial(data, 3)) is None

    def test_requires_a_cubic(self) -> None:
        data = _quadratic(np.linspace(0, 5, 40), 1.0, 0.0, 0.5)
        with pytest.raises(ValidationError):
            inflection_point(fit_polynomial(data, 2))


@pytest.mark.slow
class TestCoefficientCoverage:
    def test_nominal_95_percent_intervals(self) -> None:
        rng = np.random.default_rng(2013)
        truth = (1.0, 0.8, -0.15)
        x = np.linspace(0.5, 6.0, 40)
        hits = np.zeros(3)
        replications = 1000
        quantile = float(scipy_stats.t.ppf(0.975, x.size - 3))
        for _ in range(replications):
            y = truth[0] + truth[1] * x + truth[2] * x**2 + rng.normal(0, 0.5, x.size)
            fit = fit_polynomial(ScatterData.from_arrays(x, y), 2)
            for k in range(3):
                hits[k] += abs(fit.coeffs[k] - truth[k]) <= quantile * fit.std_errors[k]
        coverage = hits / replications
        assert ((coverage >= 0.93) & (coverage <= 0.97)).all()
