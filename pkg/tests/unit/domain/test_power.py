from dataclasses import replace

import pytest

from app.domain.entities import GeneratorSpec, Shape, ShapeParams
from app.domain.exceptions import ValidationError
from app.domain.services.dichotomy import calibrate_linear
from app.domain.services.power import power_comparison, replicate_seeds, run_replicate

STEP = GeneratorSpec(
    shape=Shape.STEP,
    params=ShapeParams(location=2.9013, low=2.25, high=3.75),
    noise_sd=0.75,
    y_max=20.0,
    label="step",
)


class TestReplicateSeeds:
    def test_deterministic(self) -> None:
        assert replicate_seeds(7, 0, 3) == replicate_seeds(7, 0, 3)

    def test_streams_are_distinct(self) -> None:
        seeds = {replicate_seeds(7, index, rep) for index in range(3) for rep in range(50)}
        assert len(seeds) == 150


class TestRunReplicate:
    def test_step_is_detected_by_every_test(self) -> None:
        data_seed, scan_seed = replicate_seeds(1, 0, 0)
        result = run_replicate(STEP, data_seed, scan_seed, threshold_y=3.0, alpha=0.05)

        assert result.dichotomized
        assert result.changepoint
        assert not result.degenerate

    def test_unreachable_threshold_counts_as_degenerate(self) -> None:
        data_seed, scan_seed = replicate_seeds(1, 0, 0)
        result = run_replicate(STEP, data_seed, scan_seed, threshold_y=50.0, alpha=0.05)

        assert result.degenerate
        assert not result.dichotomized


class TestPowerComparison:
    def test_requires_enough_replications(self) -> None:
        with pytest.raises(ValidationError):
            power_comparison([STEP], replications=99, threshold_y=3.0)

    def test_requires_generators(self) -> None:
        with pytest.raises(ValidationError):
            power_comparison([], replications=100, threshold_y=3.0)

    def test_workers_do_not_change_results(self) -> None:
        spec = replace(STEP, n=40)
        sequential = power_comparison([spec], 100, threshold_y=3.0, master_seed=5)
        parallel = power_comparison([spec], 100, threshold_y=3.0, master_seed=5, workers=2)

        assert sequential == parallel
        assert sequential.row("step").replications == 100

    def test_notes_mention_the_predictor_convention(self) -> None:
        table = power_comparison([replace(STEP, n=40)], 100, threshold_y=3.0)
        assert any("lognormal" in note for note in table.notes)


@pytest.mark.slow
class TestDichotomizedDesignIsBlind:
    def test_linear_and_step_look_alike_after_dichotomizing(self) -> None:
        calibration = calibrate_linear(STEP, 3.0)
        linear = replace(calibration.spec, label="linear")
        table = power_comparison(
            [linear, STEP], 1000, threshold_y=3.0, master_seed=2013, calibration=calibration
        )
        line, step = table.row("linear"), table.row("step")

        assert abs(line.dichotomized_t_rate - step.dichotomized_t_rate) < 0.05
        assert step.changepoint_rate - line.changepoint_rate > 0.5

    def test_quadratic_term_test_holds_its_size_under_a_line(self) -> None:
        line = GeneratorSpec(
            shape=Shape.LINEAR,
            params=ShapeParams(intercept=3.0, slope=0.6),
            noise_sd=0.75,
            y_max=20.0,
            label="line",
        )
        table = power_comparison([line], 1000, threshold_y=3.0, master_seed=11)

        assert 0.03 <= table.row("line").quadratic_rate <= 0.07

    def test_noise_swamping_the_signal_leaves_every_rate_near_alpha(self) -> None:
        noisy = [
            replace(STEP, noise_sd=1000.0, y_min=-1e6, y_max=1e6, label="noisy-step"),
            GeneratorSpec(
                shape=Shape.LINEAR,
                params=ShapeParams(intercept=3.0, slope=0.6),
                noise_sd=1000.0,
                y_min=-1e6,
                y_max=1e6,
                label="noisy-line",
            ),
        ]
        table = power_comparison(noisy, 400, threshold_y=3.0, master_seed=31)

        for row in table.rows:
            for rate in (row.dichotomized_t_rate, row.quadratic_rate, row.changepoint_rate):
                assert abs(rate - 0.05) < 0.05, row
