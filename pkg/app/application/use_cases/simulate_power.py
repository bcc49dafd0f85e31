"""Simulate dichotomized-design power use case."""

import logging
from dataclasses import replace

from app.application.dtos.report_dtos import AnalysisOutcome, PowerResults
from app.application.dtos.request_dtos import SimulateRequest
from app.application.use_cases.audit_summary_stats import canonical_digest
from app.domain.entities import (
    CalibrationResult,
    GeneratorSpec,
    PredictorDistribution,
    PredictorKind,
    Shape,
    ShapeParams,
)
from app.domain.services.dichotomy import calibrate_linear
from app.domain.services.power import power_comparison

logger = logging.getLogger(__name__)

CALIBRATION_REFERENCE = Shape.STEP


def shape_params(shape: Shape, request: SimulateRequest) -> ShapeParams:
    """Default curve for each shape, all centred on the same location."""
    height = request.step_high - request.step_low
    match shape:
        case Shape.LINEAR:
            # rises by the step height over one median-width
            slope = height / request.x_median
            return ShapeParams(
                intercept=request.threshold_y - slope * request.location, slope=slope
            )
        case Shape.STEP:
            return ShapeParams(
                location=request.location, low=request.step_low, high=request.step_high
            )
        case Shape.LOGISTIC:
            return ShapeParams(
                location=request.location,
                low=request.step_low,
                high=request.step_high,
                slope=request.logistic_slope,
            )
        case Shape.INVERTED_U:
            return ShapeParams(
                location=request.location,
                high=request.step_high,
                curvature=request.u_curvature,
            )


def build_spec(shape: Shape, request: SimulateRequest) -> GeneratorSpec:
    return GeneratorSpec(
        shape=shape,
        params=shape_params(shape, request),
        noise_sd=request.noise_sd,
        n=request.n,
        x_dist=PredictorDistribution(
            kind=PredictorKind.LOGNORMAL,
            median=request.x_median,
            spread=request.x_spread,
            x_max=request.x_max,
        ),
        y_min=request.y_min,
        y_max=request.y_max,
        label=shape.value,
    )


class SimulatePowerUseCase:
    """Use case for comparing the dichotomized t-test against full-data tests."""

    def execute(self, request: SimulateRequest) -> AnalysisOutcome:
        specs = [build_spec(shape, request) for shape in request.shapes]
        calibration: CalibrationResult | None = None
        if request.calibrate and Shape.LINEAR in request.shapes:
            reference = build_spec(CALIBRATION_REFERENCE, request)
            calibration = calibrate_linear(reference, request.threshold_y)
            specs = [
                replace(calibration.spec, label=Shape.LINEAR.value)
                if spec.shape is Shape.LINEAR
                else spec
                for spec in specs
            ]
            logger.info(
                "Linear generator calibrated to the step generator",
                extra={"converged": calibration.converged},
            )

        table = power_comparison(
            specs,
            replications=request.replications,
            threshold_y=request.threshold_y,
            alpha=request.alpha,
            master_seed=request.seed,
            permutations=request.permutations,
            trim=request.trim,
            workers=request.workers,
            calibration=calibration,
        )
        # worker count never changes the results, so it stays out of the digest
        digest = canonical_digest(request.model_dump(mode="json", exclude={"workers"}))
        return AnalysisOutcome(
            input_digest=digest,
            results=PowerResults.from_domain(table, CALIBRATION_REFERENCE.value),
        )
