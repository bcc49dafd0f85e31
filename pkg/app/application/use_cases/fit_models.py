"""Fit linear and quadratic models use case."""

import logging

from app.application.dtos.report_dtos import (
    AnalysisOutcome,
    FitDivergenceDTO,
    FitResults,
    ParameterizationFitsDTO,
    RegressionFitDTO,
    TabularOutput,
)
from app.application.dtos.request_dtos import FitRequest
from app.application.ports.dataset_reader import DatasetReaderPort
from app.application.use_cases.parameterizations import scatter_views
from app.domain.services.regression import fit_divergence, fit_polynomial, sample_curve
from app.domain.value_objects import XKind

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ("x_kind", "degree", "x", "y_hat", "extrapolated")
CURVE_FLOAT_FORMAT = "%.6g"


class FitModelsUseCase:
    """Use case for fitting both parameterizations of the predictor."""

    def __init__(self, dataset_reader: DatasetReaderPort) -> None:
        self._dataset_reader = dataset_reader

    def execute(self, request: FitRequest) -> AnalysisOutcome:
        dataset = self._dataset_reader.read(request.input_path, request.x_var)
        views = scatter_views(dataset, request.x_var)

        fits = []
        curve_rows: list[tuple[str | float | int | bool | None, ...]] = []
        notes = []
        for x_kind in (XKind.RATIO, XKind.FRACTION):
            view = views[x_kind]
            linear = fit_polynomial(view.data, 1)
            quadratic = fit_polynomial(view.data, 2)
            divergence = fit_divergence(
                linear, quadratic, view.data, request.divergence_band
            )
            logger.info(
                "Fitted parameterization",
                extra={
                    "x_kind": str(x_kind),
                    "n": view.data.n,
                    "b2": quadratic.coeffs[2],
                    "b2_se": quadratic.std_errors[2],
                },
            )
            if view.n_excluded:
                notes.append(
                    f"{view.n_excluded} of {view.n_loaded} rows have no {x_kind} value "
                    "and were left out of that parameterization"
                )
            fits.append(
                ParameterizationFitsDTO(
                    x_kind=x_kind,
                    n_loaded=view.n_loaded,
                    n_excluded=view.n_excluded,
                    linear=RegressionFitDTO.model_validate(linear),
                    quadratic=RegressionFitDTO.model_validate(quadratic),
                    divergence=FitDivergenceDTO.model_validate(divergence),
                )
            )
            for fit in (linear, quadratic):
                for sample in sample_curve(
                    fit, request.curve_points, request.curve_extension
                ):
                    curve_rows.append(
                        (str(x_kind), fit.degree, sample.x, sample.y, sample.extrapolated)
                    )

        curves = TabularOutput(
            columns=CURVE_COLUMNS,
            rows=tuple(curve_rows),
            float_format=CURVE_FLOAT_FORMAT,
        )
        return AnalysisOutcome(
            input_digest=dataset.digest,
            results=FitResults(fits=tuple(fits), notes=tuple(notes)),
            tables={"curves": curves},
        )
