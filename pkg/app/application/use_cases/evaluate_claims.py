"""Evaluate the claims ladder use case."""

from app.application.dtos.report_dtos import AnalysisOutcome, ClaimReportDTO, ClaimsResults
from app.application.dtos.request_dtos import ClaimsRequest
from app.application.ports.dataset_reader import DatasetReaderPort
from app.application.use_cases.parameterizations import scatter_views
from app.domain.services.claims_engine import ClaimsPolicy, evaluate_all
from app.infrastructure.logging import get_logger


class EvaluateClaimsUseCase:
    """Use case for running the claim battery, optionally at the upper threshold too."""

    def __init__(self, dataset_reader: DatasetReaderPort) -> None:
        self.dataset_reader = dataset_reader
        self.logger = get_logger(self.__class__.__name__)

    def execute(self, request: ClaimsRequest) -> AnalysisOutcome:
        dataset = self.dataset_reader.read(request.input_path, request.x_var)
        view = scatter_views(dataset, request.x_var)[request.x_var]
        if view.n_excluded:
            self.logger.warning(
                "Rows without a predictor value were left out",
                extra={"excluded": view.n_excluded, "x_var": str(request.x_var)},
            )

        policy = ClaimsPolicy(
            alpha=request.alpha,
            threshold=request.threshold,
            threshold_tolerance=request.threshold_tolerance,
            window_center=request.window_center,
            window_halfwidth=request.window_halfwidth,
            threshold_mode=request.threshold_mode,
            trim=request.trim,
            permutations=request.permutations,
            steepness_factor=request.steepness_factor,
            smoother_span=request.smoother_span,
            jump_window=request.jump_window,
            min_jump_fraction=request.min_jump_fraction,
            inflection_floor=request.inflection_floor,
            seed=request.seed,
        )
        primary = evaluate_all(view.data, policy)
        upper = None
        if request.upper_threshold is not None:
            upper = evaluate_all(view.data, policy.centered_on(request.upper_threshold))

        return AnalysisOutcome(
            input_digest=dataset.digest,
            results=ClaimsResults(
                primary=ClaimReportDTO.from_domain(primary),
                upper=ClaimReportDTO.from_domain(upper) if upper is not None else None,
                excluded_rows=view.n_excluded,
            ),
        )
