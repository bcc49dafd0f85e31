"""Subcommand handlers."""

import argparse
import logging
from collections.abc import Callable
from importlib import resources
from pathlib import Path

from dependency_injector.wiring import Provide, inject

from app import __version__
from app.application.dtos.report_dtos import AnalysisOutcome, AnalysisReport, SummaryStatsDTO
from app.application.dtos.request_dtos import (
    AuditRequest,
    ClaimsRequest,
    FitRequest,
    SimulateRequest,
    TransformRequest,
)
from app.application.exceptions import UsageError
from app.application.ports.report_writer import ReportWriterPort
from app.application.use_cases import (
    AuditSummaryStatsUseCase,
    EvaluateClaimsUseCase,
    FitModelsUseCase,
    SimulatePowerUseCase,
    TransformRecordsUseCase,
)
from app.domain.value_objects import XKind
from app.infrastructure.config import Settings
from app.infrastructure.container import ApplicationContainer

logger = logging.getLogger(__name__)

BUNDLED_SAMPLES = "published_samples.csv"

Handler = Callable[[argparse.Namespace, Settings], None]


def _require_input(args: argparse.Namespace) -> Path:
    if args.input is None:
        raise UsageError(f"{args.command} requires --input")
    return Path(args.input)


def _emit(
    writer: ReportWriterPort,
    outcome: AnalysisOutcome,
    args: argparse.Namespace,
    settings: Settings,
) -> None:
    report = AnalysisReport.from_outcome(
        outcome,
        command=args.command,
        parameters=settings.report_parameters(),
        tool_version=__version__,
    )
    writer.write_report(report, args.output)


@inject
def run_forensics(
    args: argparse.Namespace,
    settings: Settings,
    use_case: AuditSummaryStatsUseCase = Provide[
        ApplicationContainer.services.audit_summary_stats_use_case
    ],
    writer: ReportWriterPort = Provide[ApplicationContainer.infrastructure.report_writer],
) -> None:
    """Audit inline, configured, file or bundled summary statistics."""
    section = settings.forensics
    request = AuditRequest(
        input_path=args.input,
        samples=[SummaryStatsDTO(**entry.model_dump()) for entry in section.samples],
        threshold=settings.threshold,
        upper_threshold=settings.upper_threshold,
        alpha=settings.alpha,
        impurity_allowance=section.impurity_allowance,
        allowance_grid=section.allowance_grid,
        sd_ratio_grid=section.sd_ratio_grid,
    )
    if request.input_path is None and not request.samples:
        logger.info("No statistics supplied; auditing the bundled samples")
        bundled = resources.files("app.resources").joinpath(BUNDLED_SAMPLES)
        with resources.as_file(bundled) as path:
            outcome = use_case.execute(request.model_copy(update={"input_path": path}))
    else:
        outcome = use_case.execute(request)
    _emit(writer, outcome, args, settings)


@inject
def run_fit(
    args: argparse.Namespace,
    settings: Settings,
    use_case: FitModelsUseCase = Provide[ApplicationContainer.services.fit_models_use_case],
    writer: ReportWriterPort = Provide[ApplicationContainer.infrastructure.report_writer],
) -> None:
    """Fit both parameterizations and write the sampled curves as TSV.

    Without ``--curves`` the table lands beside the report, or beside the input
    when the report goes to stdout, as ``<stem>.curves.tsv``.
    """
    section = settings.regression
    input_path = _require_input(args)
    request = FitRequest(
        input_path=input_path,
        x_var=XKind(settings.x_var),
        curve_points=section.curve_points,
        curve_extension=section.curve_extension,
        divergence_band=section.divergence_band,
    )
    outcome = use_case.execute(request)
    _emit(writer, outcome, args, settings)
    curves_path = args.curves or _default_curves_path(args.output or input_path)
    writer.write_table(outcome.tables["curves"], curves_path, delimiter="\t")
    logger.info("Sampled curves written", extra={"path": str(curves_path)})


def _default_curves_path(beside: Path) -> Path:
    return beside.with_name(f"{beside.stem}.curves.tsv")


@inject
def run_claims(
    args: argparse.Namespace,
    settings: Settings,
    use_case: EvaluateClaimsUseCase = Provide[
        ApplicationContainer.services.evaluate_claims_use_case
    ],
    writer: ReportWriterPort = Provide[ApplicationContainer.infrastructure.report_writer],
) -> None:
    request = ClaimsRequest(
        input_path=_require_input(args),
        x_var=XKind(settings.x_var),
        seed=settings.seed,
        alpha=settings.alpha,
        threshold=settings.threshold,
        upper_threshold=settings.upper_threshold,
        **settings.claims.model_dump(),
    )
    _emit(writer, use_case.execute(request), args, settings)


@inject
def run_simulate(
    args: argparse.Namespace,
    settings: Settings,
    use_case: SimulatePowerUseCase = Provide[
        ApplicationContainer.services.simulate_power_use_case
    ],
    writer: ReportWriterPort = Provide[ApplicationContainer.infrastructure.report_writer],
) -> None:
    if args.input is not None:
        raise UsageError("simulate takes no --input; use --config for generator settings")
    request = SimulateRequest(
        seed=settings.seed,
        alpha=settings.alpha,
        location=settings.threshold,
        trim=settings.claims.trim,
        **settings.simulation.model_dump(),
    )
    _emit(writer, use_case.execute(request), args, settings)


@inject
def run_transform(
    args: argparse.Namespace,
    settings: Settings,
    use_case: TransformRecordsUseCase = Provide[
        ApplicationContainer.services.transform_records_use_case
    ],
    writer: ReportWriterPort = Provide[ApplicationContainer.infrastructure.report_writer],
) -> None:
    """Echo a records file with ratio and fraction appended."""
    request = TransformRequest(input_path=_require_input(args), output_path=args.output)
    table = use_case.execute(request)
    writer.write_table(table, request.output_path)


HANDLERS: dict[str, Handler] = {
    "forensics": run_forensics,
    "fit": run_fit,
    "claims": run_claims,
    "simulate": run_simulate,
    "transform": run_transform,
}
