"""Dependency injection containers using dependency-injector."""

from dependency_injector import containers, providers

from app.application.use_cases.audit_summary_stats import AuditSummaryStatsUseCase
from app.application.use_cases.evaluate_claims import EvaluateClaimsUseCase
from app.application.use_cases.fit_models import FitModelsUseCase
from app.application.use_cases.simulate_power import SimulatePowerUseCase
from app.application.use_cases.transform_records import TransformRecordsUseCase
from app.infrastructure.io.csv_dataset_reader import CsvDatasetReader
from app.infrastructure.io.report_writer import JsonReportWriter


class InfrastructureContainer(containers.DeclarativeContainer):
    """Infrastructure layer dependency container."""

    config = providers.Configuration()

    # Stateless adapters are shared
    dataset_reader = providers.Singleton(CsvDatasetReader)

    report_writer = providers.Singleton(
        JsonReportWriter,
        float_format=config.float_format,
    )


class ServiceContainer(containers.DeclarativeContainer):
    """Service/Use case layer dependency container."""

    infrastructure = providers.DependenciesContainer()

    # Use cases as factories (new instance per command)
    audit_summary_stats_use_case: AuditSummaryStatsUseCase = providers.Factory(
        AuditSummaryStatsUseCase,
        dataset_reader=infrastructure.dataset_reader,
    )

    fit_models_use_case: FitModelsUseCase = providers.Factory(
        FitModelsUseCase,
        dataset_reader=infrastructure.dataset_reader,
    )

    evaluate_claims_use_case: EvaluateClaimsUseCase = providers.Factory(
        EvaluateClaimsUseCase,
        dataset_reader=infrastructure.dataset_reader,
    )

    simulate_power_use_case: SimulatePowerUseCase = providers.Factory(
        SimulatePowerUseCase,
    )

    transform_records_use_case: TransformRecordsUseCase = providers.Factory(
        TransformRecordsUseCase,
        dataset_reader=infrastructure.dataset_reader,
    )


class ApplicationContainer(containers.DeclarativeContainer):
    """Main application dependency container."""

    config = providers.Configuration()

    infrastructure: InfrastructureContainer = providers.Container(
        InfrastructureContainer,
        config=config,
    )

    services: ServiceContainer = providers.Container(
        ServiceContainer,
        infrastructure=infrastructure,
    )


def get_application_container(float_format: str = "%.6g") -> ApplicationContainer:
    """Get the configured application container."""
    container = ApplicationContainer()
    container.config.float_format.from_value(float_format)
    return container
