"""Use cases for application layer."""

from .audit_summary_stats import AuditSummaryStatsUseCase
from .evaluate_claims import EvaluateClaimsUseCase
from .fit_models import FitModelsUseCase
from .simulate_power import SimulatePowerUseCase
from .transform_records import TransformRecordsUseCase

__all__ = [
    "AuditSummaryStatsUseCase",
    "EvaluateClaimsUseCase",
    "FitModelsUseCase",
    "SimulatePowerUseCase",
    "TransformRecordsUseCase",
]
