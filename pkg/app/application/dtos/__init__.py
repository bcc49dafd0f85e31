"""Data Transfer Objects for application layer."""

from .report_dtos import (
    SCHEMA_VERSION,
    AnalysisOutcome,
    AnalysisReport,
    ClaimReportDTO,
    ClaimsResults,
    FitResults,
    ForensicsResults,
    PowerResults,
    SummaryStatsDTO,
    TabularOutput,
)
from .request_dtos import (
    AuditRequest,
    ClaimsRequest,
    FitRequest,
    SimulateRequest,
    TransformRequest,
)

__all__ = [
    "SCHEMA_VERSION",
    "AnalysisOutcome",
    "AnalysisReport",
    "AuditRequest",
    "ClaimReportDTO",
    "ClaimsRequest",
    "ClaimsResults",
    "FitRequest",
    "FitResults",
    "ForensicsResults",
    "PowerResults",
    "SimulateRequest",
    "SummaryStatsDTO",
    "TabularOutput",
    "TransformRequest",
]
