"""Audit summary statistics use case."""

import hashlib
import json

from app.application.dtos.report_dtos import (
    AnalysisOutcome,
    AuditDTO,
    ForensicsReportDTO,
    ForensicsResults,
    SensitivityEntryDTO,
)
from app.application.dtos.request_dtos import AuditRequest
from app.application.exceptions import DataFormatError, UsageError
from app.application.ports.dataset_reader import DatasetReaderPort, DatasetSchema
from app.domain.services.forensics import (
    ForensicsPolicy,
    audit,
    equal_variance_sensitivity,
)
from app.domain.value_objects import SummaryStats
from app.infrastructure.logging import get_logger


def canonical_digest(payload: object) -> str:
    """SHA-256 of a canonical JSON rendering."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class AuditSummaryStatsUseCase:
    """Use case for reverse-engineering published two-group statistics."""

    def __init__(self, dataset_reader: DatasetReaderPort) -> None:
        self.dataset_reader = dataset_reader
        self.logger = get_logger(self.__class__.__name__)

    def _load(self, request: AuditRequest) -> tuple[list[SummaryStats], str]:
        if request.input_path is not None and request.samples:
            raise UsageError("give summary statistics either in a file or inline, not both")
        if request.input_path is not None:
            dataset = self.dataset_reader.read(request.input_path)
            if dataset.schema is not DatasetSchema.SUMMARY:
                raise DataFormatError(
                    f"forensics expects columns label,{DatasetSchema.SUMMARY}; "
                    f"got {','.join(dataset.columns)}"
                )
            return list(dataset.summaries), dataset.digest
        if not request.samples:
            raise UsageError("no summary statistics supplied")
        stats = [SummaryStats(**sample.model_dump()) for sample in request.samples]
        digest = canonical_digest([sample.model_dump() for sample in request.samples])
        return stats, digest

    def execute(self, request: AuditRequest) -> AnalysisOutcome:
        """
        Execute the audit use case.

        Args:
            request: Summary statistics source and audit policy

        Returns:
            AnalysisOutcome with one audit (plus SD-ratio sensitivity) per sample

        Raises:
            UsageError: If no statistics, or two sources, are supplied
            DataFormatError: If the input file is not a summary-statistics file
        """
        stats, digest = self._load(request)
        policy = ForensicsPolicy(
            threshold=request.threshold,
            upper_threshold=request.upper_threshold,
            impurity_allowance=request.impurity_allowance,
            allowance_grid=request.allowance_grid,
            alpha=request.alpha,
        )
        audits = []
        for sample in stats:
            report = audit(sample, policy)
            sensitivity = equal_variance_sensitivity(
                sample, request.sd_ratio_grid, request.threshold
            )
            self.logger.info(
                "Audited sample",
                extra={"label": sample.label, "verdict": str(report.verdict)},
            )
            audits.append(
                AuditDTO(
                    report=ForensicsReportDTO.model_validate(report),
                    sensitivity=tuple(
                        SensitivityEntryDTO.model_validate(entry) for entry in sensitivity
                    ),
                )
            )
        return AnalysisOutcome(
            input_digest=digest, results=ForensicsResults(audits=tuple(audits))
        )
