"""Report writer port (interface)."""

from abc import ABC, abstractmethod
from pathlib import Path

from app.application.dtos.report_dtos import AnalysisReport, TabularOutput


class ReportWriterPort(ABC):
    """Port (interface) for emitting reports and tables."""

    @abstractmethod
    def write_report(self, report: AnalysisReport, destination: Path | None = None) -> None:
        """Write the JSON report to ``destination``, or stdout when None."""
        pass

    @abstractmethod
    def write_table(
        self, table: TabularOutput, destination: Path | None, delimiter: str = ","
    ) -> None:
        """Write delimited rows to ``destination``, or stdout when None."""
        pass
