"""JSON report and delimited-table writer."""

import sys
from pathlib import Path

import pandas as pd

from app.application.dtos.report_dtos import AnalysisReport, TabularOutput
from app.application.ports.report_writer import ReportWriterPort
from app.infrastructure.logging import get_logger


class JsonReportWriter(ReportWriterPort):
    """Writes reports as indented JSON and tables through pandas.

    ``float_format`` applies to tables that do not carry their own.
    """

    def __init__(self, float_format: str | None = None) -> None:
        self.float_format = float_format
        self.logger = get_logger(self.__class__.__name__)

    def write_report(self, report: AnalysisReport, destination: Path | None = None) -> None:
        text = report.to_json()
        if destination is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        Path(destination).write_text(text, encoding="utf-8")
        self.logger.info(
            "Wrote report", extra={"path": str(destination), "command": report.command}
        )

    def write_table(
        self, table: TabularOutput, destination: Path | None, delimiter: str = ","
    ) -> None:
        frame = pd.DataFrame(list(table.rows), columns=list(table.columns))
        text = frame.to_csv(
            sep=delimiter,
            index=False,
            lineterminator="\n",
            float_format=table.float_format or self.float_format,
        )
        if destination is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        Path(destination).write_text(text, encoding="utf-8")
        self.logger.info(
            "Wrote table", extra={"path": str(destination), "rows": len(table.rows)}
        )
