"""JSON logs on stderr, tagged with the current CLI run.

Every record emitted inside a run carries ``run_id``, the ``command`` being
executed and ``elapsed_ms`` since the run started.
"""

import logging
import sys
import time
from contextvars import ContextVar
from dataclasses import dataclass, field
from datetime import UTC, datetime
from typing import Any, TextIO

from pythonjsonlogger import jsonlogger

NO_RUN = "N/A"


@dataclass(frozen=True)
class RunFields:
    run_id: str
    command: str
    started: float = field(default_factory=time.perf_counter)

    def elapsed_ms(self) -> float:
        return round((time.perf_counter() - self.started) * 1000, 2)


run_context: ContextVar[RunFields | None] = ContextVar("run_context", default=None)


def current_run_id() -> str:
    fields = run_context.get()
    return fields.run_id if fields is not None else NO_RUN


class RunContextFilter(logging.Filter):
    """Copies the active run's fields onto each record unless ``extra`` set them."""

    def filter(self, record: logging.LogRecord) -> bool:
        fields = run_context.get()
        if fields is None:
            record.run_id = getattr(record, "run_id", NO_RUN)
            return True
        record.run_id = getattr(record, "run_id", fields.run_id)
        record.command = getattr(record, "command", fields.command)
        record.elapsed_ms = getattr(record, "elapsed_ms", fields.elapsed_ms())
        return True


class CustomJsonFormatter(jsonlogger.JsonFormatter):
    def add_fields(
        self,
        log_record: dict[str, Any],
        record: logging.LogRecord,
        message_dict: dict[str, Any],
    ) -> None:
        super().add_fields(log_record, record, message_dict)

        log_record["timestamp"] = datetime.fromtimestamp(record.created, UTC).isoformat()
        log_record["level"] = record.levelname
        log_record["logger"] = record.name
        log_record["message"] = record.getMessage()
        log_record["run_id"] = getattr(record, "run_id", NO_RUN)

        # source location on warnings and errors
        if record.levelno >= logging.WARNING:
            log_record["source"] = f"{record.module}.{record.funcName}:{record.lineno}"


def setup_logging(log_level: str = "INFO", stream: TextIO | None = None) -> None:
    """Route all records through one JSON handler on ``stream`` (stderr by default).

    stdout is reserved for reports.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, log_level.upper()))
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(CustomJsonFormatter())
    handler.addFilter(RunContextFilter())
    root_logger.addHandler(handler)

    # pandas' optional numexpr backend announces its thread count at INFO
    logging.getLogger("numexpr").setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
