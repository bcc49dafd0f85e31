import logging
import uuid
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass

from .logging import RunFields, run_context


@dataclass
class RunScope:
    """One CLI invocation; handlers set ``exit_status`` before leaving."""

    command: str
    run_id: str
    exit_status: int = 0


@contextmanager
def run_scope(command: str, run_id: str | None = None) -> Iterator[RunScope]:
    """Tag every log record with the run and write one access line per command."""
    fields = RunFields(run_id=run_id or str(uuid.uuid4()), command=command)
    token = run_context.set(fields)
    scope = RunScope(command=command, run_id=fields.run_id)
    try:
        yield scope
    finally:
        duration = fields.elapsed_ms()
        logging.getLogger("access").info(
            f"{command} - {scope.exit_status} - {duration}ms",
            extra={"exit_status": scope.exit_status, "duration_ms": duration},
        )
        run_context.reset(token)
