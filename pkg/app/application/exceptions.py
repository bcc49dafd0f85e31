"""Application layer exceptions."""

from dataclasses import dataclass


class ApplicationError(Exception):
    """Base exception for application layer."""
    pass


@dataclass(frozen=True)
class RowProblem:
    """One rejected cell or row; ``line`` is the 1-based file line."""

    line: int
    column: str
    message: str

    def __str__(self) -> str:
        where = f"line {self.line}" if self.line > 0 else "header"
        if self.column:
            where += f", column {self.column!r}"
        return f"{where}: {self.message}"


class DataFormatError(ApplicationError):
    """Raised when an input file does not match a declared schema."""

    def __init__(self, message: str, problems: list[RowProblem] | None = None) -> None:
        self.problems = list(problems or [])
        super().__init__(message)

    def itemized(self) -> str:
        lines = [str(self)]
        lines.extend(f"  {problem}" for problem in self.problems)
        return "\n".join(lines)


class ConfigurationError(ApplicationError):
    """Raised when a configuration file is unreadable or invalid."""
    pass


class UsageError(ApplicationError):
    """Raised when the command line cannot be interpreted."""
    pass
