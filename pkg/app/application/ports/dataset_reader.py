"""Dataset reader port (interface)."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

from app.domain.value_objects import PositivityRecord, ScatterData, SummaryStats, XKind


class DatasetSchema(StrEnum):
    RECORDS = "p,n,outcome"
    SCATTER = "x,y"
    SUMMARY = "n1,n2,mean1,mean2,t_stat"


@dataclass(frozen=True)
class LoadedDataset:
    """Parsed input plus its raw cells, which ``transform`` echoes unchanged."""

    schema: DatasetSchema
    digest: str
    columns: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]
    records: tuple[PositivityRecord, ...] = ()
    scatter: ScatterData | None = None
    summaries: tuple[SummaryStats, ...] = ()

    @property
    def row_count(self) -> int:
        return len(self.cells)


class DatasetReaderPort(ABC):
    """Port (interface) for loading analysis inputs."""

    @abstractmethod
    def read(self, path: Path, x_kind: XKind = XKind.RAW) -> LoadedDataset:
        """Load a CSV file, detecting its schema.

        ``x_kind`` declares how an (x, y) file's predictor is parameterized.
        Raises DataFormatError with one RowProblem per rejected cell or row.
        """
        pass
