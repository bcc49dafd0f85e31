"""CSV implementation of the dataset reader port."""

import hashlib
import io
from pathlib import Path

import numpy as np
import pandas as pd

from app.application.exceptions import DataFormatError, RowProblem
from app.application.ports.dataset_reader import (
    DatasetReaderPort,
    DatasetSchema,
    LoadedDataset,
)
from app.domain.value_objects import PositivityRecord, ScatterData, SummaryStats, XKind
from app.infrastructure.logging import get_logger

# header occupies line 1
FIRST_DATA_LINE = 2
# summary files are checked first: their columns never overlap the others
SCHEMA_ORDER = (DatasetSchema.SUMMARY, DatasetSchema.RECORDS, DatasetSchema.SCATTER)


class CsvDatasetReader(DatasetReaderPort):
    """Loads comma-separated files with a header row.

    Column names are matched case-insensitively and extra columns are kept
    for ``transform`` but otherwise ignored.
    """

    def __init__(self) -> None:
        self.logger = get_logger(self.__class__.__name__)

    def read(self, path: Path, x_kind: XKind = XKind.RAW) -> LoadedDataset:
        try:
            raw = Path(path).read_bytes()
        except OSError as e:
            raise DataFormatError(f"cannot read {path}: {e.strerror or e}") from e
        digest = hashlib.sha256(raw).hexdigest()
        frame = self._parse(raw, path)
        columns = tuple(str(c) for c in frame.columns)
        schema = self._detect_schema(columns)
        lookup = {c.strip().lower(): c for c in columns}
        cells = tuple(tuple(str(v) for v in row) for row in frame.itertuples(index=False))

        match schema:
            case DatasetSchema.RECORDS:
                records = self._records(frame, lookup)
                dataset = LoadedDataset(schema, digest, columns, cells, records=records)
            case DatasetSchema.SCATTER:
                scatter = self._scatter(frame, lookup, x_kind)
                dataset = LoadedDataset(schema, digest, columns, cells, scatter=scatter)
            case DatasetSchema.SUMMARY:
                summaries = self._summaries(frame, lookup)
                dataset = LoadedDataset(schema, digest, columns, cells, summaries=summaries)

        self.logger.info(
            "Loaded dataset",
            extra={"path": str(path), "schema": str(schema), "rows": dataset.row_count},
        )
        return dataset

    @staticmethod
    def _parse(raw: bytes, path: Path) -> pd.DataFrame:
        if not raw.strip():
            raise DataFormatError(f"{path} is empty")
        try:
            frame = pd.read_csv(
                io.BytesIO(raw),
                dtype=str,
                keep_default_na=False,
                skipinitialspace=True,
            )
        except (pd.errors.ParserError, UnicodeDecodeError) as e:
            raise DataFormatError(f"{path} is not a readable CSV file: {e}") from e
        if frame.empty:
            raise DataFormatError(f"{path} has a header but no data rows")
        return frame

    @staticmethod
    def _detect_schema(columns: tuple[str, ...]) -> DatasetSchema:
        present = {c.strip().lower() for c in columns}
        for schema in SCHEMA_ORDER:
            if set(schema.split(",")) <= present:
                return schema
        expected = " or ".join(f"'{s}'" for s in SCHEMA_ORDER)
        raise DataFormatError(
            f"unrecognized header {','.join(columns)}; expected columns {expected}",
            [RowProblem(0, "", "no known column set found")],
        )

    @staticmethod
    def _numeric(
        frame: pd.DataFrame, lookup: dict[str, str], names: tuple[str, ...]
    ) -> tuple[pd.DataFrame, list[RowProblem]]:
        """Coerce the named columns to float; blank or non-finite cells are problems."""
        values = pd.DataFrame(
            {name: pd.to_numeric(frame[lookup[name]], errors="coerce") for name in names}
        )
        problems = []
        for name in names:
            bad = ~np.isfinite(values[name].to_numpy(dtype=float))
            for idx in np.flatnonzero(bad):
                cell = frame[lookup[name]].iloc[idx]
                problems.append(
                    RowProblem(
                        int(idx) + FIRST_DATA_LINE,
                        name,
                        f"expected a finite number, got {cell!r}",
                    )
                )
        return values, problems

    @staticmethod
    def _raise_if(problems: list[RowProblem], what: str) -> None:
        if problems:
            problems.sort(key=lambda p: (p.line, p.column))
            raise DataFormatError(f"{len(problems)} invalid {what} value(s)", problems)

    def _records(
        self, frame: pd.DataFrame, lookup: dict[str, str]
    ) -> tuple[PositivityRecord, ...]:
        values, problems = self._numeric(frame, lookup, ("p", "n", "outcome"))
        for idx, row in enumerate(values.itertuples(index=False)):
            line = idx + FIRST_DATA_LINE
            for name in ("p", "n"):
                value = getattr(row, name)
                if np.isfinite(value) and value < 0:
                    problems.append(RowProblem(line, name, f"must be nonnegative, got {value}"))
            if row.p == 0 and row.n == 0:
                problems.append(RowProblem(line, "p,n", "p and n are both zero"))
        self._raise_if(problems, "record")
        return tuple(
            PositivityRecord(row.p, row.n, row.outcome)
            for row in values.itertuples(index=False)
        )

    def _scatter(
        self, frame: pd.DataFrame, lookup: dict[str, str], x_kind: XKind
    ) -> ScatterData:
        values, problems = self._numeric(frame, lookup, ("x", "y"))
        x = values["x"].to_numpy(dtype=float)
        if x_kind is XKind.FRACTION:
            for idx in np.flatnonzero((x < 0) | (x > 1)):
                problems.append(
                    RowProblem(
                        int(idx) + FIRST_DATA_LINE, "x", f"fraction outside [0, 1]: {x[idx]}"
                    )
                )
        elif x_kind is XKind.RATIO:
            for idx in np.flatnonzero(x < 0):
                problems.append(
                    RowProblem(int(idx) + FIRST_DATA_LINE, "x", f"negative ratio: {x[idx]}")
                )
        self._raise_if(problems, "scatter")
        return ScatterData.from_arrays(x, values["y"].to_numpy(dtype=float), x_kind)

    def _summaries(
        self, frame: pd.DataFrame, lookup: dict[str, str]
    ) -> tuple[SummaryStats, ...]:
        names = ("n1", "n2", "mean1", "mean2", "t_stat")
        values, problems = self._numeric(frame, lookup, names)
        for idx, row in enumerate(values.itertuples(index=False)):
            line = idx + FIRST_DATA_LINE
            for name in ("n1", "n2"):
                value = getattr(row, name)
                if np.isfinite(value) and (value != int(value) or value < 2):
                    problems.append(
                        RowProblem(line, name, f"must be an integer of at least 2, got {value}")
                    )
            for name in ("mean1", "mean2"):
                value = getattr(row, name)
                if np.isfinite(value) and value < 0:
                    problems.append(RowProblem(line, name, f"must be nonnegative, got {value}"))
        self._raise_if(problems, "summary")
        labels = (
            frame[lookup["label"]].tolist()
            if "label" in lookup
            else [f"row{i + 1}" for i in range(len(frame))]
        )
        return tuple(
            SummaryStats(
                n1=int(row.n1),
                n2=int(row.n2),
                mean1=row.mean1,
                mean2=row.mean2,
                t_stat=row.t_stat,
                label=str(label),
            )
            for row, label in zip(values.itertuples(index=False), labels, strict=True)
        )
