from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from app.application.dtos.request_dtos import TransformRequest
from app.application.exceptions import DataFormatError
from app.application.ports.dataset_reader import DatasetSchema
from app.application.use_cases import TransformRecordsUseCase
from app.domain.value_objects import XKind
from app.infrastructure.io import CsvDatasetReader, JsonReportWriter


@pytest.fixture
def reader() -> CsvDatasetReader:
    return CsvDatasetReader()


def _write(tmp_path: Path, text: str, name: str = "data.csv") -> Path:
    path = tmp_path / name
    path.write_text(text)
    return path


class TestRecords:
    def test_ratio_and_fraction(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        dataset = reader.read(_write(tmp_path, "p,n,outcome\n3,1,4.2\n"))

        assert dataset.schema is DatasetSchema.RECORDS
        record = dataset.records[0]
        assert record.ratio == 3.0
        assert (record.p_count, record.n_count) == (3.0, 1.0)
        assert dataset.cells == (("3", "1", "4.2"),)

    def test_both_counts_zero_reports_the_line(
        self, reader: CsvDatasetReader, tmp_path: Path
    ) -> None:
        with pytest.raises(DataFormatError) as excinfo:
            reader.read(_write(tmp_path, "p,n,outcome\n0,0,4.2\n"))

        problem = excinfo.value.problems[0]
        assert (problem.line, problem.column) == (2, "p,n")
        assert "line 2" in excinfo.value.itemized()

    def test_every_bad_cell_is_itemized(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        text = "p,n,outcome\n1,1,2.0\nabc,1,2.0\n2,-1,\n"
        with pytest.raises(DataFormatError) as excinfo:
            reader.read(_write(tmp_path, text))

        where = [(p.line, p.column) for p in excinfo.value.problems]
        assert where == [(3, "p"), (4, "n"), (4, "outcome")]
        assert str(excinfo.value) == "3 invalid record value(s)"

    def test_headers_are_case_insensitive_and_extra_columns_kept(
        self, reader: CsvDatasetReader, tmp_path: Path
    ) -> None:
        dataset = reader.read(_write(tmp_path, "id,P, N,Outcome\na,2,2,1.5\n"))

        assert dataset.schema is DatasetSchema.RECORDS
        assert dataset.columns == ("id", "P", "N", "Outcome")
        assert (dataset.records[0].p_count, dataset.records[0].n_count) == (2.0, 2.0)


class TestScatter:
    def test_ratio_scatter(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        dataset = reader.read(_write(tmp_path, "x,y\n1.5,2\n3,4\n"), XKind.RATIO)

        assert dataset.schema is DatasetSchema.SCATTER
        assert dataset.scatter is not None
        assert dataset.scatter.x.tolist() == [1.5, 3.0]
        assert dataset.scatter.x_kind is XKind.RATIO

    def test_fraction_out_of_range(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        with pytest.raises(DataFormatError) as excinfo:
            reader.read(_write(tmp_path, "x,y\n0.5,2\n1.5,4\n"), XKind.FRACTION)
        assert excinfo.value.problems[0].line == 3

    def test_negative_ratio(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        with pytest.raises(DataFormatError):
            reader.read(_write(tmp_path, "x,y\n-0.5,2\n1.5,4\n"), XKind.RATIO)

    def test_non_finite_cell(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        with pytest.raises(DataFormatError) as excinfo:
            reader.read(_write(tmp_path, "x,y\ninf,2\n1.5,4\n"))
        assert excinfo.value.problems[0].column == "x"


class TestSummaries:
    def test_labels_and_counts(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        text = "label,n1,n2,mean1,mean2,t_stat\nsample1,36,51,3.2,2.3,2.32\n"
        dataset = reader.read(_write(tmp_path, text))

        assert dataset.schema is DatasetSchema.SUMMARY
        stats = dataset.summaries[0]
        assert (stats.label, stats.n1, stats.n2, stats.t_stat) == ("sample1", 36, 51, 2.32)

    def test_missing_label_column(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        text = "n1,n2,mean1,mean2,t_stat\n36,51,3.2,2.3,2.32\n9,92,3.4,2.1,1.62\n"
        dataset = reader.read(_write(tmp_path, text))
        assert [s.label for s in dataset.summaries] == ["row1", "row2"]

    def test_group_sizes_must_be_integers(
        self, reader: CsvDatasetReader, tmp_path: Path
    ) -> None:
        text = "n1,n2,mean1,mean2,t_stat\n36.5,1,3.2,2.3,2.32\n"
        with pytest.raises(DataFormatError) as excinfo:
            reader.read(_write(tmp_path, text))
        assert [p.column for p in excinfo.value.problems] == ["n1", "n2"]


class TestFileLevelProblems:
    def test_digest_is_sha256_of_the_bytes(
        self, reader: CsvDatasetReader, tmp_path: Path
    ) -> None:
        first = reader.read(_write(tmp_path, "x,y\n1,2\n", "a.csv"))
        same = reader.read(_write(tmp_path, "x,y\n1,2\n", "b.csv"))
        other = reader.read(_write(tmp_path, "x,y\n1,3\n", "c.csv"))

        assert first.digest == same.digest != other.digest
        assert len(first.digest) == 64

    def test_unknown_header(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        with pytest.raises(DataFormatError, match="unrecognized header"):
            reader.read(_write(tmp_path, "a,b\n1,2\n"))

    def test_empty_file(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        with pytest.raises(DataFormatError, match="empty"):
            reader.read(_write(tmp_path, ""))

    def test_header_only(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        with pytest.raises(DataFormatError, match="no data rows"):
            reader.read(_write(tmp_path, "x,y\n"))

    def test_missing_file(self, reader: CsvDatasetReader, tmp_path: Path) -> None:
        with pytest.raises(DataFormatError, match="cannot read"):
            reader.read(tmp_path / "absent.csv")


class TestTransformedFilesReload:
    def test_hundred_seeded_records_survive_a_transform(
        self, reader: CsvDatasetReader, tmp_path: Path
    ) -> None:
        rng = np.random.default_rng(100)
        p = rng.uniform(0.1, 40.0, 100)
        n = rng.uniform(0.1, 15.0, 100)
        outcome = rng.normal(4.0, 1.5, 100)
        lines = ["p,n,outcome"] + [
            ",".join(repr(float(v)) for v in row) for row in zip(p, n, outcome, strict=True)
        ]
        source = _write(tmp_path, "\n".join(lines) + "\n", "records.csv")
        target = tmp_path / "transformed.csv"

        table = TransformRecordsUseCase(dataset_reader=reader).execute(
            TransformRequest(input_path=source)
        )
        JsonReportWriter().write_table(table, target)
        reloaded = reader.read(target)
        derived = pd.read_csv(target)

        assert reloaded.schema is DatasetSchema.RECORDS
        assert len(reloaded.records) == 100
        original = reader.read(source).records
        for before, after in zip(original, reloaded.records, strict=True):
            assert after.p_count == pytest.approx(before.p_count, abs=1e-12)
            assert after.n_count == pytest.approx(before.n_count, abs=1e-12)
            assert after.outcome == pytest.approx(before.outcome, abs=1e-12)
        assert derived["ratio"].to_numpy() == pytest.approx(p / n, abs=1e-12)
        assert derived["fraction"].to_numpy() == pytest.approx(p / (p + n), abs=1e-12)
