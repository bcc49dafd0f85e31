"""Transform positivity records use case."""

import logging

from app.application.dtos.report_dtos import TabularOutput
from app.application.dtos.request_dtos import TransformRequest
from app.application.exceptions import DataFormatError
from app.application.ports.dataset_reader import DatasetReaderPort, DatasetSchema
from app.domain.services.regression import fraction_from_counts

logger = logging.getLogger(__name__)

DERIVED_COLUMNS = ("ratio", "fraction")


class TransformRecordsUseCase:
    """Use case for appending ratio and fraction columns to a records file."""

    def __init__(self, dataset_reader: DatasetReaderPort) -> None:
        self._dataset_reader = dataset_reader

    def execute(self, request: TransformRequest) -> TabularOutput:
        dataset = self._dataset_reader.read(request.input_path)
        if dataset.schema is not DatasetSchema.RECORDS:
            raise DataFormatError(
                f"transform expects columns {DatasetSchema.RECORDS}; "
                f"got {','.join(dataset.columns)}"
            )
        keep = [
            i for i, name in enumerate(dataset.columns)
            if name.strip().lower() not in DERIVED_COLUMNS
        ]
        rows = []
        for cells, record in zip(dataset.cells, dataset.records, strict=True):
            ratio = record.ratio
            rows.append(
                (
                    *(cells[i] for i in keep),
                    "" if ratio is None else repr(ratio),
                    repr(fraction_from_counts(record.p_count, record.n_count)),
                )
            )
        undefined = sum(1 for record in dataset.records if record.ratio is None)
        logger.info(
            "Transformed records",
            extra={"rows": len(rows), "undefined_ratio": undefined},
        )
        return TabularOutput(
            columns=(*(dataset.columns[i] for i in keep), *DERIVED_COLUMNS),
            rows=tuple(rows),
        )
