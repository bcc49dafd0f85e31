from collections.abc import Callable
from unittest.mock import Mock

import pytest

from app.application.ports.dataset_reader import DatasetReaderPort, LoadedDataset


@pytest.fixture
def reader_returning() -> Callable[[LoadedDataset], Mock]:
    def build(dataset: LoadedDataset) -> Mock:
        reader = Mock(spec=DatasetReaderPort)
        reader.read.return_value = dataset
        return reader

    return build
