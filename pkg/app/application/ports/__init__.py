"""Application ports (interfaces) for dependencies."""

from .dataset_reader import DatasetReaderPort, DatasetSchema, LoadedDataset
from .report_writer import ReportWriterPort

__all__ = ["DatasetReaderPort", "DatasetSchema", "LoadedDataset", "ReportWriterPort"]
