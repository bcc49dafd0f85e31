"""File adapters for datasets and reports."""

from .csv_dataset_reader import CsvDatasetReader
from .report_writer import JsonReportWriter

__all__ = ["CsvDatasetReader", "JsonReportWriter"]
