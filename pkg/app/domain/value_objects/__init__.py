"""Domain value objects."""

from .positivity_record import PositivityRecord
from .scatter_data import ScatterData, XKind
from .summary_stats import SummaryStats

__all__ = ["PositivityRecord", "ScatterData", "SummaryStats", "XKind"]
