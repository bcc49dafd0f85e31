"""Command-line presentation layer."""

from .commands import HANDLERS
from .parser import build_parser, settings_overrides

__all__ = ["HANDLERS", "build_parser", "settings_overrides"]
