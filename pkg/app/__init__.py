"""Statistical audit toolkit for positivity-ratio claims."""

__version__ = "0.1.0"
