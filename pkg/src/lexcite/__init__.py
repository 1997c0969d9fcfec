"""Linguistic-complexity profiling and citation-impact comparison toolkit."""

__version__ = "0.1.0"
