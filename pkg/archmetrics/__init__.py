"""Metadata about archmetrics. Nothing to see here."""
__version__ = "0.1.0"
