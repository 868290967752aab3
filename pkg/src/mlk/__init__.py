"""Exact verification and construction kit for mock-Lie structures."""

__version__ = "0.1.0"
