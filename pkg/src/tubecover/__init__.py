"""Exact and numerical tools for recognising tube-domain universal covers
from the factor structure of a single evaluated tensor polynomial."""

__version__ = "0.1.0"
