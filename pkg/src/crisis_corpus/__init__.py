"""Standardise raw bilingual document collections into a sentence-aligned parallel corpus."""

__version__ = "0.1.0"
