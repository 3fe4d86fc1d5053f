"""Batch figure scripts for tascope output files.

These scripts are pure consumers: they read the CSV/JSON files the
``tascope`` CLI emits and render static images. They never recompute
alignment values.
"""

__version__ = "0.1.0"
