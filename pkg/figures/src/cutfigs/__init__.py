"""Figures and CSV sidecars from cutbench results.json files."""

from .render import NoDataError, PlotRequest, render
from .schema import ResultsSchemaError, load_results, validate_results

__version__ = "0.1.0"

__all__ = [
    "NoDataError",
    "PlotRequest",
    "ResultsSchemaError",
    "load_results",
    "render",
    "validate_results",
]
