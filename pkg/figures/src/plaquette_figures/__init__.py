"""Figure rendering for plaquette sweep CSV files.

Pure presentation: this package parses the sweep CSV contract (three
``#`` metadata lines, ``axis,S11..S44`` header, 17-significant-digit
floats) and draws curves, scattering-matrix heatmaps, and probability
flow bars.  It never recomputes physics and never depends on the
simulator package.
"""

__version__ = "0.1.0"

from .csvio import MalformedCSV, ParsedTable, parse_table
from .render import FigureJob, RenderInfo, render

__all__ = [
    "__version__",
    "FigureJob",
    "MalformedCSV",
    "ParsedTable",
    "RenderInfo",
    "parse_table",
    "render",
]
