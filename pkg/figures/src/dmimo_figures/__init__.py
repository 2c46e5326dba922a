"""Publication-style figures for dmimo-sim sweep CSVs.

Consumes the simulator's CSV output only; no physics is recomputed here.
"""

__version__ = "0.1.0"

from .errors import EmptyTableError, FigureError, MissingColumnError
from .figures import (
    AXIS_LABELS,
    FIGURES,
    FigureSpec,
    figure_series,
    render,
    required_columns,
)
from .tables import SweepData, read_sweep_csv

__all__ = [
    "AXIS_LABELS",
    "EmptyTableError",
    "FIGURES",
    "FigureError",
    "FigureSpec",
    "MissingColumnError",
    "SweepData",
    "figure_series",
    "read_sweep_csv",
    "render",
    "required_columns",
    "__version__",
]
