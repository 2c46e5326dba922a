"""Exception hierarchy for the figure renderer."""


class FigureError(Exception):
    """Base class for all rendering errors."""


class MissingColumnError(FigureError):
    """The input CSV lacks a column the requested figure needs."""


class EmptyTableError(FigureError):
    """The input CSV has a header but no data rows."""
