"""Exception types shared across the package."""


class LpbError(Exception):
    """Base class for all package errors."""


class DataError(LpbError):
    """The input data or its declared mapping is unusable (missing file,
    missing column, duplicate precinct keys, empty scope)."""


class InsufficientDataError(LpbError):
    """Too few qualifying precincts to fit a regression."""


class DegenerateSeriesError(LpbError):
    """All x values identical; the slope is undefined."""
