"""Exception types shared across the package."""


class ExotoriError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ExotoriError, ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceError(ExotoriError):
    """A configured computational bound was exceeded."""


class UnsupportedDimensionError(DomainError):
    """No data is available for the requested dimension."""


class PreconditionError(ExotoriError):
    """An input violates a documented precondition."""


class InputContradictsTableError(DomainError):
    """Explicit input is inconsistent with the tabulated sphere data."""


class FormatError(ExotoriError, ValueError):
    """A text representation could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateError(ExotoriError):
    """Recovered geometric data collapsed (a zero vector or a nonzero common intersection)."""
