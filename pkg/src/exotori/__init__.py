"""Exact computations around SL_d(Z), homotopy spheres and exotic tori."""

from .errors import (
    DegenerateError,
    DomainError,
    ExotoriError,
    FormatError,
    InputContradictsTableError,
    PreconditionError,
    ResourceError,
    UnsupportedDimensionError,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateError",
    "DomainError",
    "ExotoriError",
    "FormatError",
    "InputContradictsTableError",
    "PreconditionError",
    "ResourceError",
    "UnsupportedDimensionError",
]
