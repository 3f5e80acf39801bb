"""Quantum weight enumerators from the n-qubit parallelized SWAP test."""
from . import backend
from .errors import (
    CommutationError,
    InvariantViolation,
    NumericError,
    ParseError,
    RankError,
    ShapeError,
    SignError,
    SizeLimitError,
    SwapEnumError,
    UnsupportedDimensionError,
    ValidationError,
)

__all__ = [
    "backend", "CommutationError", "InvariantViolation", "NumericError", "ParseError",
    "RankError", "ShapeError", "SignError", "SizeLimitError", "SwapEnumError",
    "UnsupportedDimensionError", "ValidationError",
]
__version__ = "0.1.0"
