"""Exception hierarchy shared by every swapenum module."""


class SwapEnumError(Exception):
    """Base class for all library errors."""


class ShapeError(SwapEnumError, ValueError):
    """Operator dimensions do not match the subsystem shape."""


class ValidationError(SwapEnumError, ValueError):
    """An input violates a documented invariant (not Hermitian, not PSD, ...)."""


class ParseError(SwapEnumError, ValueError):
    """Malformed textual input.  ``position`` is the 0-based offending column."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class SizeLimitError(SwapEnumError):
    """The requested computation exceeds a configured resource cap."""


class NumericError(SwapEnumError, ArithmeticError):
    """A numerical routine failed to converge."""


class UnsupportedDimensionError(SwapEnumError, ValueError):
    """The operation is only defined for a particular local dimension."""


class InvariantViolation(SwapEnumError):
    """A computed quantity broke a mathematical invariant beyond tolerance."""


class StabilizerError(ValidationError):
    """Base class for invalid generator sets."""


class CommutationError(StabilizerError):
    def __init__(self, i, j, gi, gj):
        super().__init__(f"generators {i} ({gi}) and {j} ({gj}) anticommute")
        self.pair = (i, j)


class SignError(StabilizerError):
    """-I (or another non-trivial multiple of I) lies in the generated group."""


class RankError(StabilizerError):
    """Generators are not independent."""
