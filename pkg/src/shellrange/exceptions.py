"""Exception types raised across the library."""


class ShellRangeError(Exception):
    """Base class for all library-specific errors."""


class SingularDenominator(ShellRangeError):
    """The Moebius denominator c*A + d*I is numerically singular."""


class ModelDimensionMismatch(ShellRangeError):
    """Operation mixes hyperbolic models of incompatible kind or dimension."""


class OutsideModel(ShellRangeError):
    """Coordinates lie outside the base set of the requested model."""


class WrongCase(ShellRangeError):
    """The descriptor case does not support the requested operation."""


class NoRealLinePair(ShellRangeError):
    """No member of the dual pencil factors into a pair of real lines."""


class KindMismatch(ShellRangeError):
    """Sample cloud and descriptor refer to different targets."""


class TooFewSamples(ShellRangeError):
    """Not enough sample points for a stable estimate."""


class InternalConsistencyError(ShellRangeError):
    """A redundant cross-check failed; indicates a bug, not bad input."""


class ParseError(ShellRangeError):
    """Malformed matrix input text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonFiniteEntry(ShellRangeError):
    """A matrix entry is NaN or infinite."""
