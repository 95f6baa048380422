"""Exception types shared across the package."""


class GapCircuitError(Exception):
    """Base class for every error raised by this package."""


class RangeError(GapCircuitError, ValueError):
    """An order, segment index, size, or parameter is outside its valid range."""


class Int64OverflowError(GapCircuitError, OverflowError):
    """A term, segment, or statistic does not fit in a signed 64-bit integer."""


class SieveBudgetError(GapCircuitError, ValueError):
    """A prime request would exceed the configured sieve budget."""


class UsageError(GapCircuitError, ValueError):
    """A command-line invocation asked for something contradictory or capped."""


class SequenceParseError(GapCircuitError, ValueError):
    """Sequence text could not be parsed.

    ``line`` and ``column`` are 1-based positions of the offending token,
    or ``None`` when no position applies (e.g. empty input).
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class EmptyInputError(SequenceParseError):
    """The input contained no terms at all."""
