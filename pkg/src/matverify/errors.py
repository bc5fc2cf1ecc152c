"""Exception types shared across the library and mapped to CLI exit codes."""


class UsageError(ValueError):
    """Bad arguments: dimension mismatches, out-of-range parameters, misuse."""


class MatrixParseError(ValueError):
    """Rejected matrix file. Carries the 1-based line number of the offense."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured memory or magnitude budget."""


class PromiseViolationError(RuntimeError):
    """The input broke its promise: more than t errors/nonzeroes are present.

    position is the (t+1)-th nonzero position found (0-based row, col);
    corrections is the number of corrections already applied when it surfaced.
    """

    def __init__(self, message: str, position=None, corrections: int = 0):
        super().__init__(message)
        self.position = position
        self.corrections = corrections


class InternalCheckError(RuntimeError):
    """An internal invariant failed. Indicates a bug, not bad input."""
