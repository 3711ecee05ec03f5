"""Exception types shared across the package.

Each class maps to one CLI exit code (see cli.EXIT_CODES), so library code
should raise the most specific type that applies.
"""


class SmoothnumError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SmoothnumError):
    """Malformed external input (zero tables, config files, CLI values)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RangeError(SmoothnumError):
    """Argument outside the range covered by a precomputed table."""


class ResourceError(SmoothnumError):
    """Request exceeds a resource envelope (time or memory cutoff)."""


class DomainError(SmoothnumError):
    """Argument outside the mathematical domain of the function."""


class PoleError(SmoothnumError):
    """Evaluation exactly at a pole."""


class SingularityError(SmoothnumError):
    """Evaluation too close to a zero or singularity to be meaningful."""
