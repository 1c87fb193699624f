"""Exception hierarchy shared by all modules."""


class ConstraintMinorError(Exception):
    """Base class for every error raised by this package."""


class GraphInputError(ConstraintMinorError, ValueError):
    """Malformed graph data: loops, duplicate pairs, bad indices, parse errors."""

    def __init__(self, message, item=None, line=None):
        super().__init__(message)
        self.item = item
        self.line = line

    def __str__(self):
        msg = super().__str__()
        return f"line {self.line}: {msg}" if self.line is not None else msg


class PreconditionError(ConstraintMinorError, ValueError):
    """An operation was called outside its documented domain."""


class ResourceLimitError(ConstraintMinorError, RuntimeError):
    """A configured search or size cap was hit; the answer is unknown, not negative."""


class TooLargeError(ResourceLimitError):
    """Graph exceeds the canonicalization or enumeration cap."""


class InvariantViolation(ConstraintMinorError, AssertionError):
    """A structural guarantee of the underlying theory failed. Always a bug."""
