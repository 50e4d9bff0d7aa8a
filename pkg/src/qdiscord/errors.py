"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented precondition (shape, hermiticity, normalization)."""


class NotAStateError(ValidationError):
    """A matrix fails the density-matrix requirements (unit trace, positivity)."""


class ConsistencyError(ArithmeticError):
    """An internally computed quantity left its guaranteed range, indicating bad upstream data."""


class StateParseError(ValueError):
    """A state file could not be parsed.  Carries the offending line and column (1-based)."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column
