"""Exception hierarchy shared by every solver in the package."""


class ShearWavesError(Exception):
    """Base class for all package errors."""


class ConfigurationError(ShearWavesError, ValueError):
    """Bad configuration: unknown symbol, malformed config file, grid mismatch."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class UsageError(ShearWavesError, ValueError):
    """An operation was called outside its documented preconditions."""


class DomainError(ShearWavesError, ValueError):
    """A closed-form expression was evaluated where it is singular."""


class NumericError(ShearWavesError, ArithmeticError):
    """Non-finite values or runaway growth during a computation.

    ``step`` and ``time`` locate the failure inside a time march (or a
    normal-form flow, where ``time`` holds the flow parameter ``s``).
    """

    def __init__(self, message, step=None, time=None):
        if step is not None or time is not None:
            message = f"{message} (step={step}, t={time})"
        super().__init__(message)
        self.step = step
        self.time = time
