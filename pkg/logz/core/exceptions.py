"""Custom exceptions for logz."""
from typing import Any, Optional

EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_CHECK_FAILURE = 4


class LogZException(Exception):
    """Base exception for logz."""

    def __init__(self, message: str, exit_code: int = 1):
        self.message = message
        self.exit_code = exit_code
        super().__init__(message)


class ConfigException(LogZException):
    """Raised when a run config cannot be read or validated."""

    def __init__(self, message: str = "Invalid configuration"):
        super().__init__(message, EXIT_CONFIG_ERROR)


class ValidationException(LogZException, ValueError):
    """Raised when an operation's preconditions are violated."""

    def __init__(self, message: str = "Validation failed"):
        super().__init__(message, EXIT_CONFIG_ERROR)


class NumericalFailureException(LogZException):
    """Raised when a computation produces non-finite or inconsistent numbers."""

    def __init__(self, message: str = "Numerical failure"):
        super().__init__(message, EXIT_NUMERICAL_FAILURE)


class SamplerFailureException(NumericalFailureException):
    """Raised when a chain meets a non-finite gradient."""

    def __init__(self, message: str, row: Optional[int] = None, position: Any = None):
        self.row = row
        self.position = position
        super().__init__(message)


class MlmcLevelFailure(NumericalFailureException):
    """Raised when g is non-finite on a level sample."""

    def __init__(self, level: int, sample: int, value: float):
        self.level = level
        self.sample = sample
        self.value = value
        super().__init__(f"Non-finite g value {value} at level {level}, sample {sample}")


class StageFailureException(NumericalFailureException):
    """Raised when an annealing stage fails; carries the partial report."""

    def __init__(self, stage: int, cause: Exception, partial_report: Any = None):
        self.stage = stage
        self.cause = cause
        self.partial_report = partial_report
        super().__init__(f"Stage {stage} failed: {cause}")
        if isinstance(cause, LogZException):
            self.exit_code = cause.exit_code


class AcceptanceCheckException(LogZException):
    """Raised when an estimate misses its oracle by more than the tolerance."""

    def __init__(self, message: str = "Acceptance check failed"):
        super().__init__(message, EXIT_CHECK_FAILURE)
