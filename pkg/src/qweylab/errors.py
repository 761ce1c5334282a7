"""Exception types shared across the workbench."""


class QWeylError(Exception):
    """Base class for all workbench errors."""


class ParameterError(QWeylError, ValueError):
    """Invalid or mismatched parameters (wrong field, bad matrix shape, ...)."""


class DomainError(QWeylError, ValueError):
    """Input lies outside the mathematical domain of the operation."""


class ZeroDivisorError(QWeylError, ZeroDivisionError):
    """Attempted inversion of zero in a coefficient field."""


class RelationError(QWeylError, RuntimeError):
    """A constructed object violates a defining relation it must satisfy."""


class ExprError(QWeylError, ValueError):
    """Expression parse failure; carries a 1-based column position."""

    def __init__(self, message: str, column: int | None = None):
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)
