"""Custom exceptions for laboratory operations."""


class NclpError(Exception):
    """Base exception for nclp operations."""
    pass


class PreconditionError(NclpError, ValueError):
    """An operation was called outside its precondition."""

    def __init__(self, message: str, precondition: str = "") -> None:
        super().__init__(message)
        self.precondition = precondition or message


class AlgebraMismatchError(PreconditionError):
    """Operands live in different algebras."""
    pass


class NotHermitianError(PreconditionError):
    """A Hermitian element was required."""
    pass


class NotLazyError(PreconditionError):
    """A lazy commutative centralizer was required."""
    pass


class AdmissibilityError(NclpError):
    """A derived construction failed its runtime validity check."""
    pass


class ConfigError(NclpError):
    """Invalid experiment configuration or unknown experiment."""
    pass


class ReportError(NclpError):
    """A report could not be written or read."""
    pass
