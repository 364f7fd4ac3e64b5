"""Exceptions raised by the qhyper library."""


class QHyperError(Exception):
    """Base class for every error raised by qhyper."""


class DomainError(QHyperError, ValueError):
    """An operation was called outside its preconditions (sizes, axes, arities)."""


class NonSquareError(DomainError):
    """Odd powers of v were evaluated at a q0 that is not a rational square."""


class PoleError(QHyperError, ZeroDivisionError):
    """A denominator vanishes at the requested specialization point."""


class UnknownCheckError(QHyperError, KeyError):
    """The requested theorem check is not registered."""

    def __str__(self) -> str:
        return f"unknown check id: {self.args[0]!r}" if self.args else "unknown check id"
