"""Exception hierarchy shared by all qcross modules."""

from __future__ import annotations


class QCrossError(Exception):
    """Base class for every error raised by this package."""


class NotPrimePower(QCrossError, ValueError):
    pass


class UnsupportedOrder(QCrossError, ValueError):
    pass


class DimensionMismatch(QCrossError, ValueError):
    pass


class AmbientMismatch(QCrossError, ValueError):
    """Two subspaces live in different ambient spaces (field or dimension)."""


class PreconditionViolated(QCrossError, ValueError):
    pass


class HypothesisViolated(QCrossError, ValueError):
    """The inputs do not satisfy the hypotheses of the statement being checked."""


class EmptyFamily(QCrossError, ValueError):
    pass


class NoCoverWithinBound(QCrossError):
    pass


class NoWitness(QCrossError):
    """An exhaustive witness search came back empty.

    Under the documented hypotheses this means a falsified statement, so it is
    never swallowed by callers.
    """


class NotMaximal(QCrossError):
    pass


class InfeasibleGrid(QCrossError, ValueError):
    pass


class BudgetExceeded(QCrossError):
    pass


class UnknownClaim(QCrossError, ValueError):
    pass


class CertificateError(QCrossError):
    """A stored record claims something that does not re-verify."""


class FormatError(QCrossError, ValueError):
    """Malformed text or file input; ``position`` locates the problem when known."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class DivisionByZero(QCrossError, ZeroDivisionError):
    pass
