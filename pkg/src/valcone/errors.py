"""Exception hierarchy.

``DomainError`` subclasses are mathematical preconditions that failed for a
given input (CLI exit code 2); ``BudgetExceeded`` is a resource limit (exit
code 3).
"""


class ValconeError(Exception):
    """Base class for all package errors."""


class DomainError(ValconeError):
    pass


class BudgetExceeded(ValconeError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class NotBigElement(DomainError):
    pass


class NonPositive(DomainError):
    pass


class Negative(DomainError):
    pass


class NotExactSquare(DomainError):
    pass


class ParseError(DomainError, ValueError):
    pass


class UnknownGenerator(DomainError, KeyError):
    pass


class DimensionMismatch(DomainError, ValueError):
    pass


class NotTransverse(DomainError):
    pass


class NotPositive(DomainError):
    pass


class NotProximal(DomainError):
    pass


class FixedFlagMismatch(DomainError):
    pass


class NotExactlySolvable(DomainError):
    pass


class NotMinimal(DomainError):
    pass


class NotBoundaryPoint(DomainError):
    pass


class ZeroLengthFunction(DomainError):
    pass


class NumericBreakdown(DomainError):
    pass


class NoConvergence(DomainError):
    """Raised by the minimal-vector flow; carries the best iterate."""

    def __init__(self, message, rep=None, report=None):
        super().__init__(message)
        self.rep = rep
        self.report = report
