"""Exception types shared across the package.

DomainError subclasses signal violated mathematical preconditions; the CLI
maps them to exit code 1. UsageError (bad input text) maps to exit code 2.
"""


class DomainError(Exception):
    pass


class UsageError(Exception):
    pass


# scalar / polynomial / matrix layer
class ZeroInput(DomainError):
    pass


class NotMonic(DomainError):
    pass


class NotSquare(DomainError):
    pass


class Inconsistent(DomainError):
    pass


class NonIntegral(DomainError):
    pass


class FactorizationTimeout(DomainError):
    pass


# etale algebra
class ZeroDivisor(DomainError):
    pass


class NonUnit(DomainError):
    pass


class NotOddPolynomial(DomainError):
    pass


class NonSeparable(DomainError):
    pass


class WrongDegree(DomainError):
    pass


# quadratic forms
class Degenerate(DomainError):
    pass


class ZeroArgument(DomainError):
    pass


class NotIsotropic(DomainError):
    pass


class NotSplit(DomainError):
    pass


class WrongDimension(DomainError):
    pass


class NonSquareComplement(DomainError):
    pass


class IsotropicSearchFailed(DomainError):
    pass


# orbit engine
class DimensionMismatch(DomainError):
    pass


class NormNotSquare(DomainError):
    pass


class NotTauFixed(DomainError):
    pass


class NoCyclicVector(DomainError):
    pass


class ZeroDiscriminant(DomainError):
    pass


# descent
class NotOnCurve(DomainError):
    pass


class WeierstrassPoint(DomainError):
    pass


class NotGenusOne(DomainError):
    pass


# census
class EvenQ(DomainError):
    pass


class EvenPrime(DomainError):
    pass


class NonSeparableModP(DomainError):
    pass


class BudgetExceeded(DomainError):
    pass


class BadPrime(DomainError):
    pass


class MaximalRankHypothesisFails(DomainError):
    pass


# integral lattices / binary quadratic forms
class NotPrimitive(DomainError):
    pass


class NullVector(DomainError):
    pass


class RingMismatch(DomainError):
    pass


class NotNegativeDiscriminant(DomainError):
    pass


class NotPositiveDefinite(DomainError):
    pass


class InvalidDiscriminant(DomainError):
    pass


# CLI
class ParseError(UsageError):
    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position
