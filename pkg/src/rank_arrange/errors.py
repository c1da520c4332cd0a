"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RankArrangeError(Exception):
    """Base class for all library errors."""


class NonIntegralCoefficient(RankArrangeError):
    pass


class InsufficientPoints(RankArrangeError):
    pass


class DimensionMismatch(RankArrangeError, ValueError):
    pass


class NoSolution(RankArrangeError):
    pass


class DuplicatePoints(RankArrangeError, ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"objects {i} and {j} coincide")
        self.pair = (i, j)


class NotGeneric(RankArrangeError, ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(RankArrangeError):
    pass


class InfeasibleRegion(RankArrangeError):
    pass


class BadPrime(RankArrangeError, ValueError):
    pass


class ConsistencyFailure(RankArrangeError):
    pass


class TiedDistances(RankArrangeError, ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"judge is equidistant from objects {i} and {j}")
        self.pair = (i, j)


class TiedMidpoints(RankArrangeError, ValueError):
    pass


class NonAdjacentSwap(RankArrangeError):
    pass


class DegenerateProjection(RankArrangeError, ValueError):
    pass


class MissingCharPoly(RankArrangeError, KeyError):
    pass
