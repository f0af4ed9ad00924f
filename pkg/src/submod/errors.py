"""Exception hierarchy. Every error carries an optional machine-readable witness."""
from __future__ import annotations

from typing import Any


class SubmodError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str = "", witness: Any = None):
        super().__init__(message)
        self.witness = witness


class TooLarge(SubmodError):
    pass


class IncompleteTable(SubmodError):
    pass


class DuplicateEntry(SubmodError):
    pass


class NegativeCapacity(SubmodError):
    pass


class NegativeWeight(SubmodError):
    pass


class ShapeError(SubmodError):
    pass


class NotConcave(SubmodError):
    pass


class InvalidDistribution(SubmodError):
    pass


class NotPD(SubmodError):
    pass


class InvalidKernel(SubmodError):
    pass


class NotAnIdeal(SubmodError):
    pass


class NotAPartition(SubmodError):
    pass


class GroundMismatch(SubmodError):
    pass


class BadArgument(SubmodError):
    pass


class PreconditionFailed(SubmodError):
    pass


class NotSubmodular(PreconditionFailed):
    pass


class NotIncreasing(PreconditionFailed):
    pass


class NotSubadditive(PreconditionFailed):
    pass


class NormalizationViolated(PreconditionFailed):
    pass


class NotDiverging(SubmodError):
    pass


class RankMismatch(SubmodError):
    pass


class BadCoefficient(SubmodError):
    pass


class NotComonotonic(SubmodError):
    pass


class SandwichViolated(SubmodError):
    pass


class BetaNotMinorizing(SubmodError):
    pass


class NotMinorizing(SubmodError):
    pass


class NotAMatroidRank(SubmodError):
    pass


class NotSurjective(BadArgument):
    pass


class EmptyWindow(SubmodError):
    pass


class InfeasibleIntersection(SubmodError):
    pass


class InternalError(SubmodError):
    """An invariant that the mathematics guarantees has failed; indicates a bug."""
