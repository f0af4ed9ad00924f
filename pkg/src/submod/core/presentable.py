"""Finite unions of rational subintervals of [0, 1] and their finite quotients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ..errors import BadArgument, NotAPartition
from ..rational import fmt, to_fraction
from .ground import GroundSet
from .setfunction import SetFunction

Interval = tuple  # (lo, hi, lo_closed, hi_closed)


def _nonempty(iv: Interval) -> bool:
    lo, hi, lc, rc = iv
    return lo < hi or (lo == hi and lc and rc)


def _canon(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    ivs = sorted((iv for iv in intervals if _nonempty(iv)), key=lambda iv: (iv[0], not iv[2]))
    out: list[list] = []
    for lo, hi, lc, rc in ivs:
        if out:
            clo, chi, clc, crc = out[-1]
            if lo < chi or (lo == chi and (crc or lc)):
                if hi > chi:
                    out[-1][1], out[-1][3] = hi, rc
                elif hi == chi:
                    out[-1][3] = crc or rc
                if lo == clo:
                    out[-1][2] = clc or lc
                continue
        out.append([lo, hi, lc, rc])
    return tuple(tuple(iv) for iv in out)


@dataclass(frozen=True)
class PresentableSet:
    """Canonical sorted, disjoint, non-adjacent intervals inside [0, 1]."""

    intervals: tuple

    def __init__(self, intervals: Iterable = ()):
        raw = []
        for iv in intervals:
            if len(iv) == 2:
                lo, hi = iv
                lc = rc = True
            else:
                lo, hi, lc, rc = iv
            lo, hi = to_fraction(lo), to_fraction(hi)
            if not (0 <= lo <= 1 and 0 <= hi <= 1):
                raise BadArgument(f"interval endpoints must lie in [0,1]: ({lo}, {hi})")
            raw.append((lo, hi, bool(lc), bool(rc)))
        object.__setattr__(self, "intervals", _canon(raw))

    @classmethod
    def closed(cls, lo, hi) -> "PresentableSet":
        return cls([(lo, hi, True, True)])

    @classmethod
    def halfopen(cls, lo, hi) -> "PresentableSet":
        """[lo, hi)."""
        return cls([(lo, hi, True, False)])

    @classmethod
    def empty(cls) -> "PresentableSet":
        return cls(())

    @classmethod
    def unit(cls) -> "PresentableSet":
        return cls.closed(0, 1)

    def is_empty(self) -> bool:
        return not self.intervals

    def union(self, other: "PresentableSet") -> "PresentableSet":
        return PresentableSet(self.intervals + other.intervals)

    def intersection(self, other: "PresentableSet") -> "PresentableSet":
        out = []
        for a in self.intervals:
            for b in other.intervals:
                lo = max(a[0], b[0])
                hi = min(a[1], b[1])
                lc = (a[2] if a[0] == lo else True) and (b[2] if b[0] == lo else True)
                rc = (a[3] if a[1] == hi else True) and (b[3] if b[1] == hi else True)
                out.append((lo, hi, lc, rc))
        return PresentableSet(out)

    def complement(self) -> "PresentableSet":
        out = []
        cur, cur_closed = Fraction(0), True
        for lo, hi, lc, rc in self.intervals:
            out.append((cur, lo, cur_closed, not lc))
            cur, cur_closed = hi, not rc
        out.append((cur, Fraction(1), cur_closed, True))
        return PresentableSet(out)

    def difference(self, other: "PresentableSet") -> "PresentableSet":
        return self.intersection(other.complement())

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi, _, _ in self.intervals), Fraction(0))

    def sup(self) -> Fraction:
        """Supremum of the point set; 0 for the empty set by convention."""
        return self.intervals[-1][1] if self.intervals else Fraction(0)

    def to_json(self) -> list:
        return [[fmt(lo), fmt(hi), lc, rc] for lo, hi, lc, rc in self.intervals]

    def __str__(self) -> str:
        if not self.intervals:
            return "∅"
        parts = []
        for lo, hi, lc, rc in self.intervals:
            parts.append(f"{'[' if lc else '('}{lo},{hi}{']' if rc else ')'}")
        return " ∪ ".join(parts)


def presentable_measure(A: PresentableSet) -> Fraction:
    return A.measure()


def presentable_sup(A: PresentableSet) -> Fraction:
    return A.sup()


class PresentableQuotient:
    """A finite partition of [0,1] into presentable cells, viewed as a ground set."""

    def __init__(self, cells: Sequence[PresentableSet], labels: Sequence[str] | None = None):
        cells = tuple(cells)
        for i, c in enumerate(cells):
            if c.is_empty():
                raise NotAPartition(f"cell {i} is empty", witness={"cell": i})
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                inter = cells[i] & cells[j]
                if not inter.is_empty():
                    raise NotAPartition(f"cells {i} and {j} overlap on {inter}",
                                        witness={"cells": [i, j], "overlap": inter.to_json()})
        total = PresentableSet.empty()
        for c in cells:
            total = total | c
        if total != PresentableSet.unit():
            missing = total.complement()
            raise NotAPartition(f"cells do not cover [0,1]; missing {missing}",
                                witness={"missing": missing.to_json()})
        self.cells = cells
        self.ground = GroundSet(labels if labels is not None else [f"c{i}" for i in range(len(cells))])

    def pullback(self, mask: int) -> PresentableSet:
        out = PresentableSet.empty()
        for i, c in enumerate(self.cells):
            if mask >> i & 1:
                out = out | c
        return out

    def setfunction(self, fn: Callable[[PresentableSet], object], name: str = "") -> SetFunction:
        """φ_q(X) = fn(union of the cells in X)."""
        return SetFunction(self.ground, lambda m: fn(self.pullback(m)), name=name or "quotient")


def presentable_quotient(partition: Sequence[PresentableSet]) -> PresentableQuotient:
    return PresentableQuotient(partition)
