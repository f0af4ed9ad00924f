"""The setfunction oracle abstraction."""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ..errors import GroundMismatch
from ..rational import common_denominator, to_fraction
from .ground import GroundSet, as_ground, check_size

FLAG_NAMES = frozenset({
    "submodular", "supermodular", "modular", "increasing", "decreasing",
    "strongly_submodular", "normalized",
})


class SetFunction:
    """A total map from subsets (bitmasks) of a ground set to values.

    Exact functions hold Fractions; approximate ones hold floats and carry a
    tolerance. Flags are claims only; certification never trusts them.
    """

    __slots__ = ("ground", "_oracle", "_table", "flags", "tolerance", "name", "spec",
                 "_scaled", "_lock")

    def __init__(self, ground, oracle: Callable[[int], object] | None = None, *,
                 table: Sequence | None = None, flags: Iterable[str] = (),
                 tolerance: float | None = None, name: str = "", spec: dict | None = None):
        self.ground = as_ground(ground)
        if oracle is None and table is None:
            raise ValueError("either oracle or table is required")
        flags = frozenset(flags)
        unknown = flags - FLAG_NAMES
        if unknown:
            raise ValueError(f"unknown flags {sorted(unknown)}")
        self.flags = flags
        self.tolerance = tolerance
        self.name = name
        self.spec = spec
        self._oracle = oracle
        self._scaled = None
        self._lock = threading.Lock()
        if table is not None:
            if len(table) != self.ground.size:
                raise ValueError(f"table has {len(table)} entries, expected {self.ground.size}")
            self._table = tuple(self._coerce(v) for v in table)
        else:
            self._table = None

    # -- evaluation -------------------------------------------------------
    def _coerce(self, v):
        if self.tolerance is None:
            return to_fraction(v)
        return float(v)

    @property
    def exact(self) -> bool:
        return self.tolerance is None

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def full(self) -> int:
        return self.ground.full

    def value(self, mask: int):
        t = self._table
        if t is not None:
            return t[mask]
        return self._coerce(self._oracle(mask))

    def __call__(self, subset=0):
        return self.value(self.ground.mask(subset))

    @property
    def table(self) -> tuple:
        """All 2^n values indexed by mask (computed once, deterministically)."""
        t = self._table
        if t is None:
            check_size(self.n, what="tabulation")
            with self._lock:
                if self._table is None:
                    self._table = tuple(self._coerce(self._oracle(m)) for m in range(self.ground.size))
                t = self._table
        return t

    def int_table(self) -> tuple[list, int | None]:
        """(integer table, denominator) with values = ints / denominator.

        Approximate functions return (float table, None).
        """
        if not self.exact:
            return list(self.table), None
        s = self._scaled
        if s is None:
            t = self.table
            d = common_denominator(t)
            s = ([v.numerator * (d // v.denominator) for v in t], d)
            self._scaled = s
        return s

    def slack(self, terms: int = 1):
        return 0 if self.exact else self.tolerance * terms

    # -- construction helpers ----------------------------------------------
    @classmethod
    def from_table(cls, ground, values: Sequence, **kw) -> "SetFunction":
        return cls(ground, table=values, **kw)

    @classmethod
    def constant(cls, ground, c=0) -> "SetFunction":
        g = as_ground(ground)
        return cls(g, table=[c] * g.size)

    def with_flags(self, flags: Iterable[str]) -> "SetFunction":
        return SetFunction(self.ground, table=self.table, flags=flags, tolerance=self.tolerance,
                           name=self.name, spec=self.spec)

    def map(self, fn: Callable[[int, object], object], *, flags=(), name="") -> "SetFunction":
        """New tabulated function with values fn(mask, value)."""
        t = self.table
        return SetFunction(self.ground, table=[fn(m, t[m]) for m in range(len(t))],
                           tolerance=self.tolerance, flags=flags, name=name)

    # -- arithmetic -----------------------------------------------------------
    def _binary(self, other, op, name):
        if isinstance(other, SetFunction):
            if other.ground != self.ground:
                raise GroundMismatch(f"{self.ground.atoms} vs {other.ground.atoms}")
            tol = _combine_tol(self.tolerance, other.tolerance)
            a, b = self.table, other.table
            if tol is not None:
                a, b = [float(x) for x in a], [float(x) for x in b]
            return SetFunction(self.ground, table=[op(x, y) for x, y in zip(a, b)], tolerance=tol,
                               name=name)
        c = self._coerce(other)
        return SetFunction(self.ground, table=[op(x, c) for x in self.table],
                           tolerance=self.tolerance, name=name)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y, "sum")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y, "difference")

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SetFunction(self.ground, table=[-x for x in self.table], tolerance=self.tolerance)

    def __mul__(self, c):
        if isinstance(c, SetFunction):
            return NotImplemented
        c = self._coerce(c)
        return SetFunction(self.ground, table=[c * x for x in self.table], tolerance=self.tolerance)

    __rmul__ = __mul__

    def normalized(self) -> "SetFunction":
        """φ − φ(∅)."""
        z = self.value(0)
        if z == 0:
            return self
        return self - z

    def equals(self, other: "SetFunction", tol=0) -> bool:
        if other.ground != self.ground:
            return False
        if tol:
            return all(abs(x - y) <= tol for x, y in zip(self.table, other.table))
        return self.table == other.table

    def first_difference(self, other: "SetFunction"):
        for m, (x, y) in enumerate(zip(self.table, other.table)):
            if x != y:
                return m
        return None

    def max_value(self):
        return max(self.table)

    def min_value(self):
        return min(self.table)

    def norm(self):
        """sup |φ|."""
        return max(abs(v) for v in self.table)

    def __repr__(self) -> str:
        label = self.name or "SetFunction"
        return f"<{label} on {list(self.ground.atoms)}{'' if self.exact else ' approx'}>"


def _combine_tol(a, b):
    if a is None and b is None:
        return None
    return (a or 0.0) + (b or 0.0)


def same_ground(*fns: SetFunction) -> GroundSet:
    g = fns[0].ground
    for f in fns[1:]:
        if f.ground != g:
            raise GroundMismatch(f"ground sets differ: {g.atoms} vs {f.ground.atoms}")
    return g


def zero(ground) -> SetFunction:
    return SetFunction.constant(ground, Fraction(0))
