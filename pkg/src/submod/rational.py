"""Exact rational helpers and the "p/q" string format."""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Number = Union[int, Fraction, float]


def to_fraction(x) -> Fraction:
    """Convert ints, Fractions, and "p/q" strings to Fraction; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def fmt(x) -> str:
    """Serialize a rational as "p/q" (always with a denominator)."""
    if isinstance(x, float):
        return repr(x)
    q = to_fraction(x)
    return f"{q.numerator}/{q.denominator}"


def parse(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"cannot parse rational from {s!r}")


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        den = v.denominator
        if den != 1:
            d = d * den // math.gcd(d, den)
    return d


def pos(x):
    """Positive part |x|_+."""
    return x if x > 0 else x * 0
