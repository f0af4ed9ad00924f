"""Exhaustive certification of setfunction properties.

Each check_* returns a Certificate; each require_* raises the matching error
with the same witness when the property fails.
"""
from __future__ import annotations

from .. import kernels
from ..errors import (NormalizationViolated, NotAMatroidRank, NotIncreasing, NotSubadditive,
                      NotSubmodular, PreconditionFailed)
from ..rational import fmt
from .certificate import Certificate, holds, violated
from .ground import check_size, submasks
from .setfunction import SetFunction


def _val(v):
    return fmt(v)


def _neg_table(phi: SetFunction):
    t, d = phi.int_table()
    return [-x for x in t]


def _pair_witness(phi, S, T, sign=1):
    g = phi.ground
    lhs = phi.value(S | T) + phi.value(S & T)
    rhs = phi.value(S) + phi.value(T)
    return {"S": g.labels(S), "T": g.labels(T), "lhs": _val(lhs), "rhs": _val(rhs)}


def check_submodular(phi: SetFunction, method: str = "pairs") -> Certificate:
    """Exhaustive check of φ(S∪T)+φ(S∩T) ≤ φ(S)+φ(T).

    method="pairs" scans all incomparable pairs; "local" uses the equivalent
    exchange form φ(S+i)+φ(S+j) ≥ φ(S+i+j)+φ(S), which is O(n²2^n).
    """
    check_size(phi.n, what="submodularity check")
    t, _ = phi.int_table()
    kern = kernels.pair_violation if method == "pairs" else kernels.local_violation
    res = kern(t, phi.n, phi.slack(2))
    if res is None:
        return holds("submodular", details={"method": method})
    return violated("submodular", _pair_witness(phi, *res), details={"method": method})


def check_supermodular(phi: SetFunction, method: str = "pairs") -> Certificate:
    check_size(phi.n, what="supermodularity check")
    t, _ = phi.int_table()
    kern = kernels.pair_violation if method == "pairs" else kernels.local_violation
    res = kern([-x for x in t], phi.n, phi.slack(2))
    if res is None:
        return holds("supermodular", details={"method": method})
    return violated("supermodular", _pair_witness(phi, *res), details={"method": method})


def check_modular(phi: SetFunction) -> Certificate:
    sub = check_submodular(phi, "local")
    if not sub:
        return violated("modular", sub.witness)
    sup = check_supermodular(phi, "local")
    if not sup:
        return violated("modular", sup.witness)
    return holds("modular")


def check_increasing(phi: SetFunction) -> Certificate:
    check_size(phi.n, what="monotonicity check")
    t, _ = phi.int_table()
    res = kernels.monotone_violation(t, phi.n, phi.slack(2))
    if res is None:
        return holds("increasing")
    X, Y = res
    g = phi.ground
    return violated("increasing", {"X": g.labels(X), "Y": g.labels(Y),
                                   "phi_X": _val(phi.value(X)), "phi_Y": _val(phi.value(Y))})


def check_decreasing(phi: SetFunction) -> Certificate:
    check_size(phi.n, what="monotonicity check")
    t, _ = phi.int_table()
    res = kernels.monotone_violation([-x for x in t], phi.n, phi.slack(2))
    if res is None:
        return holds("decreasing")
    X, Y = res
    g = phi.ground
    return violated("decreasing", {"X": g.labels(X), "Y": g.labels(Y),
                                   "phi_X": _val(phi.value(X)), "phi_Y": _val(phi.value(Y))})


def check_normalized(phi: SetFunction) -> Certificate:
    z = phi.value(0)
    if abs(z) <= phi.slack():
        return holds("normalized")
    return violated("normalized", {"phi_empty": _val(z)})


def check_subadditive(phi: SetFunction) -> Certificate:
    """φ(X∪Y) ≤ φ(X)+φ(Y) over all disjoint nonempty X, Y."""
    check_size(phi.n, 14, what="subadditivity check")
    t = phi.table
    full = phi.full
    slack = phi.slack(2)
    for X in range(1, full + 1):
        rest = full & ~X
        for Y in submasks(rest):
            if Y == 0 or Y < X:
                continue
            if t[X | Y] > t[X] + t[Y] + slack:
                g = phi.ground
                return violated("subadditive", {"X": g.labels(X), "Y": g.labels(Y),
                                                "lhs": _val(t[X | Y]), "rhs": _val(t[X] + t[Y])})
    return holds("subadditive")


def check_matroid_rank(phi: SetFunction) -> Certificate:
    """Integer valued, r(∅)=0, unit increase, submodular."""
    t = phi.table
    g = phi.ground
    if t[0] != 0:
        return violated("matroid_rank", {"axiom": "r(empty)=0", "value": _val(t[0])})
    for m, v in enumerate(t):
        if not phi.exact or v.denominator != 1:
            return violated("matroid_rank", {"axiom": "integer", "X": g.labels(m), "value": _val(v)})
    for m in range(g.size):
        for i in range(g.n):
            b = 1 << i
            if not m & b:
                d = t[m | b] - t[m]
                if d not in (0, 1):
                    return violated("matroid_rank", {"axiom": "unit increase", "X": g.labels(m),
                                                     "atom": g.atoms[i], "increment": _val(d)})
    sub = check_submodular(phi, "local")
    if not sub:
        return violated("matroid_rank", {"axiom": "submodular", **sub.witness})
    return holds("matroid_rank")


def check_property(phi: SetFunction, name: str) -> Certificate:
    """Dispatch by property name (strong submodularity lives in geometry)."""
    if name == "strongly_submodular":
        from ..geometry import certify_strong_submodular
        return certify_strong_submodular(phi)
    table = {
        "submodular": check_submodular,
        "supermodular": check_supermodular,
        "modular": check_modular,
        "increasing": check_increasing,
        "decreasing": check_decreasing,
        "normalized": check_normalized,
        "subadditive": check_subadditive,
        "matroid_rank": check_matroid_rank,
    }
    if name not in table:
        raise PreconditionFailed(f"unknown property {name!r}")
    return table[name](phi)


# -- require helpers -----------------------------------------------------------

def require_submodular(phi: SetFunction, what: str = "input") -> None:
    c = check_submodular(phi, "local")
    if not c:
        raise NotSubmodular(f"{what} is not submodular: {c.witness}", witness=c.witness)


def require_increasing(phi: SetFunction, what: str = "input") -> None:
    c = check_increasing(phi)
    if not c:
        raise NotIncreasing(f"{what} is not increasing: {c.witness}", witness=c.witness)


def require_normalized(phi: SetFunction, what: str = "input") -> None:
    c = check_normalized(phi)
    if not c:
        raise NormalizationViolated(f"{what} has φ(∅) ≠ 0: {c.witness}", witness=c.witness)


def require_subadditive(phi: SetFunction, what: str = "input") -> None:
    c = check_subadditive(phi)
    if not c:
        raise NotSubadditive(f"{what} is not subadditive: {c.witness}", witness=c.witness)


def require_matroid_rank(phi: SetFunction, what: str = "input") -> None:
    c = check_matroid_rank(phi)
    if not c:
        raise NotAMatroidRank(f"{what} is not a matroid rank function: {c.witness}", witness=c.witness)
