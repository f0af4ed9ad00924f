"""Exact rational linear programming.

Problems have the form  max cᵀx  s.t.  A x ≤ b,  E x = e,  x free.
They are solved through the dual  min bᵀy  s.t.  Aᵀy = c,  y ≥ 0, which is
in standard form and has only as many rows as the primal has variables. A
dense Fraction tableau, two phases and Bland's rule guarantee termination.
The primal optimum is read off the final basis (the tight constraints) and
every answer is re-verified exactly: feasibility of both solutions and
equality of objective values. An unbounded dual ray is a Farkas certificate
that the primal is infeasible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InternalError
from .linalg import solve
from .rational import to_fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPProblem:
    c: list
    A_ub: list = field(default_factory=list)
    b_ub: list = field(default_factory=list)
    A_eq: list = field(default_factory=list)
    b_eq: list = field(default_factory=list)

    def __post_init__(self):
        self.c = [to_fraction(x) for x in self.c]
        k = len(self.c)
        self.A_ub = [[to_fraction(x) for x in r] for r in self.A_ub]
        self.A_eq = [[to_fraction(x) for x in r] for r in self.A_eq]
        self.b_ub = [to_fraction(x) for x in self.b_ub]
        self.b_eq = [to_fraction(x) for x in self.b_eq]
        for r in self.A_ub + self.A_eq:
            if len(r) != k:
                raise ValueError("constraint row length differs from the number of variables")
        if len(self.A_ub) != len(self.b_ub) or len(self.A_eq) != len(self.b_eq):
            raise ValueError("constraint/rhs count mismatch")

    def rows(self) -> tuple[list, list]:
        """All constraints as ≤ rows (equalities split in two)."""
        A = list(self.A_ub)
        b = list(self.b_ub)
        for r, v in zip(self.A_eq, self.b_eq):
            A.append(r)
            b.append(v)
            A.append([-x for x in r])
            b.append(-v)
        return A, b

    def solve(self) -> "LPSolution":
        return solve_lp(self)


@dataclass
class LPSolution:
    status: str
    x: list | None = None
    value: Fraction | None = None
    y: list | None = None  # dual multipliers on the ≤ rows (equalities split)
    basis: list | None = None  # tight rows defining x
    farkas: list | None = None  # y ≥ 0 with yᵀA = 0 and yᵀb < 0 when infeasible
    pivots: int = 0


def _pivot(T, obj, basis, r, c):
    row = T[r]
    piv = row[c]
    if piv != 1:
        inv = 1 / piv
        row = [x * inv for x in row]
        T[r] = row
    nz = [j for j, x in enumerate(row) if x]
    for i, Ti in enumerate(T):
        if i != r:
            f = Ti[c]
            if f:
                for j in nz:
                    Ti[j] -= f * row[j]
    f = obj[c]
    if f:
        for j in nz:
            obj[j] -= f * row[j]
    basis[r] = c


def _run(T, obj, basis, allowed: int, counter: list):
    """Minimize with Bland's rule over columns < allowed. Returns None or an unbounded column."""
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return None
        best = None
        for i, Ti in enumerate(T):
            a = Ti[enter]
            if a > 0:
                ratio = Ti[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return enter
        _pivot(T, obj, basis, best[1], enter)
        counter[0] += 1


def solve_lp(p: LPProblem) -> LPSolution:
    A, b = p.rows()
    c = p.c
    m, k = len(A), len(c)
    counter = [0]
    # dual rows: for each primal variable j, Σ_i A[i][j] y_i = c_j
    T = []
    for j in range(k):
        row = [A[i][j] for i in range(m)] + [Fraction(0)] * k + [c[j]]
        if c[j] < 0:
            row = [-x for x in row]
        row[m + j] = Fraction(1)
        T.append(row)
    basis = [m + j for j in range(k)]
    width = m + k
    obj = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(m):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    ray = _run(T, obj, basis, m, counter)
    if ray is not None or obj[-1] != 0:
        # phase 1 unbounded is impossible; a positive optimum means the dual is infeasible
        return _dual_infeasible(p, counter[0])
    # drive artificials out of the basis, dropping redundant rows
    dropped = []
    r = 0
    rowvar = list(range(k))
    while r < len(T):
        if basis[r] >= m:
            j = next((j for j in range(m) if T[r][j] != 0), None)
            if j is None:
                dropped.append(rowvar[r])
                del T[r], basis[r], rowvar[r]
                continue
            _pivot(T, obj, basis, r, j)
            counter[0] += 1
        r += 1
    # phase 2: min bᵀy
    obj = [Fraction(0)] * (width + 1)
    for j in range(m):
        obj[j] = b[j]
    for i, Ti in enumerate(T):
        cb = b[basis[i]]
        if cb:
            for j, x in enumerate(Ti):
                if x:
                    obj[j] -= cb * x
    ray = _run(T, obj, basis, m, counter)
    if ray is not None:
        y = [Fraction(0)] * m
        y[ray] = Fraction(1)
        for i, Ti in enumerate(T):
            y[basis[i]] = -Ti[ray]
        _verify_farkas(A, b, y)
        return LPSolution(INFEASIBLE, farkas=y, pivots=counter[0])
    y = [Fraction(0)] * m
    for i, Ti in enumerate(T):
        y[basis[i]] = Ti[-1]
    kept = [j for j in range(k) if j not in dropped]
    rows_B = list(basis)
    sub = [[A[i][j] for j in kept] for i in rows_B]
    xs = solve(sub, [b[i] for i in rows_B]) if kept else []
    if xs is None:
        raise InternalError("singular optimal basis")
    x = [Fraction(0)] * k
    for j, v in zip(kept, xs):
        x[j] = v
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    _verify_optimal(A, b, c, x, y, value)
    return LPSolution(OPTIMAL, x=x, value=value, y=y, basis=sorted(rows_B), pivots=counter[0])


def _dual_infeasible(p: LPProblem, pivots: int) -> LPSolution:
    """Dual infeasible: the primal is unbounded if feasible, else infeasible."""
    feas = solve_lp(LPProblem([0] * len(p.c), p.A_ub, p.b_ub, p.A_eq, p.b_eq))
    if feas.status == OPTIMAL:
        return LPSolution(UNBOUNDED, x=feas.x, pivots=pivots + feas.pivots)
    return LPSolution(INFEASIBLE, farkas=feas.farkas, pivots=pivots + feas.pivots)


def _verify_optimal(A, b, c, x, y, value):
    for i, row in enumerate(A):
        if sum(a * xi for a, xi in zip(row, x) if a) > b[i]:
            raise InternalError(f"LP primal solution violates row {i}")
    if any(v < 0 for v in y):
        raise InternalError("LP dual solution has a negative entry")
    for j in range(len(c)):
        if sum(A[i][j] * y[i] for i in range(len(A)) if y[i]) != c[j]:
            raise InternalError(f"LP dual solution violates column {j}")
    dual_value = sum((bi * yi for bi, yi in zip(b, y) if yi), Fraction(0))
    if dual_value != value:
        raise InternalError(f"LP duality gap {dual_value - value}")


def _verify_farkas(A, b, y):
    if any(v < 0 for v in y):
        raise InternalError("Farkas multipliers must be nonnegative")
    for j in range(len(A[0]) if A else 0):
        if sum(A[i][j] * y[i] for i in range(len(A)) if y[i]) != 0:
            raise InternalError("Farkas multipliers do not cancel the constraint matrix")
    if sum((bi * yi for bi, yi in zip(b, y) if yi), Fraction(0)) >= 0:
        raise InternalError("Farkas multipliers do not certify infeasibility")


def maximize(c: Sequence, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPSolution:
    return solve_lp(LPProblem(list(c), list(A_ub), list(b_ub), list(A_eq), list(b_eq)))
