"""Exact rational linear algebra: rank, solve, determinant, symmetric inertia."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rational import to_fraction


def _matrix(A) -> list[list[Fraction]]:
    return [[to_fraction(x) for x in row] for row in A]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix given as a list of rows."""
    M = _matrix(rows)
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        for i in range(r + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / pr[c]
                Mi = M[i]
                for j in range(c, ncols):
                    Mi[j] -= f * pr[j]
        r += 1
        if r == len(M):
            break
    return r


def det(A) -> Fraction:
    M = _matrix(A)
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                for j in range(c, n):
                    M[i][j] -= f * M[c][j]
    return d


def solve(A, b) -> list[Fraction] | None:
    """Solve the square system A x = b exactly; None if A is singular."""
    n = len(A)
    M = [[to_fraction(x) for x in row] + [to_fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def quad_form(A, x) -> Fraction:
    return sum(x[i] * sum(A[i][j] * x[j] for j in range(len(x)) if x[j]) for i in range(len(x)) if x[i])


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int
    pivots: tuple  # nonzero diagonal entries of the congruent diagonal form
    positive_direction: tuple | None  # x with xᵀAx > 0, if any
    negative_direction: tuple | None

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


def inertia(A) -> Inertia:
    """Exact inertia of a symmetric rational matrix by LDLᵀ congruence.

    Diagonal pivoting; when every remaining diagonal entry is zero but an
    off-diagonal entry a_ij is not, row/column j is added to i first, making
    the diagonal 2a_ij ≠ 0. A transformation T with T A Tᵀ diagonal is kept,
    so each pivot comes with a direction vector realizing its sign.
    """
    S = _matrix(A)
    n = len(S)
    for i in range(n):
        for j in range(i):
            if S[i][j] != S[j][i]:
                raise ValueError("matrix is not symmetric")
    T = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    active = list(range(n))
    pos = neg = 0
    pivots = []
    pdir = ndir = None
    while active:
        k = next((i for i in active if S[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i < j and S[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # congruence: row_i += row_j, col_i += col_j
            for c in range(n):
                S[i][c] += S[j][c]
            for r in range(n):
                S[r][i] += S[r][j]
            T[i] = [x + y for x, y in zip(T[i], T[j])]
            k = i
        d = S[k][k]
        Sk = S[k]
        for i in active:
            if i == k or S[i][k] == 0:
                continue
            f = S[i][k] / d
            Si = S[i]
            for c in active:
                if Sk[c]:
                    Si[c] -= f * Sk[c]
            for r in active:
                if r != i:
                    S[r][i] = S[i][r]
            # column update for the symmetric partner
            Ti, Tk = T[i], T[k]
            T[i] = [x - f * y for x, y in zip(Ti, Tk)]
        active.remove(k)
        for i in active:
            S[i][k] = S[k][i] = Fraction(0)
        pivots.append(d)
        if d > 0:
            pos += 1
            if pdir is None:
                pdir = tuple(T[k])
        else:
            neg += 1
            if ndir is None:
                ndir = tuple(T[k])
    return Inertia(pos, neg, n - pos - neg, tuple(pivots), pdir, ndir)


def is_positive_definite(A) -> tuple[bool, int | None]:
    """Unpivoted LDLᵀ; PD iff every pivot is positive. Returns (ok, first bad index)."""
    S = _matrix(A)
    n = len(S)
    for i in range(n):
        for j in range(i):
            if S[i][j] != S[j][i]:
                return False, i
    for k in range(n):
        d = S[k][k]
        if d <= 0:
            return False, k
        for i in range(k + 1, n):
            if S[i][k] != 0:
                f = S[i][k] / d
                for j in range(k + 1, n):
                    S[i][j] -= f * S[k][j]
    return True, None
