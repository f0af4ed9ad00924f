"""Pure-Python subset-lattice kernels.

Tables are lists indexed by bitmask. These functions work on any ordered
numeric type (ints, Fractions, floats) and are the reference the compiled
kernels are tested against.
"""
from __future__ import annotations

from itertools import combinations


def pair_violation(t, n, slack=0):
    """First (S, T), S < T incomparable, with t[S|T] + t[S&T] > t[S] + t[T] + slack."""
    N = 1 << n
    for S in range(N):
        tS = t[S]
        for T in range(S + 1, N):
            I = S & T
            if I == S or I == T:
                continue
            if t[S | T] + t[I] > tS + t[T] + slack:
                return (S, T)
    return None


def local_violation(t, n, slack=0):
    """First (S+i, S+j) violating the local exchange form of submodularity."""
    N = 1 << n
    for S in range(N):
        tS = t[S]
        for i in range(n):
            bi = 1 << i
            if S & bi:
                continue
            for j in range(i + 1, n):
                bj = 1 << j
                if S & bj:
                    continue
                if t[S | bi | bj] + tS > t[S | bi] + t[S | bj] + slack:
                    return (S | bi, S | bj)
    return None


def monotone_violation(t, n, slack=0):
    """First (S, S+i) with t[S] > t[S+i] + slack (a witness against increasing)."""
    N = 1 << n
    for S in range(N):
        for i in range(n):
            b = 1 << i
            if not S & b and t[S] > t[S | b] + slack:
                return (S, S | b)
    return None


def subset_opt(t, n, maximize):
    """f[X] = opt over Y subset of X of t[Y]."""
    f = list(t)
    N = 1 << n
    for i in range(n):
        b = 1 << i
        for X in range(N):
            if X & b:
                a, c = f[X], f[X ^ b]
                if (c > a) if maximize else (c < a):
                    f[X] = c
    return f


def superset_opt(t, n, maximize):
    """f[X] = opt over Y superset of X of t[Y]."""
    f = list(t)
    N = 1 << n
    for i in range(n):
        b = 1 << i
        for X in range(N):
            if not X & b:
                a, c = f[X], f[X | b]
                if (c > a) if maximize else (c < a):
                    f[X] = c
    return f


def zeta_lower(t, n):
    """f[X] = sum over Y subset of X of t[Y]."""
    f = list(t)
    N = 1 << n
    for i in range(n):
        b = 1 << i
        for X in range(N):
            if X & b:
                f[X] += f[X ^ b]
    return f


def zeta_upper(t, n):
    """f[X] = sum over Y superset of X of t[Y]."""
    f = list(t)
    N = 1 << n
    for i in range(n):
        b = 1 << i
        for X in range(N):
            if not X & b:
                f[X] += f[X | b]
    return f


def mobius_lower(t, n):
    """Inverse of zeta_lower."""
    f = list(t)
    N = 1 << n
    for i in range(n):
        b = 1 << i
        for X in range(N):
            if X & b:
                f[X] -= f[X ^ b]
    return f


def mobius_upper(t, n):
    """Inverse of zeta_upper: f[X] = sum over Y superset of X of (-1)^|Y-X| t[Y]."""
    f = list(t)
    N = 1 << n
    for i in range(n):
        b = 1 << i
        for X in range(N):
            if not X & b:
                f[X] -= f[X | b]
    return f


def convolve(a, b, n, maximize):
    """c[X] = opt over Y subset of X of a[Y] + b[X-Y]; arg[X] = smallest optimal Y."""
    N = 1 << n
    c = [None] * N
    arg = [0] * N
    for X in range(N):
        best = None
        bestY = 0
        Y = 0
        while True:
            v = a[Y] + b[X ^ Y]
            if best is None or ((v > best) if maximize else (v < best)):
                best, bestY = v, Y
            if Y == X:
                break
            Y = (Y - X) & X
        c[X] = best
        arg[X] = bestY
    return c, arg


def chain_dp(t, n, positive_only):
    """best[X] = max over proper Y of X of best[Y] + g(t[X] - t[Y]), best[0] = 0.

    g is |.| (total variation) or |.|_+ (positive variation).
    """
    N = 1 << n
    zero = t[0] - t[0]
    best = [zero] * N
    for X in range(1, N):
        tX = t[X]
        m = None
        Y = 0
        while Y != X:
            d = tX - t[Y]
            if positive_only:
                if d < 0:
                    d = zero
            elif d < 0:
                d = -d
            v = best[Y] + d
            if m is None or v > m:
                m = v
            Y = (Y - X) & X
        best[X] = m
    return best


def partition_dp(t, n, maximize):
    """best[X] = opt over partitions of X into nonempty blocks of the sum of t[block].

    choice[X] is the block containing the lowest atom of X (smallest optimal mask).
    """
    N = 1 << n
    zero = t[0] - t[0]
    best = [zero] * N
    choice = [0] * N
    for X in range(1, N):
        low = X & -X
        rest = X ^ low
        m = None
        mB = 0
        R = 0
        while True:
            B = R | low
            v = t[B] + best[X ^ B]
            if m is None or ((v > m) if maximize else (v < m)):
                m, mB = v, B
            if R == rest:
                break
            R = (R - rest) & rest
        best[X] = m
        choice[X] = mB
    return best, choice


def alternating_violation(t, n, kmax):
    """Search Choquet alternating sums over (A0; A1..Ak), k <= kmax.

    Returns (A0, (A1, ..., Ak), value) for the first tuple whose alternating sum
    sum over K of (-1)^|K| t[A0 | union A_K] is positive, else None. A_i range over
    distinct strict supersets of A0 in increasing mask order.
    """
    N = 1 << n
    for A0 in range(N):
        sups = [X for X in range(N) if X & A0 == A0 and X != A0]
        for k in range(1, kmax + 1):
            for fam in combinations(sups, k):
                unions = [A0]
                signs = [1]
                for B in fam:
                    unions = unions + [u | B for u in unions]
                    signs = signs + [-s for s in signs]
                s = 0
                for u, sg in zip(unions, signs):
                    s += sg * t[u]
                if s > 0:
                    return (A0, fam, s)
    return None
