# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 subset-lattice kernels.

Signatures mirror _pykernels; inputs are int64 buffers whose magnitudes the
dispatcher has checked leave headroom for every sum formed here.
"""
import numpy as np
from libc.stdint cimport int64_t



def pair_violation(const int64_t[::1] t, int n):
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    cdef Py_ssize_t S, T, I
    cdef int64_t tS
    for S in range(N):
        tS = t[S]
        for T in range(S + 1, N):
            I = S & T
            if I == S or I == T:
                continue
            if t[S | T] + t[I] > tS + t[T]:
                return (S, T)
    return None


def local_violation(const int64_t[::1] t, int n):
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    cdef Py_ssize_t S, bi, bj
    cdef int i, j
    for S in range(N):
        for i in range(n):
            bi = (<Py_ssize_t>1) << i
            if S & bi:
                continue
            for j in range(i + 1, n):
                bj = (<Py_ssize_t>1) << j
                if S & bj:
                    continue
                if t[S | bi | bj] + t[S] > t[S | bi] + t[S | bj]:
                    return (S | bi, S | bj)
    return None


def monotone_violation(const int64_t[::1] t, int n):
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    cdef Py_ssize_t S, b
    cdef int i
    for S in range(N):
        for i in range(n):
            b = (<Py_ssize_t>1) << i
            if not (S & b) and t[S] > t[S | b]:
                return (S, S | b)
    return None


def subset_opt(const int64_t[::1] t, int n, bint maximize):
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    out = np.array(t, dtype=np.int64)
    cdef int64_t[::1] f = out
    cdef Py_ssize_t X, b
    cdef int i
    for i in range(n):
        b = (<Py_ssize_t>1) << i
        for X in range(N):
            if X & b:
                if maximize:
                    if f[X ^ b] > f[X]:
                        f[X] = f[X ^ b]
                elif f[X ^ b] < f[X]:
                    f[X] = f[X ^ b]
    return out


def superset_opt(const int64_t[::1] t, int n, bint maximize):
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    out = np.array(t, dtype=np.int64)
    cdef int64_t[::1] f = out
    cdef Py_ssize_t X, b
    cdef int i
    for i in range(n):
        b = (<Py_ssize_t>1) << i
        for X in range(N):
            if not (X & b):
                if maximize:
                    if f[X | b] > f[X]:
                        f[X] = f[X | b]
                elif f[X | b] < f[X]:
                    f[X] = f[X | b]
    return out


def transform(const int64_t[::1] t, int n, bint upper, int sign):
    """Zeta (sign=+1) or Mobius (sign=-1) transform, lower or upper."""
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    out = np.array(t, dtype=np.int64)
    cdef int64_t[::1] f = out
    cdef Py_ssize_t X, b
    cdef int i
    for i in range(n):
        b = (<Py_ssize_t>1) << i
        for X in range(N):
            if upper:
                if not (X & b):
                    f[X] += sign * f[X | b]
            elif X & b:
                f[X] += sign * f[X ^ b]
    return out


def convolve(const int64_t[::1] a, const int64_t[::1] bb, int n, bint maximize):
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    out = np.empty(N, dtype=np.int64)
    args = np.empty(N, dtype=np.int64)
    cdef int64_t[::1] c = out
    cdef int64_t[::1] arg = args
    cdef Py_ssize_t X, Y, bestY
    cdef int64_t v, best
    for X in range(N):
        best = a[0] + bb[X]
        bestY = 0
        Y = 0
        while Y != X:
            Y = (Y - X) & X
            v = a[Y] + bb[X ^ Y]
            if (v > best) if maximize else (v < best):
                best = v
                bestY = Y
        c[X] = best
        arg[X] = bestY
    return out, args


def chain_dp(const int64_t[::1] t, int n, bint positive_only):
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    out = np.zeros(N, dtype=np.int64)
    cdef int64_t[::1] best = out
    cdef Py_ssize_t X, Y
    cdef int64_t d, v, m
    for X in range(1, N):
        Y = 0
        m = 0
        while Y != X:
            d = t[X] - t[Y]
            if d < 0:
                d = 0 if positive_only else -d
            v = best[Y] + d
            if Y == 0 or v > m:
                m = v
            Y = (Y - X) & X
        best[X] = m
    return out


def partition_dp(const int64_t[::1] t, int n, bint maximize):
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    out = np.zeros(N, dtype=np.int64)
    choices = np.zeros(N, dtype=np.int64)
    cdef int64_t[::1] best = out
    cdef int64_t[::1] choice = choices
    cdef Py_ssize_t X, low, rest, R, B, mB
    cdef int64_t v, m
    for X in range(1, N):
        low = X & -X
        rest = X ^ low
        m = t[low] + best[X ^ low]
        mB = low
        R = 0
        while R != rest:
            R = (R - rest) & rest
            B = R | low
            v = t[B] + best[X ^ B]
            if (v > m) if maximize else (v < m):
                m = v
                mB = B
        best[X] = m
        choice[X] = mB
    return out, choices


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef int64_t _alt_sum(const int64_t[::1] t, int64_t* unions, int k) nogil:
    cdef int64_t s = 0
    cdef Py_ssize_t j, m = (<Py_ssize_t>1) << k
    cdef int parity
    for j in range(m):
        parity = __builtin_popcountll(j) & 1
        if parity:
            s -= t[unions[j]]
        else:
            s += t[unions[j]]
    return s


def alternating_violation(const int64_t[::1] t, int n, int kmax):
    cdef Py_ssize_t N = (<Py_ssize_t>1) << n
    cdef Py_ssize_t A0, X
    cdef int k, depth, m, j
    cdef int64_t s
    cdef int64_t sups[1 << 12]
    cdef int idx[12]
    cdef int64_t unions[1 << 12]
    if n > 12 or kmax > 12:
        raise ValueError("alternating_violation: n <= 12 and kmax <= 12 required")
    for A0 in range(N):
        m = 0
        for X in range(N):
            if (X & A0) == A0 and X != A0:
                sups[m] = X
                m += 1
        unions[0] = A0
        for k in range(1, kmax + 1):
            if k > m:
                break
            # iterate combinations idx[0] < ... < idx[k-1] in lexicographic order
            for j in range(k):
                idx[j] = j
            while True:
                for depth in range(k):
                    for j in range(1 << depth):
                        unions[(1 << depth) + j] = unions[j] | sups[idx[depth]]
                s = _alt_sum(t, unions, k)
                if s > 0:
                    return (A0, tuple(sups[idx[j]] for j in range(k)), s)
                # advance
                j = k - 1
                while j >= 0 and idx[j] == m - k + j:
                    j -= 1
                if j < 0:
                    break
                idx[j] += 1
                for depth in range(j + 1, k):
                    idx[depth] = idx[depth - 1] + 1
    return None
