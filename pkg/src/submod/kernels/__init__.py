"""Kernel dispatch: compiled int64 kernels when available and safe, else pure Python.

The backend is chosen at import. Set SUBMOD_KERNELS=python to force the
fallback. Integer tables whose magnitudes could overflow int64 in a given
kernel are always routed to the Python path, which uses unbounded ints.
"""
from __future__ import annotations

import os
from contextlib import contextmanager

from . import _pykernels as py

try:  # pragma: no cover - depends on build
    from . import _ckernels as _c
    import numpy as _np
except ImportError:  # pragma: no cover
    _c = None
    _np = None

HAVE_COMPILED = _c is not None
_LIMIT = 1 << 62
_state = {"backend": "python" if (os.environ.get("SUBMOD_KERNELS") == "python" or _c is None) else "compiled"}


def backend() -> str:
    return _state["backend"]


@contextmanager
def use_backend(name: str):
    """Temporarily select "compiled" or "python" kernels."""
    if name not in ("compiled", "python"):
        raise ValueError(name)
    if name == "compiled" and _c is None:
        raise RuntimeError("compiled kernels are not available")
    old = _state["backend"]
    _state["backend"] = name
    try:
        yield
    finally:
        _state["backend"] = old


def _int64(t, factor: int):
    """int64 array of t if compiled kernels are active and no overflow is possible."""
    if _state["backend"] != "compiled":
        return None
    m = 0
    for v in t:
        if type(v) is not int:
            return None
        if v > m:
            m = v
        elif -v > m:
            m = -v
    if m * factor >= _LIMIT:
        return None
    return _np.fromiter(t, dtype=_np.int64, count=len(t))


def _pair(res):
    return None if res is None else (int(res[0]), int(res[1]))


def pair_violation(t, n, slack=0):
    a = _int64(t, 4) if slack == 0 else None
    if a is not None:
        return _pair(_c.pair_violation(a, n))
    return py.pair_violation(t, n, slack)


def local_violation(t, n, slack=0):
    a = _int64(t, 4) if slack == 0 else None
    if a is not None:
        return _pair(_c.local_violation(a, n))
    return py.local_violation(t, n, slack)


def monotone_violation(t, n, slack=0):
    a = _int64(t, 2) if slack == 0 else None
    if a is not None:
        return _pair(_c.monotone_violation(a, n))
    return py.monotone_violation(t, n, slack)


def subset_opt(t, n, maximize):
    a = _int64(t, 1)
    if a is not None:
        return _c.subset_opt(a, n, maximize).tolist()
    return py.subset_opt(t, n, maximize)


def superset_opt(t, n, maximize):
    a = _int64(t, 1)
    if a is not None:
        return _c.superset_opt(a, n, maximize).tolist()
    return py.superset_opt(t, n, maximize)


def _transform(t, n, upper, sign):
    a = _int64(t, 1 << (n + 1))
    if a is not None:
        return _c.transform(a, n, upper, sign).tolist()
    if upper:
        return py.zeta_upper(t, n) if sign > 0 else py.mobius_upper(t, n)
    return py.zeta_lower(t, n) if sign > 0 else py.mobius_lower(t, n)


def zeta_upper(t, n):
    return _transform(t, n, True, 1)


def zeta_lower(t, n):
    return _transform(t, n, False, 1)


def mobius_upper(t, n):
    return _transform(t, n, True, -1)


def mobius_lower(t, n):
    return _transform(t, n, False, -1)


def convolve(a, b, n, maximize):
    aa = _int64(a, 4)
    bb = _int64(b, 4) if aa is not None else None
    if aa is not None and bb is not None:
        c, arg = _c.convolve(aa, bb, n, maximize)
        return c.tolist(), arg.tolist()
    return py.convolve(a, b, n, maximize)


def chain_dp(t, n, positive_only):
    a = _int64(t, 4 * (n + 1))
    if a is not None:
        return _c.chain_dp(a, n, positive_only).tolist()
    return py.chain_dp(t, n, positive_only)


def partition_dp(t, n, maximize):
    a = _int64(t, 2 * (n + 1))
    if a is not None:
        best, choice = _c.partition_dp(a, n, maximize)
        return best.tolist(), choice.tolist()
    return py.partition_dp(t, n, maximize)


def alternating_violation(t, n, kmax):
    a = _int64(t, 1 << (kmax + 1)) if n <= 12 and kmax <= 12 else None
    if a is not None:
        res = _c.alternating_violation(a, n, kmax)
        if res is None:
            return None
        return (int(res[0]), tuple(int(x) for x in res[1]), int(res[2]))
    return py.alternating_violation(t, n, kmax)
