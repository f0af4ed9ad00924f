"""Finite ground sets and bitmask subset encoding."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import BadArgument, TooLarge

DEFAULT_MAX_N = 20


def max_n() -> int:
    """Soft ground-size limit for enumeration-backed operations (env SUBMOD_MAX_N)."""
    raw = os.environ.get("SUBMOD_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError as exc:
        raise BadArgument(f"SUBMOD_MAX_N must be an integer, got {raw!r}") from exc


def is_certified_limit() -> bool:
    """False when the soft limit was raised above the default."""
    return max_n() <= DEFAULT_MAX_N


def check_size(n: int, limit: int | None = None, what: str = "operation") -> None:
    """Raise TooLarge if n exceeds the operation-specific limit (capped by the soft limit)."""
    cap = max_n()
    if limit is not None and max_n() <= DEFAULT_MAX_N:
        cap = min(cap, limit)
    elif limit is not None:
        cap = max(cap, limit)
    if n > cap:
        raise TooLarge(f"{what}: ground size {n} exceeds limit {cap}", witness={"n": n, "limit": cap})


def popcount(x: int) -> int:
    return bin(x).count("1")


def submasks(mask: int) -> Iterable[int]:
    """All submasks of mask in increasing order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def supermasks(mask: int, full: int) -> Iterable[int]:
    """All supermasks of mask within full, in increasing order."""
    free = full & ~mask
    for s in submasks(free):
        yield mask | s


@dataclass(frozen=True)
class GroundSet:
    atoms: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, atoms: Iterable[str]):
        atoms = tuple(atoms)
        for a in atoms:
            if not isinstance(a, str) or not a:
                raise BadArgument(f"atom labels must be non-empty strings, got {a!r}")
        if len(set(atoms)) != len(atoms):
            raise BadArgument(f"atom labels must be distinct: {atoms}")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(atoms)})

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def full(self) -> int:
        return (1 << len(self.atoms)) - 1

    @property
    def size(self) -> int:
        """Number of subsets, 2^n."""
        return 1 << len(self.atoms)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise BadArgument(f"unknown atom {label!r}") from None

    def __contains__(self, label) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def mask(self, subset) -> int:
        """Encode labels (any iterable) or an int mask as a bitmask."""
        if isinstance(subset, int) and not isinstance(subset, bool):
            if subset < 0 or subset > self.full:
                raise BadArgument(f"mask {subset} out of range for n={self.n}")
            return subset
        if isinstance(subset, str):
            subset = (subset,)
        m = 0
        for label in subset:
            m |= 1 << self.index(label)
        return m

    def labels(self, mask: int) -> list[str]:
        return [a for i, a in enumerate(self.atoms) if mask >> i & 1]

    def complement(self, mask: int) -> int:
        return self.full & ~mask

    def subsets(self) -> range:
        return range(self.size)

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.labels(mask)) + "}"


def as_ground(g) -> GroundSet:
    if isinstance(g, GroundSet):
        return g
    if isinstance(g, int):
        return GroundSet(str(i) for i in range(g))
    return GroundSet(g)


def labels_to_ground(seq: Sequence[str]) -> GroundSet:
    return GroundSet(seq)
