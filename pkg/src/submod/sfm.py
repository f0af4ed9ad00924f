"""Exact minimization, positive part (Dilworth truncation) and the majorizing charge."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import kernels
from .calculus import _scaled, _unscale, restrict
from .core.ground import GroundSet, check_size, popcount, submasks
from .core.generators import gen_coverage
from .core.properties import check_matroid_rank, check_subadditive, require_increasing, require_normalized
from .core.relation import graph_incidence
from .core.setfunction import SetFunction
from .errors import BadArgument, InternalError, NotSubadditive
from .rational import fmt, pos

PARTITION_MAX_N = 12


@dataclass(frozen=True)
class MinimizationResult:
    minimizer: int
    value: Fraction
    method: str
    certified: bool
    ground: GroundSet = field(repr=False, default=None)

    def to_json(self) -> dict:
        return {"minimizer": self.ground.labels(self.minimizer) if self.ground else self.minimizer,
                "value": fmt(self.value), "method": self.method, "certified": self.certified}


@dataclass(frozen=True)
class PartitionResult:
    partition: tuple
    value: Fraction
    ground: GroundSet = field(repr=False, default=None)

    def to_json(self) -> dict:
        blocks = [self.ground.labels(b) for b in self.partition] if self.ground else list(self.partition)
        return {"partition": blocks, "value": fmt(self.value)}


def minimize(phi: SetFunction, over=None) -> MinimizationResult:
    """Global minimum of φ over subsets of `over` (default J); ties go to the smallest mask."""
    g = phi.ground
    U = g.full if over is None else g.mask(over)
    check_size(popcount(U), what="exhaustive minimization")
    certified = popcount(U) <= 20
    t = phi.table
    best, arg = None, 0
    for X in submasks(U):
        v = t[X]
        if best is None or v < best:
            best, arg = v, X
    return MinimizationResult(arg, best, "exhaustive", certified and g.n <= 20 and _certified_env(), g)


def _certified_env() -> bool:
    from .core.ground import is_certified_limit
    return is_certified_limit()


def _blocks(choice: Sequence[int], X: int) -> tuple:
    out = []
    while X:
        B = choice[X]
        out.append(B)
        X ^= B
    return tuple(out)


def _partition_tables(phi: SetFunction, transform, maximize: bool):
    check_size(phi.n, PARTITION_MAX_N, what="partition enumeration")
    src = SetFunction(phi.ground, table=[transform(v) for v in phi.table])
    (t,), d = _scaled(src)
    best, choice = kernels.partition_dp(t, phi.n, maximize)
    return _unscale(best, d), choice, src


def _partition_result(phi_blocks: SetFunction, best, choice, U: int) -> PartitionResult:
    g = phi_blocks.ground
    if U == 0:
        return PartitionResult((), Fraction(0), g)
    blocks = _blocks(choice, U)
    # prefer the trivial partition {U} when it is optimal
    if phi_blocks.value(U) == best[U]:
        blocks = (U,)
    total = sum((phi_blocks.value(B) for B in blocks), Fraction(0))
    if total != best[U]:
        raise InternalError("partition reconstruction disagrees with the DP value")
    return PartitionResult(blocks, best[U], g)


def positive_part_function(phi: SetFunction) -> SetFunction:
    """φ∘ tabulated: min over partitions of X of Σ |φ(block)|₊, with φ∘(∅) = |φ(∅)|₊."""
    best, _, _ = _partition_tables(phi, pos, False)
    best[0] = pos(phi.value(0))
    return SetFunction(phi.ground, table=best, name=f"{phi.name or 'phi'}_pos")


def positive_part(phi: SetFunction, U=None) -> PartitionResult:
    g = phi.ground
    U = g.full if U is None else g.mask(U)
    best, choice, src = _partition_tables(phi, pos, False)
    if U == 0:
        return PartitionResult((), pos(phi.value(0)), g)
    res = _partition_result(src, best, choice, U)
    if res.value > pos(phi.value(U)) or res.value < 0:
        raise InternalError("positive part exceeds |φ|₊ or is negative")
    return res


def _graph_rank_source(graph) -> SetFunction:
    """ρ(X) = number of vertices covered by the edge set X."""
    if isinstance(graph, SetFunction):
        return graph
    if isinstance(graph, Mapping):
        edges = {str(k): tuple(v) for k, v in graph.items()}
    else:
        edges = {f"e{i + 1}": tuple(e) for i, e in enumerate(graph)}
    return gen_coverage(graph_incidence(edges))


def dilworth_truncation_rank(graph) -> SetFunction:
    """(ρ − 1)∘ for ρ = vertex coverage of edges (or a given setfunction ρ), certified as a matroid rank."""
    rho = _graph_rank_source(graph)
    r = positive_part_function(rho - 1)
    r = SetFunction(rho.ground, table=r.table, name="dilworth_truncation")
    c = check_matroid_rank(r)
    if not c:
        raise InternalError(f"Dilworth truncation is not a matroid rank: {c.witness}", witness=c.witness)
    return r.with_flags({"submodular", "increasing", "normalized"})


def majorizer(phi: SetFunction, U=None) -> PartitionResult:
    """φ^⊓(U): max over partitions of U of Σ φ(block); additive for increasing subadditive φ."""
    require_increasing(phi)
    require_normalized(phi)
    c = check_subadditive(phi)
    if not c:
        raise NotSubadditive(f"φ is not subadditive: {c.witness}", witness=c.witness)
    g = phi.ground
    U = g.full if U is None else g.mask(U)
    best, choice, src = _partition_tables(phi, lambda v: v, True)
    res = _partition_result(src, best, choice, U) if U else PartitionResult((), Fraction(0), g)
    singles = [phi.value(1 << i) for i in range(g.n)]
    for X in range(1, g.size):
        s = sum((singles[i] for i in range(g.n) if X >> i & 1), Fraction(0))
        if best[X] != s:
            raise InternalError(f"majorizer is not additive at {g.fmt(X)}")
        if phi.value(X) > best[X]:
            raise InternalError(f"majorizer falls below φ at {g.fmt(X)}")
    return res


def majorizer_charge(phi: SetFunction):
    """The majorizing charge φ^⊓ as a Charge."""
    from .polyhedra import Charge
    majorizer(phi)
    return Charge(phi.ground, [phi.value(1 << i) for i in range(phi.n)])
