"""Generators for the standard families of (sub/super)modular setfunctions."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .. import kernels
from ..errors import (BadArgument, DuplicateEntry, IncompleteTable, InvalidDistribution,
                      InvalidKernel, NegativeCapacity, NotAnIdeal, NotConcave, NotPD, ShapeError,
                      TooLarge)
from ..linalg import det, is_positive_definite, rank, solve
from ..rational import fmt, to_fraction
from .ground import GroundSet, as_ground
from .relation import Relation
from .setfunction import SetFunction

APPROX_TOL = 1e-9


def _key_mask(ground: GroundSet, key) -> int:
    if isinstance(key, int) and not isinstance(key, bool):
        return ground.mask(key)
    if isinstance(key, str):
        return ground.mask((key,))
    return ground.mask(key)


def make_table_function(ground, values: Mapping) -> SetFunction:
    """Tabulated setfunction from a map subset → value.

    Keys may be masks, atom labels (singletons), or iterables of labels.
    """
    g = as_ground(ground)
    table: list = [None] * g.size
    for key, v in values.items():
        m = _key_mask(g, key)
        if table[m] is not None:
            raise DuplicateEntry(f"subset {g.fmt(m)} given twice", witness={"subset": g.labels(m)})
        table[m] = to_fraction(v)
    for m, v in enumerate(table):
        if v is None:
            raise IncompleteTable(f"no value for subset {g.fmt(m)}", witness={"subset": g.labels(m)})
    return SetFunction(g, table=table, name="table")


def _edge_list(edges) -> list[tuple[str, str, Fraction]]:
    out = []
    for e in edges:
        if len(e) == 2:
            u, v = e
            w = Fraction(1)
        else:
            u, v, w = e
            w = to_fraction(w)
        out.append((u, v, w))
    return out


def gen_cut(ground, edges: Iterable) -> SetFunction:
    """Cut capacity of an undirected weighted graph on the ground atoms.

    edges: iterable of (u, v) or (u, v, weight).
    """
    g = as_ground(ground)
    es = []
    for u, v, w in _edge_list(edges):
        if w < 0:
            raise NegativeCapacity(f"edge ({u},{v}) has negative weight {w}", witness={"edge": [u, v]})
        es.append((1 << g.index(u), 1 << g.index(v), w))

    def cut(m: int) -> Fraction:
        s = Fraction(0)
        for bu, bv, w in es:
            if bool(m & bu) != bool(m & bv):
                s += w
        return s

    return SetFunction(g, cut, flags={"submodular", "normalized"}, name="cut")


def gen_coverage(rel: Relation, weights: Mapping | None = None) -> SetFunction:
    """Weighted coverage φ(X) = Σ_{w ∈ R(X)} weight(w); unit weights by default."""
    if weights is None:
        wts = [Fraction(1)] * rel.right.n
    else:
        missing = [w for w in rel.right.atoms if w not in weights]
        if missing:
            raise BadArgument(f"weights missing for right atoms {missing}")
        wts = [to_fraction(weights[w]) for w in rel.right.atoms]
    for a, w in zip(rel.right.atoms, wts):
        if w < 0:
            raise NegativeCapacity(f"right atom {a} has negative weight {w}", witness={"atom": a})

    def cov(m: int) -> Fraction:
        img = rel.image(m)
        return sum((w for i, w in enumerate(wts) if img >> i & 1), Fraction(0))

    return SetFunction(rel.left, cov, name="coverage",
                       flags={"submodular", "increasing", "normalized", "strongly_submodular"})


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        p = self.parent
        p.setdefault(x, x)
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def forest_rank(edges: Sequence[tuple[str, str]]) -> int:
    """Size of a spanning forest of the given edge list (union-find)."""
    uf = _UnionFind()
    return sum(1 for u, v in edges if uf.union(u, v))


def gen_matroid_rank(ground=None, kind: str = "uniform", *, edges: Mapping | None = None,
                     columns: Mapping | None = None, k: int | None = None) -> SetFunction:
    """Matroid rank: graphic (edges atom→(u,v)), linear (columns atom→vector), or uniform(k)."""
    if kind == "graphic":
        if edges is None:
            raise BadArgument("graphic matroid needs edges")
        g = as_ground(ground if ground is not None else list(edges))
        if set(g.atoms) != set(edges):
            raise ShapeError("edges must be indexed exactly by the ground atoms")
        elist = [tuple(edges[a]) for a in g.atoms]
        fn = lambda m: Fraction(forest_rank([elist[i] for i in range(g.n) if m >> i & 1]))
    elif kind == "linear":
        if columns is None:
            raise BadArgument("linear matroid needs columns")
        g = as_ground(ground if ground is not None else list(columns))
        if set(g.atoms) != set(columns):
            raise ShapeError("columns must be indexed exactly by the ground atoms")
        cols = [[to_fraction(x) for x in columns[a]] for a in g.atoms]
        if len({len(c) for c in cols}) > 1:
            raise ShapeError(f"columns have different lengths {sorted({len(c) for c in cols})}")
        fn = lambda m: Fraction(rank([cols[i] for i in range(g.n) if m >> i & 1]))
    elif kind == "uniform":
        if k is None or k < 0:
            raise BadArgument("uniform matroid needs k >= 0")
        g = as_ground(ground)
        kk = int(k)
        fn = lambda m: Fraction(min(bin(m).count("1"), kk))
    else:
        raise BadArgument(f"unknown matroid kind {kind!r}")
    return SetFunction(g, fn, flags={"submodular", "increasing", "normalized"}, name=f"{kind}_rank")


class PiecewiseLinear:
    """Piecewise-linear function through rational breakpoints, extended linearly past the ends."""

    def __init__(self, breakpoints: Sequence):
        pts = [(to_fraction(x), to_fraction(y)) for x, y in breakpoints]
        if len(pts) < 2:
            raise BadArgument("need at least two breakpoints")
        pts.sort()
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if x0 == x1:
                raise BadArgument(f"duplicate breakpoint abscissa {x0}")
        self.points = pts
        self.slopes = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]

    def is_concave(self) -> int | None:
        """None if concave, else the index of the first slope increase."""
        for i, (a, b) in enumerate(zip(self.slopes, self.slopes[1:])):
            if b > a:
                return i + 1
        return None

    def nondecreasing(self) -> bool:
        return all(s >= 0 for s in self.slopes)

    def __call__(self, x) -> Fraction:
        pts = self.points
        if x <= pts[0][0]:
            i = 0
        elif x >= pts[-1][0]:
            i = len(pts) - 2
        else:
            i = next(j for j in range(len(pts) - 1) if pts[j][0] <= x <= pts[j + 1][0])
        x0, y0 = pts[i]
        return y0 + self.slopes[i] * (x - x0)


def gen_concave_of_measure(ground, weights: Mapping | Sequence, breakpoints: Sequence) -> SetFunction:
    """φ(X) = f(μ(X)) for atom weights μ ≥ 0 and concave piecewise-linear f."""
    g = as_ground(ground)
    if isinstance(weights, Mapping):
        w = [to_fraction(weights[a]) for a in g.atoms]
    else:
        w = [to_fraction(x) for x in weights]
    if len(w) != g.n:
        raise ShapeError(f"{len(w)} weights for {g.n} atoms")
    for a, x in zip(g.atoms, w):
        if x < 0:
            raise NegativeCapacity(f"atom {a} has negative weight {x}", witness={"atom": a})
    f = PiecewiseLinear(breakpoints)
    bad = f.is_concave()
    if bad is not None:
        raise NotConcave(f"slope increases at breakpoint {bad}",
                         witness={"breakpoint": [fmt(c) for c in f.points[bad]]})
    flags = {"submodular"} | ({"increasing"} if f.nondecreasing() else set())

    def val(m: int) -> Fraction:
        return f(sum((x for i, x in enumerate(w) if m >> i & 1), Fraction(0)))

    return SetFunction(g, val, flags=flags, name="concave_of_measure")


def gen_entropy(ground, joint: Mapping[tuple, object]) -> SetFunction:
    """Shannon entropy (bits) of marginals of a joint distribution over atom-indexed variables."""
    g = as_ground(ground)
    probs = {}
    total = 0.0
    for outcome, p in joint.items():
        outcome = tuple(outcome)
        if len(outcome) != g.n:
            raise ShapeError(f"outcome {outcome} has {len(outcome)} coordinates, expected {g.n}")
        pf = float(to_fraction(p)) if not isinstance(p, float) else p
        if pf < 0:
            raise InvalidDistribution(f"negative probability {p} for {outcome}",
                                      witness={"outcome": list(outcome)})
        probs[outcome] = probs.get(outcome, 0.0) + pf
        total += pf
    if abs(total - 1.0) > APPROX_TOL:
        raise InvalidDistribution(f"probabilities sum to {total}", witness={"sum": total})
    items = [(o, p) for o, p in probs.items() if p > 0]

    def H(m: int) -> float:
        idx = [i for i in range(g.n) if m >> i & 1]
        marg: dict = {}
        for o, p in items:
            key = tuple(o[i] for i in idx)
            marg[key] = marg.get(key, 0.0) + p
        h = -sum(p * math.log2(p) for p in marg.values() if p > 0)
        return h + 0.0

    return SetFunction(g, H, tolerance=APPROX_TOL, flags={"submodular", "increasing", "normalized"},
                       name="entropy")


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def gen_logdet(ground, matrix: Sequence[Sequence]) -> SetFunction:
    """φ(S) = ln det(A_S) for a symmetric positive definite rational matrix."""
    g = as_ground(ground)
    A = [[to_fraction(x) for x in row] for row in matrix]
    if len(A) != g.n or any(len(r) != g.n for r in A):
        raise ShapeError(f"matrix must be {g.n}x{g.n}")
    ok, bad = is_positive_definite(A)
    if not ok:
        raise NotPD(f"matrix is not symmetric positive definite (pivot {bad})", witness={"pivot": bad})

    def ld(m: int) -> float:
        idx = [i for i in range(g.n) if m >> i & 1]
        if not idx:
            return 0.0
        return _log_fraction(det([[A[i][j] for j in idx] for i in idx]))

    return SetFunction(g, ld, tolerance=APPROX_TOL, flags={"normalized"}, name="logdet")


def gen_hitting(ground, kernel: Sequence[Sequence], start: Sequence) -> SetFunction:
    """φ(X) = P(the chain started from `start` ever visits X), exact."""
    g = as_ground(ground)
    P = [[to_fraction(x) for x in row] for row in kernel]
    if len(P) != g.n or any(len(r) != g.n for r in P):
        raise ShapeError(f"kernel must be {g.n}x{g.n}")
    for i, row in enumerate(P):
        if any(x < 0 for x in row) or sum(row) != 1:
            raise InvalidKernel(f"row {g.atoms[i]} is not a probability vector", witness={"row": g.atoms[i]})
    s0 = [to_fraction(x) for x in start]
    if len(s0) != g.n:
        raise ShapeError("start distribution has wrong length")
    if any(x < 0 for x in s0) or sum(s0) != 1:
        raise InvalidDistribution("start is not a probability vector")
    n = g.n
    succ = [[j for j in range(n) if P[i][j] != 0] for i in range(n)]

    def hit(m: int) -> Fraction:
        if m == 0:
            return Fraction(0)
        # states that can reach X
        reach = m
        changed = True
        while changed:
            changed = False
            for i in range(n):
                if not reach >> i & 1 and any(reach >> j & 1 for j in succ[i]):
                    reach |= 1 << i
                    changed = True
        U = [i for i in range(n) if reach >> i & 1 and not m >> i & 1]
        h = [Fraction(0)] * n
        for i in range(n):
            if m >> i & 1:
                h[i] = Fraction(1)
        if U:
            pos = {s: k for k, s in enumerate(U)}
            A = [[(1 if a == b else 0) - P[a][b] for b in U] for a in U]
            rhs = [sum((P[a][j] for j in range(n) if m >> j & 1), Fraction(0)) for a in U]
            sol = solve(A, rhs)
            if sol is None:  # cannot happen after the reachability pass
                raise InvalidKernel("singular hitting system")
            for s, k in pos.items():
                h[s] = sol[k]
        return sum((s0[i] * h[i] for i in range(n)), Fraction(0))

    return SetFunction(g, hit, flags={"submodular", "increasing", "normalized"}, name="hitting")


def gen_ideal_indicator(ground, family: Iterable) -> SetFunction:
    """φ(X) = 1 if X is outside the down-closed family, else 0."""
    g = as_ground(ground)
    members = {_key_mask(g, s) for s in family}
    if 0 not in members:
        raise NotAnIdeal("family must contain the empty set", witness={"missing": []})
    for m in sorted(members):
        for i in range(g.n):
            if m >> i & 1 and (m ^ (1 << i)) not in members:
                raise NotAnIdeal(f"{g.fmt(m)} is in the family but {g.fmt(m ^ (1 << i))} is not",
                                 witness={"member": g.labels(m), "missing": g.labels(m ^ (1 << i))})
    return SetFunction(g, lambda m: Fraction(0 if m in members else 1),
                       flags={"submodular", "increasing", "normalized"}, name="ideal_indicator")


def gen_hom_count(F_vertices: Sequence[str], F_edges: Mapping[str, tuple[str, str]],
                  G_vertices: Sequence[str], G_edges: Iterable[tuple[str, str]],
                  ground=None) -> SetFunction:
    """φ(X) = number of homomorphisms of the spanning subgraph (V(F), X) into G."""
    if len(F_vertices) > 6 or len(G_vertices) > 6:
        raise TooLarge("hom counting is limited to |V(F)|, |V(G)| <= 6",
                       witness={"VF": len(F_vertices), "VG": len(G_vertices)})
    g = as_ground(ground if ground is not None else list(F_edges))
    fi = {v: i for i, v in enumerate(F_vertices)}
    gi = {v: i for i, v in enumerate(G_vertices)}
    adj = set()
    for u, v in G_edges:
        adj.add((gi[u], gi[v]))
        adj.add((gi[v], gi[u]))
    ends = [(fi[F_edges[a][0]], fi[F_edges[a][1]]) for a in g.atoms]
    counts = [0] * g.size
    for f in itertools.product(range(len(G_vertices)), repeat=len(F_vertices)):
        preserved = 0
        for k, (u, v) in enumerate(ends):
            if (f[u], f[v]) in adj:
                preserved |= 1 << k
        counts[preserved] += 1
    table = kernels.zeta_upper(counts, g.n)
    return SetFunction(g, table=table, flags={"supermodular"}, name="hom_count")


def gen_modular(ground, atom_values: Mapping | Sequence, offset=0) -> SetFunction:
    """μ(X) = offset + Σ_{x∈X} value(x)."""
    g = as_ground(ground)
    if isinstance(atom_values, Mapping):
        vals = [to_fraction(atom_values[a]) for a in g.atoms]
    else:
        vals = [to_fraction(x) for x in atom_values]
    if len(vals) != g.n:
        raise ShapeError("one value per atom required")
    c = to_fraction(offset)
    table = [c + sum((v for i, v in enumerate(vals) if m >> i & 1), Fraction(0)) for m in range(g.size)]
    flags = {"modular", "submodular", "supermodular"} | ({"normalized"} if c == 0 else set())
    return SetFunction(g, table=table, flags=flags, name="modular")
