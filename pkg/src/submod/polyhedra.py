"""Charges, greedy vertices, separation, minorizing charges, intersection and coupling."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .calculus import meet_with_argmin, monotonize, project, restrict, weighting, complement
from .choquet import StepFunction, choquet
from .core.ground import GroundSet, as_ground, check_size, popcount
from .core.properties import (check_increasing, check_submodular, check_supermodular,
                              require_matroid_rank, require_normalized, require_submodular)
from .core.relation import Relation
from .core.setfunction import SetFunction, same_ground
from .errors import (BadArgument, BetaNotMinorizing, GroundMismatch, InfeasibleIntersection,
                     InternalError, InvalidDistribution, NegativeWeight, NormalizationViolated,
                     NotMinorizing, PreconditionFailed, SandwichViolated)
from .flow import FlowNetwork
from .lp import INFEASIBLE, OPTIMAL, LPProblem, LPSolution, solve_lp
from .rational import fmt, to_fraction

LP_MAX_N = 12


class Charge:
    """Additive setfunction given by per-atom rational values."""

    __slots__ = ("ground", "atom_values", "_table")

    def __init__(self, ground, atom_values: Sequence | Mapping):
        g = as_ground(ground)
        if isinstance(atom_values, Mapping):
            vals = tuple(to_fraction(atom_values[a]) for a in g.atoms)
        else:
            vals = tuple(to_fraction(v) for v in atom_values)
        if len(vals) != g.n:
            raise BadArgument(f"{len(vals)} atom values for {g.n} atoms")
        self.ground = g
        self.atom_values = vals
        self._table = None

    @classmethod
    def zero(cls, ground) -> "Charge":
        g = as_ground(ground)
        return cls(g, [0] * g.n)

    def value(self, mask: int) -> Fraction:
        return self.table[mask]

    def __call__(self, subset=0) -> Fraction:
        return self.value(self.ground.mask(subset))

    @property
    def table(self) -> list:
        t = self._table
        if t is None:
            check_size(self.ground.n, what="charge tabulation")
            t = [Fraction(0)] * self.ground.size
            for m in range(1, len(t)):
                low = m & -m
                t[m] = t[m ^ low] + self.atom_values[low.bit_length() - 1]
            self._table = t
        return t

    def as_setfunction(self) -> SetFunction:
        return SetFunction(self.ground, table=self.table, flags={"modular", "normalized"}, name="charge")

    def total(self) -> Fraction:
        return sum(self.atom_values, Fraction(0))

    def norm(self) -> Fraction:
        """sup_X |α(X)|."""
        p = sum((v for v in self.atom_values if v > 0), Fraction(0))
        q = sum((-v for v in self.atom_values if v < 0), Fraction(0))
        return max(p, q)

    def _other(self, other: "Charge"):
        if other.ground != self.ground:
            raise GroundMismatch("charges on different ground sets")
        return other.atom_values

    def __add__(self, other: "Charge") -> "Charge":
        return Charge(self.ground, [a + b for a, b in zip(self.atom_values, self._other(other))])

    def __sub__(self, other: "Charge") -> "Charge":
        return Charge(self.ground, [a - b for a, b in zip(self.atom_values, self._other(other))])

    def __neg__(self) -> "Charge":
        return Charge(self.ground, [-a for a in self.atom_values])

    def __mul__(self, c) -> "Charge":
        c = to_fraction(c)
        return Charge(self.ground, [c * a for a in self.atom_values])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Charge) and other.ground == self.ground and other.atom_values == self.atom_values

    def __hash__(self):
        return hash((self.ground, self.atom_values))

    def join(self, other: "Charge") -> "Charge":
        """α∨β for charges: the per-atom maximum."""
        return Charge(self.ground, [max(a, b) for a, b in zip(self.atom_values, self._other(other))])

    def meet(self, other: "Charge") -> "Charge":
        return Charge(self.ground, [min(a, b) for a, b in zip(self.atom_values, self._other(other))])

    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.atom_values)

    def le(self, other: "Charge") -> bool:
        return all(a <= b for a, b in zip(self.atom_values, self._other(other)))

    def integrate(self, w: StepFunction) -> Fraction:
        """α̂(w) = Σ w(x) α({x})."""
        return sum((a * b for a, b in zip(self.atom_values, w.values)), Fraction(0))

    def first_excess(self, phi: SetFunction):
        """First mask X with α(X) > φ(X), or None (α minorizes φ)."""
        if phi.ground != self.ground:
            raise GroundMismatch("charge and setfunction on different ground sets")
        slack = phi.slack(self.ground.n + 1)
        for m, (a, v) in enumerate(zip(self.table, phi.table)):
            if a > v + slack:
                return m
        return None

    def minorizes(self, phi: SetFunction) -> bool:
        return self.first_excess(phi) is None

    def to_json(self) -> dict:
        return {"atoms": {a: fmt(v) for a, v in zip(self.ground.atoms, self.atom_values)}}

    def __repr__(self):
        return "Charge(" + ", ".join(f"{a}={fmt(v)}" for a, v in zip(self.ground.atoms, self.atom_values)) + ")"


@dataclass(frozen=True)
class ModularFunction:
    """μ(X) = offset + α(X)."""

    offset: Fraction
    charge: Charge

    def value(self, mask: int) -> Fraction:
        return self.offset + self.charge.value(mask)

    def __call__(self, subset=0) -> Fraction:
        return self.value(self.charge.ground.mask(subset))

    def as_setfunction(self) -> SetFunction:
        return SetFunction(self.charge.ground, table=[self.offset + v for v in self.charge.table],
                           flags={"modular"}, name="modular")

    def to_json(self) -> dict:
        return {"offset": fmt(self.offset), **self.charge.to_json()}


class Chain:
    """A strictly increasing family of subsets, from ∅ to J once refined."""

    def __init__(self, ground, sets: Sequence):
        g = as_ground(ground)
        masks = [g.mask(s) for s in sets]
        for a, b in zip(masks, masks[1:]):
            if not (a & b == a and a != b):
                raise BadArgument(f"chain is not strictly increasing at {g.fmt(a)} ⊂ {g.fmt(b)}")
        self.ground = g
        self.sets = tuple(masks)

    @classmethod
    def from_order(cls, ground, order: Sequence[str]) -> "Chain":
        g = as_ground(ground)
        sets, m = [0], 0
        for a in order:
            m |= 1 << g.index(a)
            sets.append(m)
        return cls(g, sets)

    def is_full(self) -> bool:
        return (len(self.sets) == self.ground.n + 1 and self.sets[0] == 0
                and self.sets[-1] == self.ground.full)

    def refine(self) -> "Chain":
        """Full chain through every set, adding atoms by ascending index between links."""
        g = self.ground
        links = list(self.sets)
        if not links or links[0] != 0:
            links.insert(0, 0)
        if links[-1] != g.full:
            links.append(g.full)
        out = [0]
        for a, b in zip(links, links[1:]):
            cur = a
            for i in range(g.n):
                if (b & ~a) >> i & 1:
                    cur |= 1 << i
                    out.append(cur)
        return Chain(g, out)

    def order(self) -> list[str]:
        """Atoms in the order the full chain adds them."""
        c = self.refine()
        return [self.ground.atoms[(b ^ a).bit_length() - 1] for a, b in zip(c.sets, c.sets[1:])]

    def to_json(self) -> list:
        return [self.ground.labels(m) for m in self.sets]


# -- greedy ---------------------------------------------------------------------------

def _require_sub_norm(phi: SetFunction, what="phi"):
    require_submodular(phi, what)
    require_normalized(phi, what)


def _greedy(phi: SetFunction, chain: Chain) -> Charge:
    full = chain.refine()
    vals = [Fraction(0)] * phi.n
    for a, b in zip(full.sets, full.sets[1:]):
        vals[(a ^ b).bit_length() - 1] = phi.value(b) - phi.value(a)
    return Charge(phi.ground, vals)


def greedy_chain_charge(phi: SetFunction, chain: Chain | Sequence | None = None) -> Charge:
    """Greedy charge along a (refined) chain: α(x_i) = φ(S_i) − φ(S_{i−1})."""
    _require_sub_norm(phi)
    if chain is None:
        chain = Chain(phi.ground, [0])
    elif not isinstance(chain, Chain):
        chain = list(chain)
        if len(chain) > 1 and all(isinstance(x, str) and x in phi.ground.atoms for x in chain):
            chain = Chain.from_order(phi.ground, chain)
        else:
            chain = Chain(phi.ground, chain)
    if chain.ground != phi.ground:
        raise GroundMismatch("chain and setfunction on different ground sets")
    alpha = _greedy(phi, chain)
    for S in chain.refine().sets:
        if alpha.value(S) != phi.value(S):
            raise InternalError(f"greedy charge misses φ on chain set {phi.ground.fmt(S)}")
    bad = alpha.first_excess(phi)
    if bad is not None:
        raise InternalError(f"greedy charge exceeds φ at {phi.ground.fmt(bad)}")
    if check_increasing(phi) and not alpha.nonnegative():
        raise InternalError("greedy charge of an increasing function has a negative atom")
    return alpha


# -- separation -----------------------------------------------------------------------

def separate(xi: SetFunction, phi: SetFunction, a=None, b=None, check: bool = True) -> ModularFunction:
    """A modular μ with ξ ≤ μ ≤ φ (optionally μ(∅) = a, μ(J) = b) via exact LP."""
    g = same_ground(xi, phi)
    check_size(g.n, LP_MAX_N, what="separate")
    for m in range(g.size):
        if xi.value(m) > phi.value(m):
            raise SandwichViolated(f"ξ > φ at {g.fmt(m)}", witness={"set": g.labels(m), "xi": fmt(xi.value(m)),
                                                                 "phi": fmt(phi.value(m))})
    if check:
        c = check_supermodular(xi, "local")
        if not c:
            raise PreconditionFailed(f"ξ is not supermodular: {c.witness}", witness=c.witness)
        require_submodular(phi)
    for pin, m, nm in ((a, 0, "a"), (b, g.full, "b")):
        if pin is not None:
            pin = to_fraction(pin)
            if not xi.value(m) <= pin <= phi.value(m):
                raise SandwichViolated(f"pinned {nm}={pin} outside [{xi.value(m)}, {phi.value(m)}]",
                                       witness={"pin": nm, "value": fmt(pin)})
    n = g.n
    A, rhs = [], []
    for m in range(g.size):
        row = [Fraction(1)] + [Fraction(m >> i & 1) for i in range(n)]
        A.append(row)
        rhs.append(phi.value(m))
        A.append([-x for x in row])
        rhs.append(-xi.value(m))
    A_eq, b_eq = [], []
    if a is not None:
        A_eq.append([Fraction(1)] + [Fraction(0)] * n)
        b_eq.append(to_fraction(a))
    if b is not None:
        A_eq.append([Fraction(1)] * (n + 1))
        b_eq.append(to_fraction(b))
    sol = solve_lp(LPProblem([0] * (n + 1), A, rhs, A_eq, b_eq))
    if sol.status != OPTIMAL:
        raise InternalError("separation LP infeasible despite a valid sandwich",
                            witness={"farkas": [fmt(v) for v in sol.farkas or []]})
    mu = ModularFunction(sol.x[0], Charge(g, sol.x[1:]))
    for m in range(g.size):
        if not xi.value(m) <= mu.value(m) <= phi.value(m):
            raise InternalError(f"separating μ fails the sandwich at {g.fmt(m)}")
    return mu


# -- minorizers -----------------------------------------------------------------------

def basic_minorizer(phi: SetFunction, above: Charge | None = None) -> Charge:
    """α ≤ φ with α(J) = φ(J), and α ≥ β when β is given."""
    _require_sub_norm(phi)
    g = phi.ground
    if above is None:
        alpha = _greedy(phi, Chain(g, [0]))
    else:
        bad = above.first_excess(phi)
        if bad is not None:
            raise BetaNotMinorizing(f"β exceeds φ at {g.fmt(bad)}",
                                    witness={"set": g.labels(bad), "beta": fmt(above.value(bad)),
                                             "phi": fmt(phi.value(bad))})
        top = phi.value(g.full)
        psi = SetFunction(g, table=[above.value(m) if m != g.full else top for m in range(g.size)])
        alpha = separate(psi, phi, a=0, b=top, check=False).charge
        if not above.le(alpha):
            raise InternalError("basic minorizer is not above β")
    if alpha.first_excess(phi) is not None or alpha.total() != phi.value(g.full):
        raise InternalError("basic minorizer is not basic")
    if alpha.norm() > 2 * phi.norm():
        raise InternalError("basic minorizer exceeds the 2‖φ‖ bound")
    return alpha


def pinning_charge(phi: SetFunction, A) -> Charge:
    """α with −φ^c ≤ α ≤ φ and α(A) = φ(A), for φ(∅) = φ(J) = 0."""
    require_submodular(phi)
    g = phi.ground
    if phi.value(0) != 0 or phi.value(g.full) != 0:
        raise NormalizationViolated("pinning needs φ(∅) = φ(J) = 0",
                                    witness={"phi_empty": fmt(phi.value(0)), "phi_full": fmt(phi.value(g.full))})
    A = g.mask(A)
    Ac = g.complement(A)
    mu1 = basic_minorizer(restrict(phi, A))
    mu2 = basic_minorizer(restrict(complement(phi), Ac))
    vals = [Fraction(0)] * g.n
    for k, i in enumerate(i for i in range(g.n) if A >> i & 1):
        vals[i] = mu1.atom_values[k]
    for k, i in enumerate(i for i in range(g.n) if Ac >> i & 1):
        vals[i] = -mu2.atom_values[k]
    alpha = Charge(g, vals)
    for m in range(g.size):
        if not -phi.value(g.complement(m)) <= alpha.value(m) <= phi.value(m):
            raise InternalError(f"pinning charge leaves the sandwich at {g.fmt(m)}")
    if alpha.value(A) != phi.value(A):
        raise InternalError("pinning charge misses φ(A)")
    return alpha


def max_minorizer_at(phi: SetFunction, X=None, w: StepFunction | None = None) -> tuple[Charge, Fraction]:
    """α ∈ matp(φ) maximizing α(X) (or α̂(w)); greedy along the level chain of w."""
    _require_sub_norm(phi)
    g = phi.ground
    if w is None:
        if X is None:
            raise BadArgument("give X or w")
        w = StepFunction.indicator(g, g.mask(X))
    for a, v in zip(g.atoms, w.values):
        if v < 0:
            raise NegativeWeight(f"weight of {a} is {v}", witness={"atom": a, "weight": fmt(v)})
    order = sorted(range(g.n), key=lambda i: (-w.values[i], i))
    alpha = _greedy(phi, Chain.from_order(g, [g.atoms[i] for i in order]))
    value = alpha.integrate(w)
    if value != choquet(phi, w):
        raise InternalError("greedy charge does not attain the Choquet integral")
    if alpha.first_excess(phi) is not None:
        raise InternalError("greedy charge is not minorizing")
    if check_increasing(phi) and not alpha.nonnegative():
        raise InternalError("greedy charge of an increasing function is negative")
    return alpha, value


# -- exchange -------------------------------------------------------------------------

def exchange_augment(phi: SetFunction, alpha: Charge, beta: Charge) -> Charge:
    """γ with α ≤ γ ≤ α∨β, γ(J) ≥ β(J) and 0 ≤ γ ≤ φ."""
    _require_sub_norm(phi)
    c = check_increasing(phi)
    if not c:
        raise PreconditionFailed(f"exchange needs an increasing φ: {c.witness}", witness=c.witness)
    g = phi.ground
    for ch, nm in ((alpha, "alpha"), (beta, "beta")):
        if not ch.nonnegative():
            i = next(i for i, v in enumerate(ch.atom_values) if v < 0)
            raise NotMinorizing(f"{nm} is negative at {g.atoms[i]}", witness={"charge": nm, "atom": g.atoms[i]})
        bad = ch.first_excess(phi)
        if bad is not None:
            raise NotMinorizing(f"{nm} exceeds φ at {g.fmt(bad)}", witness={"charge": nm, "set": g.labels(bad)})
    phi0 = monotonize(phi - alpha.as_setfunction(), "ui")
    beta0 = alpha.join(beta) - alpha
    psi = monotonize_meet(phi0, beta0.as_setfunction())
    delta = _greedy(psi, Chain(g, [0]))
    gamma = alpha + delta
    if not (alpha.le(gamma) and gamma.le(alpha.join(beta)) and gamma.total() >= beta.total()):
        raise InternalError("exchange output violates its guarantees")
    if gamma.first_excess(phi) is not None:
        raise InternalError("exchange output is not minorizing")
    return gamma


def monotonize_meet(phi: SetFunction, psi: SetFunction) -> SetFunction:
    meet, _ = meet_with_argmin(phi, psi)
    return meet


# -- intersection ---------------------------------------------------------------------

@dataclass
class IntersectionResult:
    value: Fraction
    charge: Charge
    split: int  # Y attaining the minimum φ(Y) + ψ(X∖Y)
    basic_phi: Charge | None = None  # basic minorizers of φ, ψ lying above the witness
    basic_psi: Charge | None = None


def _case1(phi: SetFunction, psi: SetFunction) -> Charge:
    """Charge α ≤ φ, ψ with α(J) = (φ∧ψ)(J)."""
    g = phi.ground
    meet, _ = meet_with_argmin(phi, psi)
    b = meet.value(g.full)
    phi1 = SetFunction(g, table=[v if m != g.full else b for m, v in enumerate(phi.table)])
    psi1 = SetFunction(g, table=[v if m != g.full else b for m, v in enumerate(psi.table)])
    xi = SetFunction(g, table=[b - psi1.value(g.complement(m)) for m in range(g.size)])
    return separate(xi, phi1, a=0, b=b, check=False).charge


def intersection_value(phi: SetFunction, psi: SetFunction, X=None) -> IntersectionResult:
    """(φ∧ψ)(X) with a charge α ≤ φ, ψ attaining it (nonnegative if both increasing)."""
    g = same_ground(phi, psi)
    _require_sub_norm(phi, "phi")
    _require_sub_norm(psi, "psi")
    check_size(g.n, LP_MAX_N, what="intersection")
    X = g.full if X is None else g.mask(X)
    meet, arg = meet_with_argmin(phi, psi)
    value = meet.value(X)
    both_inc = bool(check_increasing(phi)) and bool(check_increasing(psi))
    beta = _case1(restrict(phi, X), restrict(psi, X))
    Xc = g.complement(X)
    if both_inc or Xc == 0:
        gamma_vals = [Fraction(0)] * popcount(Xc)
    else:
        gamma_vals = list(_case1(project(phi, Xc), project(psi, Xc)).atom_values)
    vals = [Fraction(0)] * g.n
    for k, i in enumerate(i for i in range(g.n) if X >> i & 1):
        vals[i] = beta.atom_values[k]
    for k, i in enumerate(i for i in range(g.n) if Xc >> i & 1):
        vals[i] = gamma_vals[k]
    alpha = Charge(g, vals)
    if alpha.value(X) != value:
        raise InternalError("intersection witness misses the meet value")
    for f, nm in ((phi, "phi"), (psi, "psi")):
        bad = alpha.first_excess(f)
        if bad is not None:
            raise InternalError(f"intersection witness exceeds {nm} at {g.fmt(bad)}")
    if both_inc and not alpha.nonnegative():
        raise InternalError("intersection witness is negative for increasing inputs")
    return IntersectionResult(value, alpha, arg[X], basic_minorizer(phi, alpha), basic_minorizer(psi, alpha))


@dataclass
class WeightedIntersectionResult:
    value: Fraction
    charge: Charge
    h: StepFunction  # 0 ≤ h ≤ w with φ̂(h) + ψ̂(w − h) = value
    minimizer: int  # best level split X, h = w·1_X
    split_value: Fraction  # φ̂(w1_X) + ψ̂(w1_{X^c}); equals value when both inputs are increasing
    basic_for_phi: bool
    basic_for_psi: bool
    lp: LPSolution = field(repr=False, default=None)


def weighted_intersection(phi: SetFunction, psi: SetFunction, w) -> WeightedIntersectionResult:
    """max α̂(w) over common minorizing charges = min over 0 ≤ h ≤ w of φ̂(h) + ψ̂(w − h).

    The minimizing h is read off the LP dual: the dual weights y_X on the
    sets where φ(X) ≤ ψ(X) sum to h, the rest to w − h, and uncrossing bounds
    φ̂(h) + ψ̂(w − h) by the dual objective.
    """
    g = same_ground(phi, psi)
    _require_sub_norm(phi, "phi")
    _require_sub_norm(psi, "psi")
    check_size(g.n, LP_MAX_N, what="weighted intersection")
    if not isinstance(w, StepFunction):
        w = StepFunction(g, w)
    for a, v in zip(g.atoms, w.values):
        if v < 0:
            raise NegativeWeight(f"weight of {a} is {v}", witness={"atom": a, "weight": fmt(v)})
    both_inc = bool(check_increasing(phi)) and bool(check_increasing(psi))
    n = g.n
    A, rhs = [], []
    for m in range(1, g.size):
        row = [Fraction(m >> i & 1) for i in range(n)]
        A.append(row)
        rhs.append(min(phi.value(m), psi.value(m)))
    if both_inc:
        for i in range(n):
            A.append([Fraction(-1 if j == i else 0) for j in range(n)])
            rhs.append(Fraction(0))
    sol = solve_lp(LPProblem(list(w.values), A, rhs))
    if sol.status != OPTIMAL:
        raise InfeasibleIntersection("weighted intersection LP has no optimum",
                                     witness={"status": sol.status,
                                              "farkas": [fmt(v) for v in sol.farkas or []]})
    alpha = Charge(g, sol.x)
    hv = [Fraction(0)] * n
    for m in range(1, g.size):
        y = sol.y[m - 1]
        if y and phi.value(m) <= psi.value(m):
            for i in range(n):
                if m >> i & 1:
                    hv[i] += y
    h = StepFunction(g, [min(a, b) for a, b in zip(hv, w.values)])
    if h.values != tuple(hv) and not both_inc:
        raise InternalError("dual split exceeds w")
    direct = choquet(phi, h) + choquet(psi, w - h)
    if direct != sol.value:
        raise InternalError(f"weighted intersection duality fails: LP {sol.value} vs dual split {direct}")
    meet, arg = meet_with_argmin(weighting(w, phi), weighting(w, psi))
    X = arg[g.full]
    split = meet.value(g.full)
    if split < sol.value or (both_inc and split != sol.value):
        raise InternalError(f"level split {split} inconsistent with LP value {sol.value}")
    return WeightedIntersectionResult(sol.value, alpha, h, X, split,
                                      alpha.total() == phi.value(g.full),
                                      alpha.total() == psi.value(g.full), sol)


# -- coupling -------------------------------------------------------------------------

@dataclass
class Coupling:
    matrix: list  # rows: left atoms, columns: right atoms

    def to_json(self) -> dict:
        return {"coupling": [[fmt(x) for x in r] for r in self.matrix]}


@dataclass
class HallViolation:
    X: int
    lhs: Fraction  # λ_left(X)
    rhs: Fraction  # λ_right(rel(X))

    def to_json(self) -> dict:
        return {"hall_violation": {"X_mask": self.X, "lambda_X": fmt(self.lhs), "lambda_rel_X": fmt(self.rhs)}}


def _distribution(ground: GroundSet, lam) -> list[Fraction]:
    if isinstance(lam, Mapping):
        vals = [to_fraction(lam[a]) for a in ground.atoms]
    else:
        vals = [to_fraction(x) for x in lam]
    if len(vals) != ground.n or any(v < 0 for v in vals) or sum(vals) != 1:
        raise InvalidDistribution("marginal is not a probability vector on its ground set")
    return vals


def coupling_exists(rel: Relation, lam_left, lam_right) -> Coupling | HallViolation:
    """A coupling supported on rel with the given marginals, or a Hall-violating left set."""
    L, R = rel.left, rel.right
    ll, lr = _distribution(L, lam_left), _distribution(R, lam_right)
    net = FlowNetwork()
    s, t = ("s",), ("t",)
    big = Fraction(2)
    for i in range(L.n):
        net.add_edge(s, ("L", i), ll[i])
        for j in range(R.n):
            if rel.adj[i] >> j & 1:
                net.add_edge(("L", i), ("R", j), big)
    for j in range(R.n):
        net.add_edge(("R", j), t, lr[j])
    value, flow, _ = net.max_flow(s, t)
    if value == 1:
        M = [[flow.get((("L", i), ("R", j)), Fraction(0)) for j in range(R.n)] for i in range(L.n)]
        for i in range(L.n):
            if sum(M[i]) != ll[i]:
                raise InternalError("coupling row sum mismatch")
        for j in range(R.n):
            if sum(M[i][j] for i in range(L.n)) != lr[j]:
                raise InternalError("coupling column sum mismatch")
        return Coupling(M)
    # the largest maximum-deficiency set: left atoms that cannot reach the sink
    sink_side = net.reaching(t)
    X = sum(1 << i for i in range(L.n) if ("L", i) not in sink_side)
    img = rel.image(X)
    lhs = sum((ll[i] for i in range(L.n) if X >> i & 1), Fraction(0))
    rhs = sum((lr[j] for j in range(R.n) if img >> j & 1), Fraction(0))
    if not lhs > rhs:
        raise InternalError("min cut does not yield a Hall violation")
    return HallViolation(X, lhs, rhs)


# -- matroid intersection -------------------------------------------------------------

@dataclass
class MatroidIntersection:
    max_size: int
    common_independent: int
    min_value: int
    minimizer: int


def matroid_intersection_check(r1: SetFunction, r2: SetFunction) -> MatroidIntersection:
    """max |A| over common independent sets = min over X of r1(X) + r2(X^c)."""
    g = same_ground(r1, r2)
    require_matroid_rank(r1, "r1")
    require_matroid_rank(r2, "r2")
    best, bestA = -1, 0
    for A in range(g.size):
        k = popcount(A)
        if k > best and r1.value(A) == k and r2.value(A) == k:
            best, bestA = k, A
    low, lowX = None, 0
    for X in range(g.size):
        v = r1.value(X) + r2.value(g.complement(X))
        if low is None or v < low:
            low, lowX = v, X
    if best != low:
        raise InternalError(f"matroid intersection min-max fails: {best} vs {low}")
    return MatroidIntersection(best, bestA, int(low), lowX)
