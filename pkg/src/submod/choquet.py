"""Choquet integration on step functions, uncrossing, and convexity certificates."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core.certificate import Certificate, holds, violated
from .core.ground import GroundSet, as_ground, popcount
from .core.properties import check_increasing, check_submodular
from .core.setfunction import SetFunction
from .errors import (BadArgument, BadCoefficient, GroundMismatch, InternalError,
                     InvalidDistribution, NotComonotonic, PreconditionFailed)
from .rational import fmt, to_fraction


class StepFunction:
    """A function on the atoms of a finite ground set with rational values."""

    __slots__ = ("ground", "values")

    def __init__(self, ground, values: Sequence | Mapping):
        g = as_ground(ground)
        if isinstance(values, Mapping):
            vals = tuple(to_fraction(values[a]) for a in g.atoms)
        else:
            vals = tuple(to_fraction(v) for v in values)
        if len(vals) != g.n:
            raise BadArgument(f"{len(vals)} values for {g.n} atoms")
        self.ground = g
        self.values = vals

    @classmethod
    def indicator(cls, ground, mask: int, c=1) -> "StepFunction":
        g = as_ground(ground)
        c = to_fraction(c)
        return cls(g, [c if mask >> i & 1 else 0 for i in range(g.n)])

    @classmethod
    def constant(cls, ground, c) -> "StepFunction":
        g = as_ground(ground)
        return cls(g, [c] * g.n)

    def _check(self, other: "StepFunction"):
        if other.ground != self.ground:
            raise GroundMismatch("step functions on different ground sets")

    def __add__(self, other):
        if isinstance(other, StepFunction):
            self._check(other)
            return StepFunction(self.ground, [a + b for a, b in zip(self.values, other.values)])
        c = to_fraction(other)
        return StepFunction(self.ground, [a + c for a in self.values])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, StepFunction):
            self._check(other)
            return StepFunction(self.ground, [a - b for a, b in zip(self.values, other.values)])
        c = to_fraction(other)
        return StepFunction(self.ground, [a - c for a in self.values])

    def __neg__(self):
        return StepFunction(self.ground, [-a for a in self.values])

    def __mul__(self, other):
        if isinstance(other, StepFunction):
            self._check(other)
            return StepFunction(self.ground, [a * b for a, b in zip(self.values, other.values)])
        c = to_fraction(other)
        return StepFunction(self.ground, [a * c for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, StepFunction) and self.ground == other.ground and self.values == other.values

    def __hash__(self):
        return hash((self.ground, self.values))

    def maximum(self, other: "StepFunction") -> "StepFunction":
        self._check(other)
        return StepFunction(self.ground, [max(a, b) for a, b in zip(self.values, other.values)])

    def minimum(self, other: "StepFunction") -> "StepFunction":
        self._check(other)
        return StepFunction(self.ground, [min(a, b) for a, b in zip(self.values, other.values)])

    def norm(self) -> Fraction:
        return max((abs(v) for v in self.values), default=Fraction(0))

    def level_set(self, t) -> int:
        """Mask of {x : f(x) ≥ t}."""
        m = 0
        for i, v in enumerate(self.values):
            if v >= t:
                m |= 1 << i
        return m

    def to_json(self) -> dict:
        return {a: fmt(v) for a, v in zip(self.ground.atoms, self.values)}

    def __repr__(self):
        return "StepFunction(" + ", ".join(f"{a}={fmt(v)}" for a, v in zip(self.ground.atoms, self.values)) + ")"


@dataclass(frozen=True)
class ChainRepresentation:
    """f = base_offset + Σ coef·1_set over a strictly nested family of sets."""

    ground: GroundSet
    terms: tuple  # ((coef, mask), ...), strictly nested
    base_offset: Fraction = Fraction(0)

    def __post_init__(self):
        for c, _ in self.terms:
            if c <= 0:
                raise BadCoefficient(f"coefficient {c} is not positive")
        masks = [m for _, m in self.terms]
        for a, b in zip(masks, masks[1:]):
            nested = (a & b == a and a != b) or (a & b == b and a != b)
            if not nested:
                raise BadArgument("sets are not strictly nested")
        if len(masks) > 2:
            asc = masks[0] & masks[1] == masks[0]
            for a, b in zip(masks, masks[1:]):
                if (a & b == a) != asc:
                    raise BadArgument("sets are not monotonically nested")

    def reconstruct(self) -> StepFunction:
        n = self.ground.n
        vals = [self.base_offset] * n
        for c, m in self.terms:
            for i in range(n):
                if m >> i & 1:
                    vals[i] += c
        return StepFunction(self.ground, vals)

    def value(self, phi: SetFunction):
        """Σ coef·φ(set) + base_offset·φ(J)."""
        s = sum((c * phi.value(m) for c, m in self.terms), phi.value(0) * 0)
        return s + self.base_offset * phi.value(phi.full)

    def to_json(self) -> dict:
        return {"base_offset": fmt(self.base_offset),
                "terms": [[fmt(c), self.ground.labels(m)] for c, m in self.terms]}


def layer_cake(f: StepFunction) -> ChainRepresentation:
    """Nested level-set form; the offset is min f when negative, else 0."""
    vals = f.values
    lo = min(vals) if vals else Fraction(0)
    offset = lo if lo < 0 else Fraction(0)
    levels = sorted(set(v for v in vals if v > offset))
    terms = []
    prev = offset
    for v in levels:
        terms.append((v - prev, f.level_set(v)))
        prev = v
    return ChainRepresentation(f.ground, tuple(terms), offset)


def choquet_with_shift(phi: SetFunction, f: StepFunction):
    """(φ̂(f), shift) where shift = φ(∅) was subtracted from φ before integrating."""
    if f.ground != phi.ground:
        raise GroundMismatch("setfunction and step function live on different ground sets")
    shift = phi.value(0)
    rep = layer_cake(f)
    val = sum((c * (phi.value(m) - shift) for c, m in rep.terms), shift * 0)
    val += rep.base_offset * (phi.value(phi.full) - shift)
    return val, shift


def choquet(phi: SetFunction, f: StepFunction):
    """Choquet integral of f with respect to φ (normalized so that φ(∅) = 0)."""
    return choquet_with_shift(phi, f)[0]


# -- uncrossing -------------------------------------------------------------------------

@dataclass(frozen=True)
class UncrossStep:
    pair: tuple[int, int]
    transfer: Fraction
    terms: tuple  # family after the step, ((coef, mask), ...) sorted by mask
    value: object  # Σ b_H φ(H) after the step
    potential: Fraction


@dataclass
class UncrossResult:
    chain: ChainRepresentation
    steps: list = field(default_factory=list)
    initial_terms: tuple = ()
    initial_value: object = None

    @property
    def value(self):
        return self.steps[-1].value if self.steps else self.initial_value


def _family_value(fam: dict, phi: SetFunction):
    return sum((c * phi.value(m) for m, c in fam.items()), phi.value(0) * 0)


def _potential(fam: dict) -> Fraction:
    return sum((c * popcount(m) ** 2 for m, c in fam.items()), Fraction(0))


def uncross(terms: Sequence, phi: SetFunction, max_steps: int = 100_000,
            check: bool = True) -> UncrossResult:
    """Replace crossing pairs by their union and intersection until the family is a chain.

    The pair processed at each step is the lexicographically smallest
    incomparable pair of masks (disjoint pairs included, so the result is
    always a chain). The smaller coefficient b moves to H1∪H2 and H1∩H2.
    """
    g = phi.ground
    fam: dict[int, Fraction] = {}
    for c, s in terms:
        c = to_fraction(c)
        if c <= 0:
            raise BadCoefficient(f"coefficient {c} is not positive", witness={"coefficient": fmt(c)})
        m = g.mask(s)
        if m:
            fam[m] = fam.get(m, Fraction(0)) + c
    if check:
        sub = check_submodular(phi, "local")
        if not sub:
            raise PreconditionFailed(f"uncrossing needs a submodular φ: {sub.witness}", witness=sub.witness)
        if phi.value(0) != 0:
            raise PreconditionFailed("uncrossing needs φ(∅) = 0")
    res = UncrossResult(chain=None, initial_terms=tuple(sorted((c, m) for m, c in fam.items())),
                        initial_value=_family_value(fam, phi))
    steps = 0
    while True:
        masks = sorted(fam)
        pair = None
        for i, a in enumerate(masks):
            for b in masks[i + 1:]:
                ab = a & b
                if ab != a and ab != b:
                    pair = (a, b)
                    break
            if pair:
                break
        if pair is None:
            break
        steps += 1
        if steps > max_steps:
            raise InternalError(f"uncrossing did not terminate within {max_steps} steps",
                                witness={"family": [[fmt(c), g.labels(m)] for m, c in sorted(fam.items())]})
        a, b = pair
        ca, cb = fam[a], fam[b]
        t = min(ca, cb)
        for m in (a, b):
            fam[m] -= t
            if fam[m] == 0:
                del fam[m]
        for m in (a | b, a & b):
            if m:
                fam[m] = fam.get(m, Fraction(0)) + t
        res.steps.append(UncrossStep(pair, t, tuple(sorted((m, c) for m, c in fam.items())),
                                     _family_value(fam, phi), _potential(fam)))
    chain_terms = tuple((fam[m], m) for m in sorted(fam, key=lambda m: (-popcount(m), m)))
    res.chain = ChainRepresentation(g, chain_terms, Fraction(0))
    return res


# -- certificates ---------------------------------------------------------------------

def _rand_q(rng: random.Random, lo=-4, hi=4) -> Fraction:
    return Fraction(rng.randint(lo * 6, hi * 6), rng.choice((1, 2, 3, 6)))


def random_step_function(rng: random.Random, ground, lo=-4, hi=4) -> StepFunction:
    g = as_ground(ground)
    return StepFunction(g, [_rand_q(rng, lo, hi) for _ in range(g.n)])


def random_comonotonic_pair(rng: random.Random, ground, lo=-4, hi=4):
    """Two step functions that are both nondecreasing along one random atom order."""
    g = as_ground(ground)
    order = list(range(g.n))
    rng.shuffle(order)
    fv = sorted(_rand_q(rng, lo, hi) for _ in range(g.n))
    gv = sorted(_rand_q(rng, lo, hi) for _ in range(g.n))
    f = [Fraction(0)] * g.n
    h = [Fraction(0)] * g.n
    for pos, i in enumerate(order):
        f[i], h[i] = fv[pos], gv[pos]
    return StepFunction(g, f), StepFunction(g, h)


def comonotonic_witness(f: StepFunction, g: StepFunction):
    """First atom pair (x, y) with (f(x)−f(y))(g(x)−g(y)) < 0, else None."""
    n = f.ground.n
    for x in range(n):
        for y in range(x + 1, n):
            if (f.values[x] - f.values[y]) * (g.values[x] - g.values[y]) < 0:
                return (x, y)
    return None


def is_comonotonic(f: StepFunction, g: StepFunction) -> bool:
    return comonotonic_witness(f, g) is None


def certify_convexity(phi: SetFunction, trials: int = 100, seed: int = 0) -> Certificate:
    """Certify that the Choquet extension of φ is convex, or produce a counterexample.

    Convexity holds exactly when φ is submodular. For submodular φ the
    certificate also records seeded spot checks of subadditivity and of
    comonotonic additivity; otherwise the failing pair (1_S, 1_T) is returned.
    """
    claim = "choquet_convex"
    phi = phi.normalized()
    g = phi.ground
    sub = check_submodular(phi, "pairs")
    if not sub:
        S, T = g.mask(sub.witness["S"]), g.mask(sub.witness["T"])
        f, h = StepFunction.indicator(g, S), StepFunction.indicator(g, T)
        lhs = choquet(phi, f + h)
        rhs = choquet(phi, f) + choquet(phi, h)
        if not lhs > rhs + phi.slack(4):
            raise InternalError("submodularity witness does not violate convexity")
        return violated(claim, {"f": f.to_json(), "g": h.to_json(), "lhs": fmt(lhs), "rhs": fmt(rhs)},
                        seed=seed, trials=trials, details={"submodular": False})
    rng = random.Random(seed)
    tol = phi.slack(8)
    for k in range(trials):
        f, h = random_step_function(rng, g), random_step_function(rng, g)
        lhs, rhs = choquet(phi, f + h), choquet(phi, f) + choquet(phi, h)
        if lhs > rhs + tol:
            return violated(claim, {"f": f.to_json(), "g": h.to_json(), "lhs": fmt(lhs), "rhs": fmt(rhs),
                                    "trial": k}, seed=seed, trials=trials, details={"submodular": True})
        f, h = random_comonotonic_pair(rng, g)
        lhs, rhs = choquet(phi, f + h), choquet(phi, f) + choquet(phi, h)
        if abs(lhs - rhs) > tol:
            return violated("comonotonic_additive", {"f": f.to_json(), "g": h.to_json(), "lhs": fmt(lhs),
                                                     "rhs": fmt(rhs), "trial": k},
                            seed=seed, trials=trials, details={"submodular": True})
    return holds(claim, seed=seed, trials=trials, details={"submodular": True})


def lipschitz_check(phi: SetFunction, trials: int = 100, seed: int = 0) -> Certificate:
    """|φ̂(f) − φ̂(g)| ≤ var(φ)·‖f − g‖ on seeded pairs (and ≤ φ(J)·‖f − g‖ when increasing)."""
    from .calculus import variation
    phi = phi.normalized()
    var = variation(phi).total_variation
    inc = bool(check_increasing(phi))
    top = phi.value(phi.full)
    rng = random.Random(seed)
    g = phi.ground
    tol = phi.slack(8)
    for k in range(trials + 1):
        f = random_step_function(rng, g)
        h = f if k == 0 else random_step_function(rng, g)
        diff = abs(choquet(phi, f) - choquet(phi, h))
        dist = (f - h).norm()
        bounds = [("variation", var)] + ([("monotone", top)] if inc else [])
        for name, b in bounds:
            if diff > b * dist + tol:
                return violated("lipschitz", {"bound": name, "f": f.to_json(), "g": h.to_json(),
                                              "difference": fmt(diff), "limit": fmt(b * dist)},
                                seed=seed, trials=trials)
    return holds("lipschitz", seed=seed, trials=trials,
                 details={"variation": fmt(var), "increasing": inc})


def jensen_mix_check(phi: SetFunction, F: Sequence[StepFunction], lam: Sequence) -> Certificate:
    """φ̂(Σ λ_y F_y) ≤ Σ λ_y φ̂(F_y) for an increasing submodular φ."""
    lam = [to_fraction(x) for x in lam]
    if len(lam) != len(F) or any(x < 0 for x in lam) or sum(lam) != 1:
        raise InvalidDistribution("mixture weights must be a probability vector matching the columns")
    for chk in (check_increasing, check_submodular):
        c = chk(phi)
        if not c:
            raise PreconditionFailed(f"jensen_mix_check needs φ {c.claim}: {c.witness}", witness=c.witness)
    mix = StepFunction.constant(phi.ground, 0)
    for l, col in zip(lam, F):
        mix = mix + col * l
    lhs = choquet(phi, mix)
    rhs = sum((l * choquet(phi, col) for l, col in zip(lam, F)), Fraction(0) * 0)
    w = {"lhs": fmt(lhs), "rhs": fmt(rhs)}
    if lhs > rhs + phi.slack(len(F) + 1):
        return violated("jensen_mix", w)
    return holds("jensen_mix", details=w)


def comonotonic_fubini_check(alpha, beta, F: Sequence[Sequence], f: StepFunction | None = None,
                             g: StepFunction | None = None) -> Certificate:
    """Iterated integrals of a comonotonic table agree in both orders.

    alpha, beta are Charges on the row and column grounds. With f, g (on
    alpha's ground, nonnegative, comonotonic) also checks f·(g·α) = (fg)·α.
    """
    from .calculus import weighting
    rows, cols = alpha.ground, beta.ground
    T = [[to_fraction(x) for x in r] for r in F]
    if len(T) != rows.n or any(len(r) != cols.n for r in T):
        raise BadArgument("table shape must be |rows| x |cols|")
    row_fns = [StepFunction(cols, r) for r in T]
    col_fns = [StepFunction(rows, [T[i][j] for i in range(rows.n)]) for j in range(cols.n)]
    for kind, fns in (("rows", row_fns), ("columns", col_fns)):
        for i in range(len(fns)):
            for j in range(i + 1, len(fns)):
                w = comonotonic_witness(fns[i], fns[j])
                if w is not None:
                    raise NotComonotonic(f"{kind} {i} and {j} are not comonotonic",
                                         witness={"kind": kind, "pair": [i, j], "atoms": list(w)})
    a_fn, b_fn = alpha.as_setfunction(), beta.as_setfunction()
    inner_y = StepFunction(rows, [choquet(b_fn, r) for r in row_fns])
    inner_x = StepFunction(cols, [choquet(a_fn, c) for c in col_fns])
    xy, yx = choquet(a_fn, inner_y), choquet(b_fn, inner_x)
    details = {"x_then_y": fmt(xy), "y_then_x": fmt(yx)}
    if xy != yx:
        return violated("comonotonic_fubini", details)
    if f is not None and g is not None:
        w = comonotonic_witness(f, g)
        if w is not None:
            raise NotComonotonic("f and g are not comonotonic", witness={"atoms": list(w)})
        left = weighting(f, weighting(g, a_fn))
        right = weighting(f * g, a_fn)
        m = left.first_difference(right)
        if m is not None:
            return violated("product_weighting", {"X": rows.labels(m), "lhs": fmt(left.value(m)),
                                                  "rhs": fmt(right.value(m))})
        details["product_weighting"] = "checked"
    return holds("comonotonic_fubini", details=details)
