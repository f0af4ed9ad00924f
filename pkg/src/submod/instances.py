"""Seeded random instances used by the self-test, tests and benchmarks."""
from __future__ import annotations

import random
from fractions import Fraction

from .core.generators import gen_concave_of_measure, gen_coverage, gen_cut, gen_matroid_rank, gen_modular
from .core.ground import GroundSet
from .core.relation import Relation
from .core.setfunction import SetFunction


def ground(n: int, prefix: str = "x") -> GroundSet:
    return GroundSet([f"{prefix}{i}" for i in range(n)])


def rational(rng: random.Random, lo: int = -4, hi: int = 4) -> Fraction:
    return Fraction(rng.randint(lo * 6, hi * 6), rng.choice((1, 2, 3, 6)))


def random_table(rng: random.Random, g: GroundSet, lo: int = -4, hi: int = 4, normalized: bool = True) -> SetFunction:
    t = [rational(rng, lo, hi) for _ in range(g.size)]
    if normalized:
        t[0] = Fraction(0)
    return SetFunction(g, table=t, name="random_table")


def random_coverage(rng: random.Random, g: GroundSet, right: int = 5) -> SetFunction:
    W = [f"w{j}" for j in range(right)]
    pairs = [(a, w) for a in g.atoms for w in W if rng.random() < 0.4]
    weights = {w: Fraction(rng.randint(1, 6), rng.choice((1, 2, 3))) for w in W}
    return gen_coverage(Relation(g, W, pairs), weights)


def random_cut(rng: random.Random, g: GroundSet) -> SetFunction:
    edges = [(a, b, Fraction(rng.randint(1, 4), rng.choice((1, 2))))
             for i, a in enumerate(g.atoms) for b in g.atoms[i + 1:] if rng.random() < 0.5]
    return gen_cut(g, edges)


def random_concave(rng: random.Random, g: GroundSet) -> SetFunction:
    weights = [Fraction(rng.randint(0, 4)) for _ in range(g.n)]
    total = sum(weights) or Fraction(1)
    slopes = sorted((Fraction(rng.randint(0, 6), rng.choice((1, 2))) for _ in range(3)), reverse=True)
    xs = sorted({Fraction(0), total / 3, 2 * total / 3, total})
    bps, y = [(xs[0], Fraction(0))], Fraction(0)
    for k in range(1, len(xs)):
        y += slopes[min(k - 1, 2)] * (xs[k] - xs[k - 1])
        bps.append((xs[k], y))
    return gen_concave_of_measure(g, weights, bps)


def random_increasing_submodular(rng: random.Random, g: GroundSet) -> SetFunction:
    """Nonnegative combination of a coverage, a concave-of-measure and a uniform rank."""
    phi = random_coverage(rng, g)
    if rng.random() < 0.7:
        phi = phi + random_concave(rng, g)
    if rng.random() < 0.5:
        phi = phi + gen_matroid_rank(g, "uniform", k=rng.randint(0, g.n))
    return SetFunction(g, table=phi.table, name="random_increasing_submodular")


def random_submodular(rng: random.Random, g: GroundSet) -> SetFunction:
    """Normalized submodular, not necessarily increasing."""
    phi = random_cut(rng, g) + random_increasing_submodular(rng, g)
    phi = phi + gen_modular(g, [rational(rng, -3, 3) for _ in range(g.n)])
    return SetFunction(g, table=phi.table, name="random_submodular")


def random_strongly_submodular(rng: random.Random, g: GroundSet) -> tuple[SetFunction, SetFunction]:
    """(φ, α) with φ = Pα for a random α ≥ 0 over 2^V."""
    alpha = [Fraction(0)] + [Fraction(rng.randint(0, 5), rng.choice((1, 2, 3))) if rng.random() < 0.6
                             else Fraction(0) for _ in range(1, g.size)]
    phi = [sum((a for Y, a in enumerate(alpha) if Y & X), Fraction(0)) for X in range(g.size)]
    return SetFunction(g, table=phi, name="induced"), SetFunction(g, table=alpha, name="alpha")


def random_sandwich(rng: random.Random, g: GroundSet) -> tuple[SetFunction, SetFunction]:
    """(ξ, φ) with ξ supermodular ≤ μ ≤ φ submodular around a random modular core μ."""
    mu = gen_modular(g, [rational(rng, -3, 3) for _ in range(g.n)], rational(rng, -2, 2))
    up = random_increasing_submodular(rng, g)
    down = random_coverage(rng, g)
    phi = SetFunction(g, table=(mu + up).table, name="phi")
    xi = SetFunction(g, table=(mu - down).table, name="xi")
    return xi, phi


def random_charge_values(rng: random.Random, n: int, lo: int = 0, hi: int = 3) -> list[Fraction]:
    return [rational(rng, lo, hi) for _ in range(n)]


def random_distribution(rng: random.Random, n: int) -> list[Fraction]:
    w = [Fraction(rng.randint(0, 4)) for _ in range(n)]
    if sum(w) == 0:
        w[rng.randrange(n)] = Fraction(1)
    s = sum(w)
    return [x / s for x in w]


def random_relation(rng: random.Random, left: GroundSet, right: GroundSet, p: float = 0.35) -> Relation:
    return Relation(left, right, [(a, b) for a in left.atoms for b in right.atoms if rng.random() < p])
