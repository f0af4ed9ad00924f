"""Seeded invariant battery across all modules.

Each family draws a few random instances at ground size up to `max_n` and
returns the first failure it finds (a witness dict) or None. With
`inject_fault` the families deliberately corrupt one computed object before
checking it, so the battery must report failures.
"""
from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction
from typing import Callable

from . import kernels
from .calculus import restrict
from .choquet import certify_convexity, choquet, layer_cake, random_step_function, uncross
from .core.generators import gen_cut, gen_matroid_rank
from .core.ground import popcount
from .core.properties import check_increasing, check_submodular, check_supermodular
from .core.setfunction import SetFunction
from .geometry import (bjorner_distance, certify_strong_submodular, induce_representation, lindstrom_wilf,
                       negative_type_check, window_batch)
from .instances import (ground, random_distribution, random_increasing_submodular, random_relation,
                        random_sandwich, random_strongly_submodular, random_submodular, random_table)
from .polyhedra import (Chain, Charge, HallViolation, coupling_exists, exchange_augment,
                        greedy_chain_charge, intersection_value, separate)
from .rational import fmt
from .sfm import positive_part_function

TRIALS = 4


def _perturb(alpha: Charge) -> Charge:
    v = list(alpha.atom_values)
    v[0] += 1
    return Charge(alpha.ground, v)


def fam_generators(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, n))
        for phi in (random_submodular(rng, g), random_increasing_submodular(rng, g)):
            if fault:
                t = list(phi.table)
                t[g.full] += 100
                phi = SetFunction(g, table=t)
            c = check_submodular(phi)
            if not c:
                return c.witness


def fam_greedy(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, min(n, 5)))
        phi = random_submodular(rng, g)
        for perm in itertools.permutations(g.atoms):
            alpha = greedy_chain_charge(phi, Chain.from_order(g, perm))
            if fault:
                alpha = _perturb(alpha)
            bad = alpha.first_excess(phi)
            if bad is not None:
                return {"order": list(perm), "set": g.labels(bad)}


def fam_convexity(rng, n, fault):
    for k in range(TRIALS):
        g = ground(rng.randint(1, n))
        phi = random_table(rng, g) if k % 2 else random_submodular(rng, g)
        c = certify_convexity(phi, trials=10, seed=rng.randrange(1 << 30))
        sub = bool(check_submodular(phi)) ^ bool(fault)
        if c.holds != sub:
            return {"convex": c.holds, "submodular": sub}


def fam_lindstrom_wilf(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, min(n, 4)))
        phi = random_table(rng, g)
        lw = lindstrom_wilf(phi)
        census = list(lw.sign_census)
        if fault:
            census[0] += 1
        if tuple(census) != lw.inertia.as_tuple():
            return {"inertia": list(lw.inertia.as_tuple()), "census": census}


def fam_strong(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, min(n, 4)))
        phi, alpha = random_strongly_submodular(rng, g)
        if fault:
            phi = phi + gen_matroid_rank(g, "uniform", k=1) * -1 + gen_matroid_rank(g, "uniform", k=max(g.n - 1, 0))
        c = certify_strong_submodular(phi)
        w = window_batch(phi)
        if not c or not w:
            return c.witness or w.witness
        if induce_representation(phi).table != alpha.table:
            return {"roundtrip": "alpha differs"}


def fam_intersection(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, min(n, 5)))
        phi, psi = random_submodular(rng, g), random_submodular(rng, g)
        X = rng.randrange(g.size)
        res = intersection_value(phi, psi, X)
        alpha = _perturb(res.charge) if fault else res.charge
        best = min(phi.value(Y) + psi.value(X & ~Y) for Y in range(g.size) if Y & X == Y)
        if alpha.value(X) != best or not alpha.minorizes(phi) or not alpha.minorizes(psi):
            return {"X": g.labels(X), "value": fmt(alpha.value(X)), "oracle": fmt(best)}


def fam_separation(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, min(n, 5)))
        xi, phi = random_sandwich(rng, g)
        mu = separate(xi, phi)
        off = mu.offset + (1 if fault else 0)
        for X in range(g.size):
            v = off + mu.charge.value(X)
            if not xi.value(X) <= v <= phi.value(X):
                return {"X": g.labels(X)}


def fam_coupling(rng, n, fault):
    for _ in range(TRIALS):
        L, R = ground(rng.randint(1, n), "l"), ground(rng.randint(1, n), "r")
        rel = random_relation(rng, L, R, 0.5)
        ll, lr = random_distribution(rng, L.n), random_distribution(rng, R.n)
        res = coupling_exists(rel, ll, lr)
        if isinstance(res, HallViolation):
            img = rel.image(res.X)
            lhs = sum((ll[i] for i in range(L.n) if res.X >> i & 1), Fraction(0))
            rhs = sum((lr[j] for j in range(R.n) if img >> j & 1), Fraction(0))
            if not lhs > rhs or fault:
                return {"X": L.labels(res.X), "lhs": fmt(lhs), "rhs": fmt(rhs)}
        else:
            M = res.matrix
            if fault:
                M = [list(r) for r in M]
                M[0][0] += 1
            rows = [sum(r) for r in M]
            cols = [sum(M[i][j] for i in range(L.n)) for j in range(R.n)]
            supp = all(M[i][j] == 0 or rel.adj[i] >> j & 1 for i in range(L.n) for j in range(R.n))
            if rows != ll or cols != lr or not supp:
                return {"rows": [fmt(x) for x in rows], "cols": [fmt(x) for x in cols]}


def fam_exchange(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, min(n, 5)))
        phi = random_increasing_submodular(rng, g)
        a = greedy_chain_charge(phi, Chain.from_order(g, rng.sample(g.atoms, g.n)))
        b = greedy_chain_charge(phi, Chain.from_order(g, rng.sample(g.atoms, g.n)))
        a = Charge(g, [x * Fraction(rng.randint(0, 3), 3) for x in a.atom_values])
        gamma = exchange_augment(phi, a, b)
        if fault:
            gamma = _perturb(gamma)
        if not (a.le(gamma) and gamma.le(a.join(b)) and gamma.total() >= b.total()):
            return {"gamma": gamma.to_json()}


def fam_uncross(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, n))
        phi = random_submodular(rng, g)
        terms = [(Fraction(rng.randint(1, 5), rng.choice((1, 2))), g.labels(rng.randrange(1, g.size)))
                 for _ in range(rng.randint(1, 5))]
        res = uncross(terms, phi)
        vals = [res.initial_value] + [s.value for s in res.steps]
        if fault:
            vals.append(vals[-1] + 1)
        if any(b > a for a, b in zip(vals, vals[1:])):
            return {"values": [fmt(v) for v in vals]}
        f = res.chain.reconstruct()
        if res.chain.value(phi) != choquet(phi, f):
            return {"terminal": fmt(res.chain.value(phi))}


def fam_positive_part(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, n))
        phi = random_increasing_submodular(rng, g) - Fraction(rng.randint(0, 3))
        r = positive_part_function(phi)
        if fault:
            t = list(r.table)
            t[g.full] += 100
            r = SetFunction(g, table=t)
        c = check_submodular(r)
        if not c:
            return c.witness
        if any(v < 0 or v > max(p, 0) for v, p in zip(r.table, phi.table)):
            return {"bound": "positive part outside [0, |φ|₊]"}


def fam_bjorner(rng, n, fault):
    for _ in range(TRIALS):
        g = ground(rng.randint(1, min(n, 3)))
        phi = random_increasing_submodular(rng, g)
        d = bjorner_distance(phi)
        neg = negative_type_check(d.entries).holds
        strong = certify_strong_submodular(phi).holds
        if (neg != strong) ^ bool(fault):
            return {"negative_type": neg, "strongly_submodular": strong}


def fam_kernels(rng, n, fault):
    if not kernels.HAVE_COMPILED:
        return None
    for _ in range(TRIALS):
        m = rng.randint(1, n)
        t = [rng.randint(-50, 50) for _ in range(1 << m)]
        out = {}
        for b in ("python", "compiled"):
            with kernels.use_backend(b):
                out[b] = (kernels.mobius_upper(t, m), kernels.subset_opt(t, m, True),
                          kernels.convolve(t, t, m, False), kernels.partition_dp(t, m, False)[0],
                          kernels.pair_violation(t, m))
        if fault:
            out["python"] = ("corrupted",)
        if out["python"] != out["compiled"]:
            return {"n": m, "kernel_mismatch": True}


FAMILIES: dict[str, Callable] = {
    "generators_submodular": fam_generators,
    "greedy_vertex": fam_greedy,
    "choquet_convexity": fam_convexity,
    "lindstrom_wilf_inertia": fam_lindstrom_wilf,
    "strong_submodularity": fam_strong,
    "intersection": fam_intersection,
    "separation": fam_separation,
    "coupling_dichotomy": fam_coupling,
    "exchange": fam_exchange,
    "uncrossing": fam_uncross,
    "positive_part": fam_positive_part,
    "bjorner_negative_type": fam_bjorner,
    "kernel_parity": fam_kernels,
}


def run_selftest(seed: int = 0, max_n: int = 4, inject_fault: bool = False) -> dict:
    """Run every family; returns {"families": {name: {"status", "witness"?}}, "passed": bool}."""
    results = {}
    for name, fam in FAMILIES.items():
        rng = random.Random(f"{seed}:{name}")
        try:
            w = fam(rng, max_n, inject_fault)
        except Exception as e:  # a crash is a failure with the error as witness
            w = {"error": type(e).__name__, "message": str(e)}
        results[name] = {"status": "pass"} if w is None else {"status": "fail", "witness": w}
    return {"families": results, "passed": all(r["status"] == "pass" for r in results.values())}
