import itertools
import math
import random
from fractions import Fraction

import pytest

from submod.choquet import StepFunction, choquet
from submod.core import (GroundSet, Relation, SetFunction, check_increasing, check_submodular, gen_coverage,
                         gen_matroid_rank, gen_modular)
from submod.errors import (BetaNotMinorizing, InvalidDistribution, NegativeWeight, NormalizationViolated,
                           NotAMatroidRank, NotMinorizing, NotSubmodular, SandwichViolated)
from submod.instances import (ground, random_charge_values, random_distribution, random_increasing_submodular,
                              random_relation, random_sandwich, random_submodular)
from submod.polyhedra import (Chain, Charge, Coupling, HallViolation, basic_minorizer, coupling_exists,
                              exchange_augment, greedy_chain_charge, intersection_value, matroid_intersection_check,
                              max_minorizer_at, pinning_charge, separate, weighted_intersection)

from conftest import K3_EDGES, brute_meet, brute_submodular, table_fn


def minorizes(alpha_vals, t, n):
    return all(sum(alpha_vals[i] for i in range(n) if X >> i & 1) <= t[X] for X in range(1 << n))


class TestCharge:
    def test_basics(self):
        g = GroundSet("abc")
        a = Charge(g, [1, -2, Fraction(1, 2)])
        assert a(["a", "c"]) == Fraction(3, 2) and a.total() == Fraction(-1, 2)
        assert a.norm() >= 2
        b = Charge(g, {"a": 0, "b": 1, "c": 1})
        assert a.join(b).atom_values == (1, 1, 1) or list(a.join(b).atom_values) == [1, 1, 1]
        assert (a + b - b) == a
        assert a.to_json() == {"atoms": {"a": "1/1", "b": "-2/1", "c": "1/2"}}

    def test_integrate_matches_choquet(self, rng):
        g = ground(4)
        a = Charge(g, random_charge_values(rng, 4, -3, 3))
        w = StepFunction(g, [Fraction(rng.randint(-4, 4)) for _ in range(4)])
        assert a.integrate(w) == choquet(a.as_setfunction(), w)


class TestGreedy:
    def test_modular(self, rng):
        g = ground(4)
        vals = random_charge_values(rng, 4, -3, 3)
        phi = gen_modular(g, vals)
        for perm in itertools.permutations(g.atoms):
            assert list(greedy_chain_charge(phi, list(perm)).atom_values) == vals

    def test_k3(self, k3):
        a = greedy_chain_charge(k3, ["e1", "e2", "e3"])
        assert list(a.atom_values) == [1, 1, 0]
        assert a(["e2", "e3"]) == 1

    def test_triangle(self, tri):
        a = greedy_chain_charge(tri, ["a", "b", "c"])
        assert list(a.atom_values) == [2, 0, -2]
        assert minorizes(a.atom_values, tri.table, 3)

    def test_vertex_property_all_chains(self, rng):
        for n in range(1, 6):
            phi = random_submodular(rng, ground(n))
            for perm in itertools.permutations(phi.ground.atoms):
                a = greedy_chain_charge(phi, list(perm))
                assert minorizes(a.atom_values, phi.table, n)
                S = 0
                for lab in perm:
                    S |= phi.ground.mask(lab)
                    assert a.value(S) == phi.value(S)

    def test_partial_chain_refined(self, k3):
        ch = Chain(k3.ground, [0, 0b010, 0b111])
        assert not ch.is_full()
        assert ch.refine().is_full()
        a = greedy_chain_charge(k3, ch)
        assert a.value(0b010) == 1 and a.total() == 2

    def test_not_submodular(self):
        with pytest.raises(NotSubmodular):
            greedy_chain_charge(table_fn("ab", [0, 0, 0, 1]))

    def test_inv_sipos(self, rng):
        # the upper envelope of greedy vertices reproduces an increasing submodular φ
        for n in range(1, 5):
            phi = random_increasing_submodular(rng, ground(n))
            verts = [greedy_chain_charge(phi, list(p)) for p in itertools.permutations(phi.ground.atoms)]
            env = [max(v.value(X) for v in verts) for X in range(1 << n)]
            assert env == list(phi.table)
            assert brute_submodular(env, n)

    def test_phi_alpha_lemma(self, rng):
        # increasing functions that agree on a chain have equal integrals over chain-measurable f
        for n in range(2, 5):
            g = ground(n)
            phi = random_increasing_submodular(rng, g)
            psi = random_increasing_submodular(rng, g)
            order = list(range(n))
            rng.shuffle(order)
            chain = [sum(1 << order[k] for k in range(j)) for j in range(n + 1)]
            # shift ψ up on the chain, then re-monotonize by a large top value elsewhere
            tab = [phi.value(X) if X in chain else None for X in range(1 << n)]
            levels = sorted((Fraction(rng.randint(0, 5)) for _ in range(n)), reverse=True)
            f = StepFunction(g, [levels[order.index(i)] for i in range(n)])
            pa = max_minorizer_at(phi, w=f)[1]
            assert pa == choquet(phi, f)
            assert choquet(gen_modular(g, list(greedy_chain_charge(phi, [g.atoms[i] for i in order]).atom_values)), f) == pa


class TestSeparate:
    def test_modular(self, rng):
        g = ground(3)
        phi = gen_modular(g, random_charge_values(rng, 3, -2, 2))
        mu = separate(phi, phi)
        assert all(mu.value(X) == phi.value(X) for X in range(8))

    def test_hand_example(self):
        xi = table_fn("ab", [0, 0, 0, 1])
        phi = table_fn("ab", [0, 1, 1, 1])
        mu = separate(xi, phi)
        for X in range(4):
            assert xi.value(X) <= mu.value(X) <= phi.value(X)

    def test_violated(self):
        with pytest.raises(SandwichViolated):
            separate(table_fn("ab", [0, 0, 0, 2]), table_fn("ab", [0, 1, 1, 1]))

    def test_random_sandwich(self, rng):
        for _ in range(30):
            n = rng.randint(1, 5)
            xi, phi = random_sandwich(rng, ground(n))
            mu = separate(xi, phi)
            for X in range(1 << n):
                assert xi.value(X) <= mu.value(X) <= phi.value(X)


class TestMinorizers:
    def test_zero(self):
        g = GroundSet("ab")
        phi = SetFunction.constant(g, 0)
        assert basic_minorizer(phi, Charge.zero(g)) == Charge.zero(g)

    def test_above(self, tri):
        beta = Charge(tri.ground, [0, 0, -1])
        a = basic_minorizer(tri, beta)
        assert beta.le(a) and a.total() == 0 and minorizes(a.atom_values, tri.table, 3)

    def test_beta_not_minorizing(self, tri):
        with pytest.raises(BetaNotMinorizing):
            basic_minorizer(tri, Charge(tri.ground, [5, 0, 0]))

    def test_random_above(self, rng):
        for _ in range(20):
            n = rng.randint(1, 4)
            phi = random_submodular(rng, ground(n))
            beta = greedy_chain_charge(phi) - Charge(phi.ground, random_charge_values(rng, n, 0, 2))
            a = basic_minorizer(phi, beta)
            assert beta.le(a) and a.total() == phi.value(phi.full)
            assert minorizes(a.atom_values, phi.table, n)

    def test_pinning(self, tri):
        for A in (0, 7, 1, 3, 5):
            a = pinning_charge(tri, A)
            assert a.value(A) == tri.value(A)
            for X in range(8):
                assert -tri.value(7 & ~X) <= a.value(X) <= tri.value(X)
        assert pinning_charge(SetFunction.constant(GroundSet("ab"), 0), 1) == Charge.zero(GroundSet("ab"))
        with pytest.raises(NormalizationViolated):
            pinning_charge(gen_matroid_rank(kind="graphic", edges=K3_EDGES), 1)

    def test_max_minorizer(self, k3, rng):
        a, v = max_minorizer_at(k3, w=StepFunction(k3.ground, [2, 1, 1]))
        assert v == 3 and a.nonnegative() and minorizes(a.atom_values, k3.table, 3)
        for X in range(8):
            a, v = max_minorizer_at(k3, X=X)
            assert v == k3.value(X) == a.value(X)
        with pytest.raises(NegativeWeight):
            max_minorizer_at(k3, w=StepFunction(k3.ground, [1, -1, 0]))


class TestExchange:
    def test_hand(self):
        phi = gen_matroid_rank(GroundSet("ab"), "uniform", k=1)
        g = phi.ground
        gamma = exchange_augment(phi, Charge(g, [Fraction(1, 2), 0]), Charge(g, [0, 1]))
        assert list(gamma.atom_values) == [Fraction(1, 2), Fraction(1, 2)]

    def test_trivial(self, k3):
        a = Charge(k3.ground, [1, 1, 0])
        assert exchange_augment(k3, a, a) == a

    def test_random(self, rng):
        for _ in range(40):
            n = rng.randint(1, 4)
            phi = random_increasing_submodular(rng, ground(n))
            g = phi.ground
            perm = list(g.atoms)
            rng.shuffle(perm)
            beta = greedy_chain_charge(phi, perm) * Fraction(rng.randint(0, 4), 4)
            alpha = greedy_chain_charge(phi) * Fraction(rng.randint(0, 4), 4)
            gamma = exchange_augment(phi, alpha, beta)
            assert alpha.le(gamma) and gamma.le(alpha.join(beta)) and gamma.total() >= beta.total()
            assert minorizes(gamma.atom_values, phi.table, n)

    def test_not_minorizing(self, k3):
        with pytest.raises(NotMinorizing):
            exchange_augment(k3, Charge(k3.ground, [2, 0, 0]), Charge.zero(k3.ground))


class TestIntersection:
    def test_examples(self):
        ind = table_fn("ab", [0, 1, 1, 1])
        card = gen_modular(["a", "b"], [1, 1])
        assert intersection_value(ind, card).value == 1

    def test_transversal_p3(self):
        # left {a, b, c}, right {x, y}; a–x, b–x, b–y, c–y: matching number 2
        rel = Relation(["a", "b", "c"], ["x", "y"], [("a", "x"), ("b", "x"), ("b", "y"), ("c", "y")])
        cov = gen_coverage(rel)
        card = gen_modular(["a", "b", "c"], [1, 1, 1])
        import networkx as nx
        G = nx.Graph([("a", "x"), ("b", "x"), ("b", "y"), ("c", "y")])
        nu = len(nx.max_weight_matching(G, maxcardinality=True))
        assert intersection_value(cov, card).value == nu == 2

    def test_random(self, rng):
        for _ in range(25):
            n = rng.randint(1, 4)
            g = ground(n)
            inc = rng.random() < 0.5
            gen = random_increasing_submodular if inc else random_submodular
            phi, psi = gen(rng, g), gen(rng, g)
            X = rng.randrange(1 << n)
            r = intersection_value(phi, psi, X)
            assert r.value == brute_meet(phi.table, psi.table, n, X)
            assert r.value == intersection_value(psi, phi, X).value
            a = r.charge
            assert minorizes(a.atom_values, phi.table, n) and minorizes(a.atom_values, psi.table, n)
            assert a.value(X) == r.value
            if inc:
                assert a.nonnegative()
            for b, f in ((r.basic_phi, phi), (r.basic_psi, psi)):
                assert a.le(b) and b.total() == f.value(f.full)

    def test_lem_triv(self, rng):
        for _ in range(20):
            n = rng.randint(1, 4)
            g = ground(n)
            phi, psi = random_submodular(rng, g), random_submodular(rng, g)
            a = Charge(g, random_charge_values(rng, n, -3, 1))
            mn = [min(x, y) for x, y in zip(phi.table, psi.table)]
            meet = [brute_meet(phi.table, psi.table, n, X) for X in range(1 << n)]
            assert minorizes(a.atom_values, mn, n) == minorizes(a.atom_values, meet, n)

    def test_weighted(self, k3):
        u2 = gen_matroid_rank(k3.ground, "uniform", k=2)
        r = weighted_intersection(k3, u2, [1, 1, 1])
        assert r.value == 2
        assert weighted_intersection(k3, u2, [1, 1, 1]).value == intersection_value(k3, u2).value

    def test_weighted_vs_scipy(self, rng):
        from scipy.optimize import linprog
        for _ in range(15):
            n = rng.randint(1, 4)
            g = ground(n)
            phi, psi = random_submodular(rng, g), random_submodular(rng, g)
            w = [Fraction(rng.randint(0, 5)) for _ in range(n)]
            r = weighted_intersection(phi, psi, w)
            A = [[X >> i & 1 for i in range(n)] for X in range(1, 1 << n)]
            b = [float(min(phi.value(X), psi.value(X))) for X in range(1, 1 << n)]
            lp = linprog([-float(x) for x in w], A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
            assert lp.status == 0
            assert math.isclose(-lp.fun, float(r.value), abs_tol=1e-7)
            assert r.charge.integrate(StepFunction(g, w)) == r.value
            h = r.h
            assert all(0 <= a <= b for a, b in zip(h.values, w))
            assert choquet(phi, h) + choquet(psi, StepFunction(g, w) - h) == r.value
            # level splits h = w·1_X never beat the infimum
            brute = min(choquet(phi, StepFunction(g, [w[i] if X >> i & 1 else 0 for i in range(n)]))
                        + choquet(psi, StepFunction(g, [0 if X >> i & 1 else w[i] for i in range(n)]))
                        for X in range(1 << n))
            assert brute == r.split_value >= r.value

    def test_weighted_increasing_split_exact(self, rng):
        for _ in range(15):
            n = rng.randint(1, 4)
            g = ground(n)
            phi, psi = random_increasing_submodular(rng, g), random_increasing_submodular(rng, g)
            w = [Fraction(rng.randint(0, 5)) for _ in range(n)]
            r = weighted_intersection(phi, psi, w)
            assert r.split_value == r.value and r.charge.nonnegative()

    def test_weighted_split_gap(self):
        # non-increasing inputs: a fractional h beats every level split
        g = GroundSet("ab")
        phi = SetFunction(g, table=[0, 0, 1, 1])
        psi = SetFunction(g, table=[0, 0, 2, 0])
        r = weighted_intersection(phi, psi, [1, 2])
        assert r.value == 1 and r.split_value == 2
        assert list(r.h.values) == [0, 1]

    def test_weighted_modular(self, rng):
        g = ground(3)
        phi = gen_modular(g, random_charge_values(rng, 3, -2, 2))
        w = [Fraction(2), Fraction(1), Fraction(0)]
        assert weighted_intersection(phi, phi, w).value == sum(x * phi.value(1 << i) for i, x in enumerate(w))


def networkx_coupling_value(rel, ll, lr):
    import networkx as nx
    D = math.lcm(*[x.denominator for x in ll + lr])
    G = nx.DiGraph()
    for i in range(rel.left.n):
        G.add_edge("s", ("L", i), capacity=int(ll[i] * D))
        for j in range(rel.right.n):
            if rel.adj[i] >> j & 1:
                G.add_edge(("L", i), ("R", j), capacity=D)
    for j in range(rel.right.n):
        G.add_edge(("R", j), "t", capacity=int(lr[j] * D))
    return Fraction(nx.maximum_flow_value(G, "s", "t"), D)


class TestCoupling:
    def test_identity(self):
        rel = Relation(["a", "b"], ["x", "y"], [("a", "x"), ("b", "y")])
        c = coupling_exists(rel, [Fraction(1, 2)] * 2, [Fraction(1, 2)] * 2)
        assert isinstance(c, Coupling) and c.matrix == [[Fraction(1, 2), 0], [0, Fraction(1, 2)]]

    def test_single_pair(self):
        rel = Relation(["a", "b"], ["x", "y"], [("a", "x")])
        c = coupling_exists(rel, [Fraction(1, 2)] * 2, [Fraction(1, 2)] * 2)
        assert isinstance(c, HallViolation) and c.X == 0b11 and c.lhs == 1 and c.rhs == Fraction(1, 2)

    def test_complete(self):
        L, R = ["a", "b"], ["x", "y", "z"]
        rel = Relation(L, R, [(a, b) for a in L for b in R])
        assert isinstance(coupling_exists(rel, [Fraction(1, 3), Fraction(2, 3)], [Fraction(1, 3)] * 3), Coupling)

    def test_bad_distribution(self):
        rel = Relation(["a"], ["x"], [("a", "x")])
        with pytest.raises(InvalidDistribution):
            coupling_exists(rel, [Fraction(1, 2)], [1])

    def test_dichotomy_random(self, rng):
        for _ in range(100):
            nl, nr = rng.randint(1, 6), rng.randint(1, 6)
            L, R = ground(nl, "l"), ground(nr, "r")
            rel = random_relation(rng, L, R, 0.4)
            ll, lr = random_distribution(rng, nl), random_distribution(rng, nr)
            res = coupling_exists(rel, ll, lr)
            flow = networkx_coupling_value(rel, ll, lr)
            if isinstance(res, Coupling):
                assert flow == 1
                M = res.matrix
                assert all(M[i][j] >= 0 for i in range(nl) for j in range(nr))
                assert all(M[i][j] == 0 for i in range(nl) for j in range(nr) if not rel.adj[i] >> j & 1)
                assert [sum(r) for r in M] == ll
                assert [sum(M[i][j] for i in range(nl)) for j in range(nr)] == lr
            else:
                assert flow < 1
                img = rel.image(res.X)
                assert res.lhs == sum(ll[i] for i in range(nl) if res.X >> i & 1)
                assert res.rhs == sum(lr[j] for j in range(nr) if img >> j & 1)
                assert res.lhs > res.rhs
                # deficiency equals the flow gap (König–Hall duality)
                assert res.lhs - res.rhs == 1 - flow


class TestMatroidIntersection:
    def test_free(self):
        free = gen_modular(["a", "b", "c"], [1, 1, 1])
        r = matroid_intersection_check(free, free)
        assert r.max_size == 3 and r.minimizer == 0

    def test_zero(self, k3):
        r = matroid_intersection_check(k3, gen_matroid_rank(k3.ground, "uniform", k=0))
        assert r.max_size == 0

    def test_partition_p3(self):
        # edges e, f share one endpoint on the left side
        g = GroundSet(["e", "f"])
        left = SetFunction(g, table=[0, 1, 1, 1])
        right = SetFunction(g, table=[0, 1, 1, 2])
        assert matroid_intersection_check(left, right).max_size == 1

    def test_not_matroid(self, tri):
        with pytest.raises(NotAMatroidRank):
            matroid_intersection_check(tri, tri)
