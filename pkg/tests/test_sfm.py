import random
from fractions import Fraction

import pytest

from submod.core import (GroundSet, SetFunction, gen_coverage, gen_cut, gen_matroid_rank, gen_modular,
                         graph_incidence)
from submod.errors import NotSubadditive, TooLarge
from submod.instances import ground, random_increasing_submodular, random_submodular, random_table
from submod.polyhedra import Charge
from submod.sfm import (PARTITION_MAX_N, dilworth_truncation_rank, majorizer, majorizer_charge, minimize,
                        positive_part, positive_part_function)

from conftest import (K3_EDGES, K4_EDGES, K23_EDGES, brute_increasing, brute_submodular, graphic_table,
                      set_partitions, table_fn)


def brute_pos_part(t, n, X):
    items = [i for i in range(n) if X >> i & 1]
    if not items:
        return max(t[0], 0)
    return min(sum(max(t[sum(1 << i for i in B)], 0) for B in P) for P in set_partitions(items))


def brute_majorizer(t, n, X):
    items = [i for i in range(n) if X >> i & 1]
    if not items:
        return 0
    return max(sum(t[sum(1 << i for i in B)] for B in P) for P in set_partitions(items))


class TestMinimize:
    def test_increasing(self, k3):
        r = minimize(k3)
        assert r.minimizer == 0 and r.value == 0 and r.certified and r.method == "exhaustive"

    def test_triangle_tie(self, tri):
        r = minimize(tri)
        assert r.minimizer == 0 and r.value == 0

    def test_bridge(self):
        atoms = ["a", "b", "c", "d", "e", "f"]
        edges = [("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f"), ("c", "d")]
        cut = gen_cut(atoms, edges)
        r = minimize(cut, ["a", "b", "c", "d", "e"])
        # the only proper nonempty set cutting one edge within the restriction
        nonempty = min((cut.value(X), X) for X in range(1, 1 << 6) if X != 63)
        assert nonempty[0] == 1 and set(cut.ground.labels(nonempty[1])) in ({"a", "b", "c"}, {"d", "e", "f"})
        assert r.value == 0 and r.minimizer == 0

    def test_random_rescan(self, rng):
        for n in range(0, 7):
            phi = random_table(rng, ground(n), normalized=False)
            r = minimize(phi)
            assert r.value == min(phi.table) and r.minimizer == phi.table.index(r.value)
            U = rng.randrange(1 << n) if n else 0
            r = minimize(phi, U)
            subs = [X for X in range(1 << n) if X & U == X]
            assert r.value == min(phi.value(X) for X in subs) and r.minimizer & U == r.minimizer

    def test_to_json(self, tri):
        assert minimize(tri).to_json() == {"minimizer": [], "value": "0/1", "method": "exhaustive",
                                           "certified": True}


class TestPositivePart:
    def test_subadditive_nonneg(self, k3):
        r = positive_part(k3)
        assert r.value == 2 and r.partition == (7,)

    def test_k3_edge2graph(self):
        rho = gen_coverage(graph_incidence(K3_EDGES))
        r = positive_part(rho - 1)
        assert r.value == 2 and r.partition == (7,)

    def test_against_brute(self, rng):
        for n in range(0, 6):
            phi = random_table(rng, ground(n), normalized=False)
            pp = positive_part_function(phi)
            for X in range(1 << n):
                assert pp.value(X) == brute_pos_part(phi.table, n, X)
                assert 0 <= pp.value(X) <= max(phi.value(X), 0) or X == 0
            for X in range(1, 1 << n):
                r = positive_part(phi, X)
                blocks = r.partition
                acc = 0
                for B in blocks:
                    assert B and acc & B == 0
                    acc |= B
                assert acc == X and r.value == sum(max(phi.value(B), 0) for B in blocks)

    def test_dilw_submodular(self, rng):
        for n in range(1, 7):
            phi = random_increasing_submodular(rng, ground(n)) - Fraction(rng.randint(0, 3))
            pp = positive_part_function(phi)
            assert brute_submodular(pp.table, n) and brute_increasing(pp.table, n)

    def test_maximality(self, rng):
        # any submodular 0 ≤ ψ ≤ |φ|₊ lies below φ∘
        for n in range(1, 5):
            g = ground(n)
            phi = random_increasing_submodular(rng, g) - 1
            pp = positive_part_function(phi)
            for _ in range(10):
                psi = random_increasing_submodular(rng, g)
                scale = min((max(phi.value(X), 0) / psi.value(X) for X in range(1, 1 << n) if psi.value(X)),
                            default=Fraction(0))
                cand = psi * scale
                assert all(cand.value(X) <= pp.value(X) for X in range(1 << n))

    def test_too_large(self):
        g = ground(PARTITION_MAX_N + 1)
        with pytest.raises(TooLarge):
            positive_part(SetFunction.constant(g, 0))


class TestDilworth:
    @pytest.mark.parametrize("edges", [K3_EDGES, K4_EDGES, K23_EDGES], ids=["K3", "K4", "K23"])
    def test_graphic(self, edges):
        r = dilworth_truncation_rank(edges)
        assert list(r.table) == graphic_table(edges)

    def test_single_edge(self):
        assert list(dilworth_truncation_rank([("u", "v")]).table) == [0, 1]

    def test_matches_generator(self, k3):
        assert dilworth_truncation_rank(K3_EDGES).equals(k3)


class TestMajorizer:
    def test_modular(self):
        phi = gen_modular(["a", "b", "c"], [1, 2, 3])
        assert majorizer(phi).value == 6

    def test_uniform(self):
        phi = table_fn("ab", [0, 1, 1, 1])
        r = majorizer(phi)
        assert r.value == 2 and sorted(r.partition) == [1, 2]

    def test_k3(self, k3):
        r = majorizer(k3)
        assert r.value == 3 and sorted(r.partition) == [1, 2, 4]
        assert majorizer_charge(k3) == Charge(k3.ground, [1, 1, 1])

    def test_against_brute_and_additive(self, rng):
        for n in range(1, 6):
            phi = random_increasing_submodular(rng, ground(n))
            vals = [majorizer(phi, X).value for X in range(1 << n)]
            for X in range(1 << n):
                assert vals[X] == brute_majorizer(phi.table, n, X) >= phi.value(X)
                for W in range(1 << n):
                    if X & W == 0:
                        assert vals[X | W] == vals[X] + vals[W]

    def test_not_subadditive(self):
        with pytest.raises(NotSubadditive):
            majorizer(table_fn("ab", [0, 1, 1, 3]))
