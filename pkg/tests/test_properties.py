"""Hypothesis-driven invariants spanning several modules."""
from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from submod.calculus import complement, join_meet, monotonize, variation, weighting
from submod.choquet import StepFunction, choquet, layer_cake
from submod.core import GroundSet, SetFunction, check_increasing, check_submodular
from submod.geometry import induce_representation, induce_table, lindstrom_wilf
from submod.polyhedra import Charge, greedy_chain_charge, intersection_value
from submod.sfm import minimize, positive_part_function

from conftest import brute_meet, brute_submodular

SETTINGS = settings(max_examples=60, deadline=None)
small_q = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def tables(draw, max_n=4, normalized=True):
    n = draw(st.integers(0, max_n))
    vals = draw(st.lists(small_q, min_size=1 << n, max_size=1 << n))
    if normalized:
        vals[0] = Fraction(0)
    return SetFunction(GroundSet([f"x{i}" for i in range(n)]), table=vals)


@st.composite
def submodular_fns(draw, max_n=4):
    """Sums of nonnegative multiples of cut-like and concave-of-cardinality pieces plus a charge."""
    n = draw(st.integers(1, max_n))
    g = GroundSet([f"x{i}" for i in range(n)])
    N = 1 << n
    t = [Fraction(0)] * N
    for _ in range(draw(st.integers(0, 3))):
        T = draw(st.integers(1, N - 1))
        c = draw(st.fractions(0, 4, max_denominator=3))
        for X in range(N):
            t[X] += c * int(X & T != 0)  # ψ_T is submodular
    a, b = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
    w = draw(st.fractions(0, 3, max_denominator=2))
    for X in range(N):
        t[X] += w * ((X >> a & 1) ^ (X >> b & 1))  # one cut edge
    atoms = draw(st.lists(small_q, min_size=n, max_size=n))
    for X in range(N):
        t[X] += sum(atoms[i] for i in range(n) if X >> i & 1)
    return SetFunction(g, table=t)


def steps(g, draw_vals):
    return StepFunction(g, draw_vals)


class TestProperties:
    @SETTINGS
    @given(submodular_fns())
    def test_generator_is_submodular(self, phi):
        assert brute_submodular(phi.table, phi.n) and check_submodular(phi)

    @SETTINGS
    @given(tables(normalized=False), st.sampled_from(["li", "ui", "ls", "us"]))
    def test_monotonize_is_monotone_and_idempotent(self, phi, which):
        m = monotonize(phi, which)
        assert monotonize(m, which).equals(m)
        if which in ("ls", "ui"):
            assert check_increasing(m)
        else:
            assert check_increasing(m * -1)

    @SETTINGS
    @given(tables(normalized=False))
    def test_complement_involution(self, phi):
        assert complement(complement(phi)).equals(phi)

    @SETTINGS
    @given(tables(), tables())
    def test_meet_commutes(self, a, b):
        assume(a.n == b.n)
        b = SetFunction(a.ground, table=b.table)
        assert join_meet(a, b, "land").equals(join_meet(b, a, "land"))
        for X in range(a.ground.size):
            assert join_meet(a, b, "land").value(X) == brute_meet(a.table, b.table, a.n, X)

    @SETTINGS
    @given(tables())
    def test_variation_decomposition(self, phi):
        v = variation(phi)
        assert (v.mu - v.nu).equals(phi)
        assert v.total_variation >= abs(phi.value(phi.full) - phi.value(0))

    @SETTINGS
    @given(submodular_fns(), st.data())
    def test_choquet_convex_and_greedy_vertex(self, phi, data):
        g = phi.ground
        f = StepFunction(g, data.draw(st.lists(small_q, min_size=g.n, max_size=g.n)))
        h = StepFunction(g, data.draw(st.lists(small_q, min_size=g.n, max_size=g.n)))
        assert choquet(phi, f + h) <= choquet(phi, f) + choquet(phi, h)
        assert layer_cake(f).reconstruct() == f
        order = sorted(range(g.n), key=lambda i: (-f.values[i], i))
        alpha = greedy_chain_charge(phi, [g.atoms[i] for i in order])
        assert alpha.integrate(f) == choquet(phi, f)

    @SETTINGS
    @given(submodular_fns(max_n=3), submodular_fns(max_n=3))
    def test_intersection(self, phi, psi):
        assume(phi.n == psi.n)
        psi = SetFunction(phi.ground, table=psi.table)
        r = intersection_value(phi, psi)
        assert r.value == brute_meet(phi.table, psi.table, phi.n, phi.ground.full)
        assert r.charge.first_excess(phi) is None and r.charge.first_excess(psi) is None

    @SETTINGS
    @given(tables(max_n=4))
    def test_lindstrom_wilf_and_induce(self, phi):
        lw = lindstrom_wilf(phi)
        assert lw.factorization_holds
        assert lw.inertia.as_tuple() == lw.sign_census
        assert list(induce_table(induce_representation(phi))) == list(phi.table)

    @SETTINGS
    @given(tables(max_n=4, normalized=False))
    def test_positive_part_bounds(self, phi):
        pp = positive_part_function(phi)
        for X in range(1, phi.ground.size):
            assert 0 <= pp.value(X) <= max(phi.value(X), 0)

    @SETTINGS
    @given(tables(normalized=False))
    def test_minimize(self, phi):
        r = minimize(phi)
        assert r.value == min(phi.table) == phi.value(r.minimizer)

    @SETTINGS
    @given(submodular_fns(max_n=3), st.data())
    def test_weighting_lemma(self, phi, data):
        # weighting by a nonnegative w preserves submodularity and agrees with the integral
        g = phi.ground
        phi = phi - phi.value(0)
        w = data.draw(st.lists(st.fractions(0, 4, max_denominator=3), min_size=g.n, max_size=g.n))
        wp = weighting(w, phi)
        assert check_submodular(wp)
        W = StepFunction(g, w)
        for X in range(g.size):
            ind = StepFunction(g, [w[i] if X >> i & 1 else 0 for i in range(g.n)])
            assert wp.value(X) == choquet(phi, ind)
        assert Charge(g, [1] * g.n).integrate(W) == sum(w)
