import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from submod import kernels
from submod.kernels import _pykernels as py

from conftest import brute_mobius_upper, is_sub

compiled = pytest.mark.skipif(not kernels.HAVE_COMPILED, reason="compiled kernels not built")


def int_table(rng, n, lo=-20, hi=20):
    return [rng.randint(lo, hi) for _ in range(1 << n)]


def run_both(fn, *args):
    with kernels.use_backend("python"):
        a = getattr(kernels, fn)(*args)
    with kernels.use_backend("compiled"):
        b = getattr(kernels, fn)(*args)
    return a, b


@compiled
class TestParity:
    @pytest.mark.parametrize("fn", ["pair_violation", "local_violation", "monotone_violation"])
    def test_violations(self, fn):
        rng = random.Random(1)
        for _ in range(100):
            n = rng.randint(0, 6)
            t = int_table(rng, n)
            if rng.random() < 0.5:  # increasing submodular, so the "no violation" branch is exercised
                t = [min(bin(X).count("1"), 2) for X in range(1 << n)]
            a, b = run_both(fn, t, n)
            assert (a is None) == (b is None)
            if a is not None:
                assert a == b

    @pytest.mark.parametrize("fn", ["zeta_upper", "zeta_lower", "mobius_upper", "mobius_lower"])
    def test_transforms(self, fn):
        rng = random.Random(2)
        for n in range(0, 9):
            t = int_table(rng, n)
            a, b = run_both(fn, t, n)
            assert a == b

    def test_opt_and_dp(self):
        rng = random.Random(3)
        for n in range(1, 8):
            t = int_table(rng, n)
            for mx in (False, True):
                assert run_both("subset_opt", t, n, mx)[0] == run_both("subset_opt", t, n, mx)[1]
                assert run_both("superset_opt", t, n, mx)[0] == run_both("superset_opt", t, n, mx)[1]
                pa, pb = run_both("partition_dp", t, n, mx)
                assert pa[0] == pb[0]
                ca, cb = run_both("convolve", t, t[::-1], n, mx)
                assert ca[0] == cb[0]
            for po in (False, True):
                a, b = run_both("chain_dp", t, n, po)
                assert a == b

    def test_alternating(self):
        rng = random.Random(4)
        for _ in range(30):
            n = rng.randint(1, 4)
            # mix of coverage-like (passing) and random (failing) tables
            if rng.random() < 0.5:
                alpha = [0] + [rng.randint(0, 3) for _ in range(1, 1 << n)]
                t = [sum(a for Y, a in enumerate(alpha) if Y & X) for X in range(1 << n)]
            else:
                t = int_table(rng, n, 0, 10)
                t[0] = 0
            a, b = run_both("alternating_violation", t, n, n)
            assert (a is None) == (b is None)
            if a is not None:
                assert a[2] > 0 and b[2] > 0

    def test_overflow_routes_to_python(self):
        big = [0, 1 << 62, 1 << 62, 1 << 63]
        with kernels.use_backend("compiled"):
            assert kernels.mobius_upper(big, 2) == py.mobius_upper(big, 2)
            assert kernels.pair_violation(big, 2) == py.pair_violation(big, 2)


class TestPythonKernels:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.fractions(-5, 5, max_denominator=4),
                                                                             min_size=1 << n, max_size=1 << n))))
    def test_mobius_fraction(self, data):
        n, t = data
        assert py.mobius_upper(t, n) == brute_mobius_upper(t, n)
        assert py.zeta_upper(py.mobius_upper(t, n), n) == t

    def test_partition_dp(self):
        # min over partitions of [0..n) of Σ t(block), against explicit enumeration
        from conftest import set_partitions
        rng = random.Random(9)
        for n in range(1, 6):
            t = [Fraction(rng.randint(-5, 5)) for _ in range(1 << n)]
            best, _ = py.partition_dp(t, n, False)
            want = min(sum(t[sum(1 << i for i in B)] for B in P) for P in set_partitions(list(range(n))))
            assert best[(1 << n) - 1] == want

    def test_use_backend(self):
        with kernels.use_backend("python"):
            assert kernels.backend() == "python"
        with pytest.raises(ValueError):
            with kernels.use_backend("gpu"):
                pass


def test_benchmark_script_smoke(capsys):
    import importlib.util
    import pathlib
    path = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    if not kernels.HAVE_COMPILED:
        pytest.skip("compiled kernels not built")
    assert mod.main(["--sizes", "4", "--repeat", "1"]) == 0
    assert "MISMATCH" not in capsys.readouterr().out
