"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--sizes 8 10 12] [--repeat 3] [--seed 0]

Each kernel runs on the same random integer table under both backends; the
results are compared for equality before timings are reported.
"""
import argparse
import random
import sys
import time

from submod import kernels

KERNELS = {
    "pair_violation": lambda t, n: kernels.pair_violation(t, n),
    "local_violation": lambda t, n: kernels.local_violation(t, n),
    "monotone_violation": lambda t, n: kernels.monotone_violation(t, n),
    "subset_opt": lambda t, n: kernels.subset_opt(t, n, True),
    "mobius_upper": lambda t, n: kernels.mobius_upper(t, n),
    "chain_dp": lambda t, n: kernels.chain_dp(t, n, False),
    "partition_dp": lambda t, n: kernels.partition_dp(t, n, False),
    "convolve": lambda t, n: kernels.convolve(t, t, n, False),
}
CUBIC = {"partition_dp", "convolve"}


def submodular_table(rng, n):
    """Integer coverage-like table, so violation scans run to completion."""
    cover = [rng.getrandbits(24) for _ in range(n)]
    t = []
    for X in range(1 << n):
        u = 0
        for i in range(n):
            if X >> i & 1:
                u |= cover[i]
        t.append(bin(u).count("1"))
    return t


def best_time(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not kernels.HAVE_COMPILED:
        print("compiled kernels are not built; run `python3 setup.py build_ext --inplace`", file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    print(f"{'kernel':<20}{'n':>4}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    mismatch = False
    for n in args.sizes:
        t = submodular_table(rng, n)
        for name, fn in KERNELS.items():
            if name in CUBIC and n > 12:
                continue
            with kernels.use_backend("python"):
                tp, rp = best_time(lambda: fn(t, n), args.repeat)
            with kernels.use_backend("compiled"):
                tc, rc = best_time(lambda: fn(t, n), args.repeat)
            flag = "" if rp == rc else "  MISMATCH"
            mismatch |= rp != rc
            print(f"{name:<20}{n:>4}{tp:>12.5f}{tc:>12.5f}{tp / max(tc, 1e-9):>9.1f}x{flag}")
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
