"""Shared fixtures and brute-force oracles.

The oracles here are deliberately naive re-implementations that do not call
the library's kernels, so that every check has two independent routes.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from submod.core import GroundSet, SetFunction, gen_cut, gen_matroid_rank


K3_EDGES = {"e1": ("u", "v"), "e2": ("v", "w"), "e3": ("u", "w")}
K4_EDGES = {f"e{i}{j}": (str(i), str(j)) for i in range(4) for j in range(i + 1, 4)}
K23_EDGES = {f"e{a}{b}": (a, b) for a in "pq" for b in "xyz"}


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def tri():
    """Unit triangle cut on {a, b, c}."""
    return gen_cut(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def k3():
    return gen_matroid_rank(kind="graphic", edges=K3_EDGES)


def F(x) -> Fraction:
    return Fraction(x)


def subsets(n):
    return range(1 << n)


def is_sub(a, b):
    return a & b == a


def brute_submodular(t, n) -> bool:
    N = 1 << n
    return all(t[X | Y] + t[X & Y] <= t[X] + t[Y] for X in range(N) for Y in range(N))


def brute_increasing(t, n) -> bool:
    N = 1 << n
    return all(t[X] <= t[Y] for X in range(N) for Y in range(N) if is_sub(X, Y))


def brute_lovasz(t, n, f) -> Fraction:
    """Σ f(x_i)(φ(S_i) − φ(S_{i−1})) along atoms sorted by decreasing f, φ normalized."""
    base = t[0]
    order = sorted(range(n), key=lambda i: -f[i])
    S, prev, total = 0, Fraction(0), Fraction(0)
    for i in order:
        S |= 1 << i
        cur = t[S] - base
        total += f[i] * (cur - prev)
        prev = cur
    return total


def brute_mobius_upper(t, n):
    N = 1 << n
    return [sum(t[Y] * (-1) ** bin(Y ^ X).count("1") for Y in range(N) if is_sub(X, Y)) for X in range(N)]


def brute_meet(a, b, n, X):
    return min(a[Y] + b[X & ~Y] for Y in range(1 << n) if is_sub(Y, X))


def set_partitions(items):
    """All partitions of a list into nonempty blocks (recursive, naive)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def networkx_forest_rank(edges: dict, mask_labels):
    import networkx as nx
    G = nx.MultiGraph()
    for lab in mask_labels:
        u, v = edges[lab]
        G.add_edge(u, v)
    return G.number_of_nodes() - nx.number_connected_components(G) if G.number_of_nodes() else 0


def graphic_table(edges: dict):
    atoms = list(edges)
    n = len(atoms)
    return [Fraction(networkx_forest_rank(edges, [atoms[i] for i in range(n) if X >> i & 1]))
            for X in range(1 << n)]


def table_fn(atoms, values):
    return SetFunction(GroundSet(atoms), table=[Fraction(v) for v in values])


ACCEPTANCE: list[str] = []


def acceptance_line(k: int, title: str, ok: bool, detail: str = "") -> str:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k:2d}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
