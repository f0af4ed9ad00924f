"""Relations between finite ground sets and their images."""
from __future__ import annotations

from typing import Iterable

from ..errors import BadArgument
from .ground import GroundSet, as_ground


class Relation:
    """R ⊆ U × W stored as per-left-atom adjacency masks over W."""

    __slots__ = ("left", "right", "pairs", "adj")

    def __init__(self, left, right, pairs: Iterable[tuple[str, str]]):
        self.left: GroundSet = as_ground(left)
        self.right: GroundSet = as_ground(right)
        adj = [0] * self.left.n
        ps = set()
        for u, w in pairs:
            if u not in self.left or w not in self.right:
                raise BadArgument(f"pair ({u!r}, {w!r}) references an unknown atom")
            adj[self.left.index(u)] |= 1 << self.right.index(w)
            ps.add((u, w))
        self.pairs = frozenset(ps)
        self.adj = tuple(adj)

    def image(self, X: int) -> int:
        """R(X) = {w : ∃u ∈ X, (u, w) ∈ R}."""
        m = 0
        for i, a in enumerate(self.adj):
            if X >> i & 1:
                m |= a
        return m

    def coimage(self, X: int) -> int:
        """{w : ∀u ∈ X, (u, w) ∈ R}; the full right set when X = ∅."""
        m = self.right.full
        for i, a in enumerate(self.adj):
            if X >> i & 1:
                m &= a
        return m

    def inverse(self) -> "Relation":
        return Relation(self.right, self.left, ((w, u) for u, w in self.pairs))

    def sorted_pairs(self) -> list[tuple[str, str]]:
        li, ri = self.left.index, self.right.index
        return sorted(self.pairs, key=lambda p: (li(p[0]), ri(p[1])))

    def __repr__(self) -> str:
        return f"Relation({list(self.left.atoms)} -> {list(self.right.atoms)}, {len(self.pairs)} pairs)"


def relation_image(rel: Relation, X: int) -> int:
    return rel.image(X)


def relation_coimage(rel: Relation, X: int) -> int:
    return rel.coimage(X)


def graph_incidence(edges: dict[str, tuple[str, str]]) -> Relation:
    """Edge-to-endpoint relation of a graph whose edges are the atoms."""
    verts: list[str] = []
    for u, v in edges.values():
        for x in (u, v):
            if x not in verts:
                verts.append(x)
    return Relation(list(edges), verts, [(e, x) for e, (u, v) in edges.items() for x in (u, v)])
