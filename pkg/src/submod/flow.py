"""Exact maximum flow (Edmonds–Karp) with rational capacities."""
from __future__ import annotations

from collections import deque
from fractions import Fraction


class FlowNetwork:
    def __init__(self):
        self.cap: dict = {}
        self.adj: dict = {}

    def add_edge(self, u, v, capacity):
        self.adj.setdefault(u, [])
        self.adj.setdefault(v, [])
        if (u, v) not in self.cap:
            self.adj[u].append(v)
            self.adj[v].append(u)
            self.cap.setdefault((v, u), Fraction(0))
            self.cap[(u, v)] = Fraction(0)
        self.cap[(u, v)] += Fraction(capacity)

    def max_flow(self, s, t):
        """Returns (value, flow dict on original edges, set of nodes reachable from s in the residual)."""
        original = {e: c for e, c in self.cap.items()}
        res = dict(self.cap)
        value = Fraction(0)
        while True:
            parent = {s: None}
            q = deque([s])
            while q and t not in parent:
                u = q.popleft()
                for v in self.adj.get(u, ()):
                    if v not in parent and res[(u, v)] > 0:
                        parent[v] = u
                        q.append(v)
            if t not in parent:
                break
            bott = None
            v = t
            while parent[v] is not None:
                u = parent[v]
                bott = res[(u, v)] if bott is None else min(bott, res[(u, v)])
                v = u
            v = t
            while parent[v] is not None:
                u = parent[v]
                res[(u, v)] -= bott
                res[(v, u)] += bott
                v = u
            value += bott
        self.residual = res
        flow = {e: max(original[e] - res[e], Fraction(0)) for e in original if original[e] > 0}
        return value, flow, set(parent)

    def reaching(self, t) -> set:
        """Nodes that can reach t in the residual network of the last max_flow call."""
        res = self.residual
        seen = {t}
        q = deque([t])
        while q:
            v = q.popleft()
            for u in self.adj.get(v, ()):
                if u not in seen and res[(u, v)] > 0:
                    seen.add(u)
                    q.append(u)
        return seen
