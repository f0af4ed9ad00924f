"""Björner distance, roofs and flats, Möbius matrices, and strong submodularity."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import kernels
from .calculus import _scaled, _unscale, quotient
from .core.certificate import Certificate, holds, violated
from .core.ground import GroundSet, as_ground, check_size, popcount
from .core.properties import require_increasing, require_submodular
from .core.relation import Relation
from .core.setfunction import SetFunction
from .errors import BadArgument, EmptyWindow, InternalError, NotSurjective, TooLarge
from .linalg import Inertia, inertia, matmul, quad_form, transpose
from .rational import fmt, to_fraction

DENSE_MAX_N = 12
PRODUCT_CHECK_MAX_N = 6
UNION_MAX_N = 6
TRIANGLE_MAX_N = 5
ALTERNATING_BUDGET = {"compiled": 60_000_000, "python": 3_000_000}


def _q(v):
    return fmt(v)


# -- Björner distance -----------------------------------------------------------------

@dataclass(frozen=True)
class DistanceMatrix:
    ground: GroundSet
    entries: tuple  # entries[X][Y], rows and columns indexed by masks

    def __call__(self, X, Y) -> Fraction:
        return self.entries[self.ground.mask(X)][self.ground.mask(Y)]

    def to_json(self) -> list:
        return [[_q(v) for v in row] for row in self.entries]


def _distance_entries(phi: SetFunction) -> list[list[Fraction]]:
    t = phi.table
    N = phi.ground.size
    return [[2 * t[X | Y] - t[X] - t[Y] for Y in range(N)] for X in range(N)]


def bjorner_distance(phi: SetFunction, check: bool = True) -> DistanceMatrix:
    """d(X,Y) = 2φ(X∪Y) − φ(X) − φ(Y) for increasing submodular φ."""
    require_increasing(phi)
    require_submodular(phi)
    check_size(phi.n, DENSE_MAX_N, what="distance matrix")
    d = _distance_entries(phi)
    N = phi.ground.size
    for X in range(N):
        if d[X][X] != 0:
            raise InternalError("distance has a nonzero diagonal")
        for Y in range(X):
            if d[X][Y] != d[Y][X] or d[X][Y] < 0:
                raise InternalError("distance is not symmetric and nonnegative")
    if check and phi.n <= TRIANGLE_MAX_N:
        g = phi.ground
        for X in range(N):
            dX = d[X]
            for Y in range(N):
                dXY = dX[Y]
                dY = d[Y]
                for Z in range(N):
                    if dX[Z] > dXY + dY[Z]:
                        raise InternalError(f"triangle inequality fails at {g.fmt(X)}, {g.fmt(Y)}, {g.fmt(Z)}")
        for A in range(N):
            for X in range(N):
                for Y in range(X):
                    if d[X | A][Y | A] > d[X][Y]:
                        raise InternalError("union contraction fails")
    return DistanceMatrix(phi.ground, tuple(tuple(r) for r in d))


def triangle_violation(dist: DistanceMatrix):
    """First (X, Y, Z) with d(X,Z) > d(X,Y) + d(Y,Z), or None."""
    d = dist.entries
    N = len(d)
    for X in range(N):
        for Y in range(N):
            for Z in range(N):
                if d[X][Z] > d[X][Y] + d[Y][Z]:
                    return X, Y, Z
    return None


# -- roofs and flats ------------------------------------------------------------------

@dataclass(frozen=True)
class RoofPartition:
    ground: GroundSet
    classes: tuple  # each a tuple of masks, ascending; classes ordered by their least mask
    class_of: tuple  # mask -> class index
    values: tuple  # φ on each class
    tops: tuple  # largest member of each class
    join: tuple  # join[i][j]
    meet: tuple  # meet[i][j]
    leq: tuple  # leq[i][j] = roof i below roof j
    flats: tuple  # flat of each roof as a tuple of masks (union of roofs below)

    def to_json(self) -> dict:
        g = self.ground
        return {"roofs": [[g.labels(m) for m in c] for c in self.classes],
                "values": [_q(v) for v in self.values],
                "tops": [g.labels(t) for t in self.tops]}


def roofs(phi: SetFunction) -> RoofPartition:
    """Classes of subsets at Björner distance 0, with their lattice structure and flats."""
    require_increasing(phi)
    require_submodular(phi)
    check_size(phi.n, DENSE_MAX_N, what="roofs")
    g = phi.ground
    t = phi.table
    N = g.size
    parent = list(range(N))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # d(X,Y) = 0 iff X and Y are both at distance 0 from X∪Y
    for X in range(N):
        for Y in range(X):
            U = X | Y
            if t[U] == t[X] and t[U] == t[Y]:
                a, b = find(X), find(Y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    reps = {}
    for X in range(N):
        reps.setdefault(find(X), []).append(X)
    classes = tuple(tuple(v) for _, v in sorted(reps.items()))
    class_of = [0] * N
    for i, c in enumerate(classes):
        for X in c:
            class_of[X] = i
    tops = []
    for i, c in enumerate(classes):
        top = 0
        for X in c:
            top |= X
        if class_of[top] != i:
            raise InternalError("roof is not closed under union")
        tops.append(top)
    k = len(classes)
    join = [[class_of[tops[i] | tops[j]] for j in range(k)] for i in range(k)]
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            for X in ci[:3]:
                for Y in cj[:3]:
                    if class_of[X | Y] != join[i][j]:
                        raise InternalError("roof join depends on representatives")
    leq = [[join[i][j] == j for j in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(k):
            if i != j and leq[i][j] and leq[j][i]:
                raise InternalError("roof order is not antisymmetric")
    meet = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            lower = [r for r in range(k) if leq[r][i] and leq[r][j]]
            top = [r for r in lower if all(leq[s][r] for s in lower)]
            if len(top) != 1:
                raise InternalError("roofs do not form a lattice")
            meet[i][j] = top[0]
    flats = []
    for i in range(k):
        fl = tuple(sorted(X for r in range(k) if leq[r][i] for X in classes[r]))
        # the roof is recovered as the members of the flat with maximal value
        vmax = max(t[X] for X in fl)
        if tuple(X for X in fl if t[X] == vmax) != classes[i]:
            raise InternalError("flat does not determine its roof")
        flats.append(fl)
    return RoofPartition(g, classes, tuple(class_of), tuple(t[c[0]] for c in classes), tuple(tops),
                         tuple(map(tuple, join)), tuple(map(tuple, meet)), tuple(map(tuple, leq)),
                         tuple(flats))


# -- Möbius machinery -----------------------------------------------------------------

def _apply(fn, phi: SetFunction) -> SetFunction:
    check_size(phi.n, what="transform")
    (t,), d = _scaled(phi)
    return SetFunction(phi.ground, table=_unscale(fn(t, phi.n), d), tolerance=phi.tolerance)


def zeta_upper(phi: SetFunction) -> SetFunction:
    """(Zφ)(X) = Σ_{Y⊇X} φ(Y)."""
    return _apply(kernels.zeta_upper, phi)


def zeta_lower(phi: SetFunction) -> SetFunction:
    """(Zᵀφ)(X) = Σ_{Y⊆X} φ(Y)."""
    return _apply(kernels.zeta_lower, phi)


def mobius_upper(phi: SetFunction) -> SetFunction:
    """(Mφ)(X) = Σ_{Y⊇X} (−1)^{|Y∖X|} φ(Y)."""
    return _apply(kernels.mobius_upper, phi)


def mobius_lower(phi: SetFunction) -> SetFunction:
    """(Mᵀφ)(X) = Σ_{Y⊆X} (−1)^{|X∖Y|} φ(Y)."""
    return _apply(kernels.mobius_lower, phi)


@dataclass(frozen=True)
class MobiusKit:
    ground: GroundSet
    Z: tuple
    M: tuple
    C: tuple
    P: tuple
    N: tuple
    P_inv: tuple

    def apply(self, name: str, vec: Sequence) -> list:
        A = getattr(self, name)
        return [sum((a * v for a, v in zip(row, vec) if a), 0) for row in A]


def _identity_check(kit: MobiusKit) -> None:
    n, N = kit.ground.n, kit.ground.size
    if n <= PRODUCT_CHECK_MAX_N:
        I = [[int(i == j) for j in range(N)] for i in range(N)]
        if matmul(kit.M, kit.Z) != I:
            raise InternalError("M·Z is not the identity")
        J = [[1] * N for _ in range(N)]
        ZC = matmul(kit.Z, kit.C)
        if [[J[i][j] - ZC[i][j] for j in range(N)] for i in range(N)] != [list(r) for r in kit.P]:
            raise InternalError("P differs from J − Z·C")
        CM = matmul(kit.C, kit.M)
        if [[-x for x in r] for r in CM] != [list(r) for r in kit.N]:
            raise InternalError("N differs from −C·M")
        PP = matmul(kit.P, kit.P_inv)
        I[0][0] = 0
        if PP != I:
            raise InternalError("P·P⁻¹ is not the identity off (∅,∅)")
        return
    # larger n: check M·Z = I column by column with the fast transform
    for Y in range(N):
        col = [int(X & Y == X) for X in range(N)]
        out = kernels.mobius_upper(col, n)
        if any(v != int(X == Y) for X, v in enumerate(out)):
            raise InternalError("M·Z is not the identity")


def mobius_kit(ground, check: bool = True) -> MobiusKit:
    """Dense Z, M, C, P, N and the pseudo-inverse P⁻¹ over 2^V."""
    g = as_ground(ground)
    check_size(g.n, DENSE_MAX_N, what="dense Möbius matrices")
    N, full = g.size, g.full
    Z = tuple(tuple(int(X & Y == X) for Y in range(N)) for X in range(N))
    M = tuple(tuple((-1 if popcount(Y ^ X) & 1 else 1) if X & Y == X else 0 for Y in range(N))
              for X in range(N))
    C = tuple(tuple(int(Y == full ^ X) for Y in range(N)) for X in range(N))
    P = tuple(tuple(int(X & Y != 0) for Y in range(N)) for X in range(N))
    Nm = tuple(tuple(-M[full ^ X][Y] for Y in range(N)) for X in range(N))
    Pinv = tuple(tuple(0 if X == 0 or Y == 0 else Nm[X][Y] for Y in range(N)) for X in range(N))
    kit = MobiusKit(g, Z, M, C, P, Nm, Pinv)
    if check:
        _identity_check(kit)
    return kit


# -- Lindström–Wilf -------------------------------------------------------------------

def union_matrix(phi: SetFunction) -> list[list]:
    t = phi.table
    N = phi.ground.size
    return [[t[X | Y] for Y in range(N)] for X in range(N)]


@dataclass(frozen=True)
class LindstromWilf:
    U: tuple
    mobius: tuple  # Mφ
    factorization_holds: bool
    inertia: Inertia
    sign_census: tuple  # (#positive, #negative, #zero) of Mφ

    def to_json(self) -> dict:
        return {"factorization_holds": self.factorization_holds,
                "inertia": list(self.inertia.as_tuple()), "sign_census": list(self.sign_census),
                "mobius": [_q(v) for v in self.mobius]}


def lindstrom_wilf(phi: SetFunction) -> LindstromWilf:
    """U_φ, the exact check U = Z·D_{Mφ}·Zᵀ, and the inertia of U against the signs of Mφ."""
    n = phi.n
    check_size(n, UNION_MAX_N, what="union matrix")
    N = phi.ground.size
    U = union_matrix(phi)
    m = mobius_upper(phi).table
    # (Z D Zᵀ)_{X,Y} = Σ_{W ⊇ X∪Y} Mφ(W)
    zm = zeta_upper(SetFunction(phi.ground, table=m)).table
    ok = all(zm[X | Y] == U[X][Y] for X in range(N) for Y in range(N))
    if n <= 4:  # literal dense product as a second route
        Z = [[int(X & Y == X) for Y in range(N)] for X in range(N)]
        ZD = [[Z[i][j] * m[j] for j in range(N)] for i in range(N)]
        ok = ok and matmul(ZD, transpose(Z)) == U
    if not ok:
        raise InternalError("Lindström–Wilf factorization fails")
    ine = inertia(U)
    census = (sum(v > 0 for v in m), sum(v < 0 for v in m), sum(v == 0 for v in m))
    if ine.as_tuple() != census:
        raise InternalError(f"inertia {ine.as_tuple()} differs from Möbius sign census {census}")
    return LindstromWilf(tuple(map(tuple, U)), tuple(m), ok, ine, census)


# -- inducing representation ----------------------------------------------------------

def induce_representation(phi: SetFunction) -> SetFunction:
    """α = P⁻¹φ: the unique α with α(∅) = 0 and φ(X) = Σ_{Y∩X≠∅} α(Y)."""
    if phi.value(0) != 0:
        from .errors import NormalizationViolated
        raise NormalizationViolated("inducing representation needs φ(∅) = 0",
                                    witness={"phi_empty": _q(phi.value(0))})
    g = phi.ground
    m = mobius_upper(phi).table
    # (Nφ)(X) = −(Mφ)(X^c); the ∅ row is zeroed
    alpha = [Fraction(0) if X == 0 else -m[g.full ^ X] for X in range(g.size)]
    alpha = SetFunction(g, table=alpha, name="alpha")
    back = induce_table(alpha)
    if list(back) != list(phi.table):
        raise InternalError("inducing representation does not round-trip")
    return alpha


def induce_table(alpha: SetFunction) -> list:
    """φ(X) = Σ_{Y∩X≠∅} α(Y): the total of α minus its mass on subsets of X^c."""
    g = alpha.ground
    a = list(alpha.table)
    total = sum(a[1:], a[0] * 0)
    low = zeta_lower(SetFunction(g, table=[0] + a[1:])).table
    return [total - low[g.full ^ X] for X in range(g.size)]


def induce_eval(alpha, rel: Relation | None, X) -> Fraction:
    """Value induced at X: Σ_{Y∩X≠∅} α(Y) for the ∈-relation, or α(R(X)) for a charge α on R's right side."""
    if rel is None:
        g = alpha.ground
        Xm = g.mask(X)
        return sum((v for Y, v in enumerate(alpha.table) if Y & Xm), Fraction(0))
    Xm = rel.left.mask(X)
    img = rel.image(Xm)
    if hasattr(alpha, "value"):
        return alpha.value(img)
    vals = [to_fraction(v) for v in alpha]
    return sum((vals[j] for j in range(rel.right.n) if img >> j & 1), Fraction(0))


def quotient_pushforward(alpha: SetFunction, mapping: Mapping[str, str],
                         new_atoms: Sequence[str] | None = None) -> SetFunction:
    """α₁(X) = Σ_{Y : Ψ(Y) = X} α(Y); checks P₁α₁ = quotient of Pα."""
    g = alpha.ground
    if new_atoms is None:
        new_atoms = []
        for a in g.atoms:
            if a in mapping and mapping[a] not in new_atoms:
                new_atoms.append(mapping[a])
    ng = GroundSet(new_atoms)
    img = [1 << ng.index(mapping[a]) if a in mapping and mapping[a] in ng else None for a in g.atoms]
    if any(i is None for i in img):
        raise BadArgument("pushforward map undefined on some atoms")
    hit = 0
    for i in img:
        hit |= i
    if hit != ng.full:
        missed = [a for k, a in enumerate(ng.atoms) if not hit >> k & 1]
        raise NotSurjective(f"map misses {missed}", witness={"missed": missed})
    out = [Fraction(0)] * ng.size
    for Y, v in enumerate(alpha.table):
        Z = 0
        for i in range(g.n):
            if Y >> i & 1:
                Z |= img[i]
        out[Z] += v
    alpha1 = SetFunction(ng, table=out, name="pushforward")
    a0 = SetFunction(g, table=[0] + list(alpha.table[1:]))
    lhs = induce_table(SetFunction(ng, table=[0] + out[1:]))
    rhs = quotient(SetFunction(g, table=induce_table(a0)), dict(mapping), list(ng.atoms)).table
    if list(lhs) != list(rhs):
        raise InternalError("pushforward does not commute with inducing")
    return alpha1


# -- negative type --------------------------------------------------------------------

def negative_type_check(matrix: Sequence[Sequence]) -> Certificate:
    """xᵀAx ≤ 0 on the zero-sum hyperplane, decided on the basis e_i − e_{i+1}."""
    A = [[to_fraction(v) for v in row] for row in matrix]
    m = len(A)
    if m > 64:
        raise TooLarge(f"matrix side {m} exceeds 64")
    if any(len(r) != m for r in A):
        raise BadArgument("matrix is not square")
    if m <= 1:
        return holds("negative_type", details={"dimension": 0})
    k = m - 1
    Q = [[A[i][j] - A[i][j + 1] - A[i + 1][j] + A[i + 1][j + 1] for j in range(k)] for i in range(k)]
    ine = inertia(Q)
    if ine.positive == 0:
        return holds("negative_type", details={"inertia": list(ine.as_tuple())})
    y = ine.positive_direction
    x = [Fraction(0)] * m
    for i, c in enumerate(y):
        x[i] += c
        x[i + 1] -= c
    val = quad_form(A, x)
    if sum(x) != 0 or val <= 0:
        raise InternalError("negative-type witness does not verify")
    return violated("negative_type", {"x": [_q(v) for v in x], "form": _q(val)},
                    details={"inertia": list(ine.as_tuple())})


# -- windows --------------------------------------------------------------------------

def window_check(phi, A, B) -> Fraction:
    """φ̄(A,B) = Σ_{X⊆B} (−1)^{|X|} φ(A∪X) for disjoint A and nonempty B.

    φ is a SetFunction or a callable on frozensets of labels.
    """
    if isinstance(phi, SetFunction):
        g = phi.ground
        Am, Bm = g.mask(A), g.mask(B)
        if Bm == 0:
            raise EmptyWindow("window set B is empty")
        Bm &= ~Am
        check_size(popcount(Bm), 20, what="window")
        total = Fraction(0)
        X = 0
        while True:
            v = phi.value(Am | X)
            total += -v if popcount(X) & 1 else v
            if X == Bm:
                break
            X = (X - Bm) & Bm
        return total
    A = frozenset(A)
    if not set(B):
        raise EmptyWindow("window set B is empty")
    B = sorted(set(B) - A)
    if len(B) > 20:
        raise TooLarge("window set B has more than 20 elements")
    total = Fraction(0)
    for bits in range(1 << len(B)):
        X = {B[i] for i in range(len(B)) if bits >> i & 1}
        v = to_fraction(phi(A | X))
        total += -v if len(X) & 1 else v
    return total


def window_batch(phi: SetFunction) -> Certificate:
    """All windows φ̄(A,B) ≤ 0 over the finite universe, B nonempty and disjoint from A."""
    g = phi.ground
    check_size(g.n, 14, what="window batch")
    m = mobius_upper(phi).table
    for A in range(g.size):
        rest = g.full ^ A
        B = rest
        while B:
            # φ̄(A,B) sums Mφ(Y) over A ⊆ Y ⊆ A ∪ (rest∖B)
            free = rest ^ B
            s = Fraction(0)
            Y = 0
            while True:
                s += m[A | Y]
                if Y == free:
                    break
                Y = (Y - free) & free
            if s > 0:
                direct = window_check(phi, A, B)
                if direct != s:
                    raise InternalError("window value disagrees with its Möbius expansion")
                return violated("windows", {"A": g.labels(A), "B": g.labels(B), "value": _q(s)})
            B = (B - 1) & rest
    return holds("windows")


# -- strong submodularity -------------------------------------------------------------

def _alternating_work(n: int) -> int:
    total = 0
    for s in range(n + 1):
        sups = (1 << (n - s)) - 1
        total += math.comb(n, s) * sum(math.comb(sups, k) << k for k in range(1, n + 1))
    return total


def certify_strong_submodular(phi: SetFunction, conditions: Sequence[str] = ("i", "iv", "v", "ii")) -> Certificate:
    """Evaluate the equivalent conditions (i), (iv), (v), (ii) and require them to agree."""
    g = phi.ground
    n = g.n
    psi = phi - phi.value(0) if phi.value(0) != 0 else phi
    m = mobius_upper(psi).table
    verdicts, witnesses, skipped = {}, {}, {}

    if "iv" in conditions:
        bad = next((X for X in range(g.size) if X != g.full and m[X] > 0), None)
        verdicts["iv"] = bad is None
        if bad is not None:
            witnesses["iv"] = {"condition": "iv", "X": g.labels(bad), "mobius": _q(m[bad])}

    if "i" in conditions:
        work = _alternating_work(n)
        budget = ALTERNATING_BUDGET[kernels.backend()]
        if work > budget:
            skipped["i"] = f"alternating family search needs {work} steps (budget {budget})"
        else:
            (t,), d = _scaled(psi)
            res = kernels.alternating_violation(t, n, n)
            verdicts["i"] = res is None
            if res is not None:
                A0, fam, val = res
                witnesses["i"] = {"condition": "i", "A0": g.labels(A0), "family": [g.labels(F) for F in fam],
                                  "value": _q(Fraction(val, d) if d else val)}

    if "v" in conditions:
        if n > UNION_MAX_N:
            skipped["v"] = f"union matrix side 2^{n} too large"
        else:
            lw = lindstrom_wilf(psi)
            allowed = 1 if psi.value(g.full) > 0 else 0
            verdicts["v"] = lw.inertia.positive <= allowed
            if not verdicts["v"]:
                x = lw.inertia.positive_direction
                witnesses["v"] = {"condition": "v", "positive_eigenvalues": lw.inertia.positive,
                                  "allowed": allowed, "direction": [_q(v) for v in x]}
            skipped["v_literal"] = ("at most one positive eigenvalue: "
                                    + ("yes" if lw.inertia.positive <= 1 else "no"))

    if "ii" in conditions:
        alpha = induce_representation(psi)
        neg = next((Y for Y in range(1, g.size) if alpha.value(Y) < 0), None)
        verdicts["ii"] = neg is None
        if neg is not None:
            witnesses["ii"] = {"condition": "ii", "Y": g.labels(neg), "alpha": _q(alpha.value(neg))}

    values = set(verdicts.values())
    if len(values) > 1:
        raise InternalError(f"strong submodularity conditions disagree: {verdicts}", witness=witnesses)
    details = {"conditions": {k: ("holds" if v else "violated") for k, v in verdicts.items()}}
    if skipped:
        details["notes"] = skipped
    if not values or values == {True}:
        return holds("strongly_submodular", details=details)
    order = ("iv", "i", "v", "ii")
    first = next(witnesses[k] for k in order if k in witnesses)
    details["witnesses"] = witnesses
    return violated("strongly_submodular", first, details=details)


def diverging_by_distance(phi: SetFunction, psi: SetFunction) -> bool:
    """d_ψ ≤ d_φ entrywise."""
    dp, dq = _distance_entries(phi), _distance_entries(psi)
    return all(b <= a for ra, rb in zip(dp, dq) for a, b in zip(ra, rb))
