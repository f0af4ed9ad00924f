"""Structural operations on setfunctions.

Monotonizations, join and meet, variation, weighting, restriction and its
relatives, diverging pairs, and splicing. All results are new tabulated
SetFunctions; inputs are never modified.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernels
from .core.ground import GroundSet, check_size
from .core.properties import (check_decreasing, check_increasing, check_subadditive,
                              check_submodular, require_increasing, require_normalized,
                              require_submodular)
from .core.setfunction import SetFunction, same_ground
from .errors import (BadArgument, InternalError, NegativeWeight, NotDiverging, NotIncreasing,
                     NotSurjective, PreconditionFailed, RankMismatch)
from .rational import common_denominator, fmt, to_fraction


# -- scaling helpers -----------------------------------------------------------------

def _scaled(*fns: SetFunction):
    """Integer tables of several exact functions over one common denominator."""
    if not all(f.exact for f in fns):
        return [list(map(float, f.table)) for f in fns], None
    d = 1
    for f in fns:
        _, df = f.int_table()
        d = d * df // _gcd(d, df)
    out = []
    for f in fns:
        t, df = f.int_table()
        k = d // df
        out.append([x * k for x in t] if k != 1 else t)
    return out, d


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _unscale(t, d):
    if d is None:
        return t
    return [Fraction(x, d) for x in t]


def _tol(*fns):
    tols = [f.tolerance for f in fns if f.tolerance is not None]
    return sum(tols) if tols else None


# -- monotonizations, join, meet ---------------------------------------------------

def monotonize(phi: SetFunction, which: str) -> SetFunction:
    """li: min over subsets, ui: min over supersets, ls: max over subsets, us: max over supersets."""
    if which not in ("li", "ui", "ls", "us"):
        raise BadArgument(f"unknown monotonization {which!r}")
    check_size(phi.n, what="monotonize")
    (t,), d = _scaled(phi)
    maximize = which[1] == "s"
    if which[0] == "l":
        r = kernels.subset_opt(t, phi.n, maximize)
    else:
        r = kernels.superset_opt(t, phi.n, maximize)
    flags = {"increasing"} if which in ("ls", "ui") else {"decreasing"}
    return SetFunction(phi.ground, table=_unscale(r, d), tolerance=phi.tolerance, flags=flags,
                       name=f"{phi.name or 'phi'}^{which}")


def join_meet(phi: SetFunction, psi: SetFunction, which: str) -> SetFunction:
    """lor: max over Y⊆X of φ(Y)+ψ(X∖Y); land: the same with min."""
    if which not in ("lor", "land"):
        raise BadArgument(f"unknown operation {which!r}")
    same_ground(phi, psi)
    check_size(phi.n, what="join/meet")
    (a, b), d = _scaled(phi, psi)
    c, _ = kernels.convolve(a, b, phi.n, which == "lor")
    return SetFunction(phi.ground, table=_unscale(c, d), tolerance=_tol(phi, psi), name=which)


def meet_with_argmin(phi: SetFunction, psi: SetFunction) -> tuple[SetFunction, list[int]]:
    """(φ∧ψ, arg) where arg[X] is the smallest Y⊆X attaining the minimum."""
    same_ground(phi, psi)
    check_size(phi.n, what="meet")
    (a, b), d = _scaled(phi, psi)
    c, arg = kernels.convolve(a, b, phi.n, False)
    return SetFunction(phi.ground, table=_unscale(c, d), tolerance=_tol(phi, psi), name="land"), arg


def lor(phi, psi):
    return join_meet(phi, psi, "lor")


def land(phi, psi):
    return join_meet(phi, psi, "land")


# -- variation ---------------------------------------------------------------------

@dataclass(frozen=True)
class VariationDecomposition:
    total_variation: object
    mu: SetFunction
    nu: SetFunction
    shift: object = 0
    closed_form_checked: bool = False


def variation(phi: SetFunction) -> VariationDecomposition:
    """Total variation over maximal chains and the increasing parts μ, ν with φ − φ(∅) = μ − ν."""
    check_size(phi.n, 16, what="variation")
    shift = phi.value(0)
    f = phi.normalized()
    (t,), d = _scaled(f)
    tot = kernels.chain_dp(t, phi.n, False)
    up = kernels.chain_dp(t, phi.n, True)
    var = _unscale([tot[-1]], d)[0]
    mu = SetFunction(phi.ground, table=_unscale(up, d), tolerance=phi.tolerance,
                     flags={"increasing", "normalized"}, name="mu")
    ft = f.table
    nu = SetFunction(phi.ground, table=[m - v for m, v in zip(mu.table, ft)], tolerance=phi.tolerance,
                     flags={"increasing", "normalized"}, name="nu")
    if phi.exact and mu.value(phi.full) + nu.value(phi.full) != var:
        raise InternalError("μ(J)+ν(J) differs from the total variation")
    checked = False
    if phi.exact and check_submodular(phi, "local"):
        closed = 2 * max(phi.table) - phi.value(0) - phi.value(phi.full)
        if closed != var:
            raise InternalError(f"submodular closed form {closed} differs from DP value {var}")
        checked = True
    return VariationDecomposition(var, mu, nu, shift, checked)


def decompose_submodular(phi: SetFunction) -> tuple[SetFunction, SetFunction]:
    """(φ^ls, φ − φ^ls): increasing and decreasing subadditive parts of a submodular φ."""
    require_submodular(phi)
    require_normalized(phi)
    inc = monotonize(phi, "ls")
    dec = phi - inc
    for fn, chk, what in ((inc, check_increasing, "increasing"), (dec, check_decreasing, "decreasing")):
        c = chk(fn)
        if not c:
            raise InternalError(f"decomposition part is not {what}: {c.witness}")
    for fn in (inc, dec):
        c = check_subadditive(fn)
        if not c:
            raise InternalError(f"decomposition part is not subadditive: {c.witness}")
    return (inc.with_flags({"increasing", "normalized"}), dec.with_flags({"decreasing", "normalized"}))


# -- weighting ---------------------------------------------------------------------

def weighting(w, phi: SetFunction) -> SetFunction:
    """(w·φ)(X) = Choquet integral of w·1_X with respect to φ."""
    from .choquet import StepFunction, choquet
    if not isinstance(w, StepFunction):
        w = StepFunction(phi.ground, w)
    if w.ground != phi.ground:
        same_ground(phi, SetFunction.constant(w.ground))
    for a, v in zip(w.ground.atoms, w.values):
        if v < 0:
            raise NegativeWeight(f"weight of {a} is {v}", witness={"atom": a, "weight": fmt(v)})
    require_normalized(phi)
    check_size(phi.n, what="weighting")
    n = phi.n
    table = []
    for X in range(phi.ground.size):
        f = StepFunction(phi.ground, [w.values[i] if X >> i & 1 else 0 for i in range(n)])
        table.append(choquet(phi, f))
    return SetFunction(phi.ground, table=table, tolerance=phi.tolerance, name="weighting")


# -- structure operations ------------------------------------------------------------

def _subground(g: GroundSet, A: int) -> tuple[GroundSet, list[int]]:
    idx = [i for i in range(g.n) if A >> i & 1]
    return GroundSet(g.atoms[i] for i in idx), idx


def _expand(mask: int, idx: Sequence[int]) -> int:
    m = 0
    for k, i in enumerate(idx):
        if mask >> k & 1:
            m |= 1 << i
    return m


def _as_mask(g: GroundSet, A) -> int:
    try:
        return g.mask(A)
    except BadArgument as exc:
        raise BadArgument(f"A is not a subset of the ground set: {exc}") from None


def restrict(phi: SetFunction, A) -> SetFunction:
    """φ_A(X) = φ(X) for X ⊆ A, on ground A."""
    A = _as_mask(phi.ground, A)
    g, idx = _subground(phi.ground, A)
    return SetFunction(g, table=[phi.value(_expand(m, idx)) for m in range(g.size)],
                       tolerance=phi.tolerance, name="restriction")


def project(phi: SetFunction, A) -> SetFunction:
    """φ^A(X) = φ(A^c ∪ X) − φ(A^c), on ground A."""
    A = _as_mask(phi.ground, A)
    g, idx = _subground(phi.ground, A)
    Ac = phi.ground.complement(A)
    base = phi.value(Ac)
    return SetFunction(g, table=[phi.value(Ac | _expand(m, idx)) - base for m in range(g.size)],
                       tolerance=phi.tolerance, name="projection")


def complement(phi: SetFunction) -> SetFunction:
    """φ^c(X) = φ(X^c)."""
    full = phi.full
    t = phi.table
    return SetFunction(phi.ground, table=[t[full ^ m] for m in range(len(t))], tolerance=phi.tolerance,
                       name="complement")


def truncate(phi: SetFunction, c) -> SetFunction:
    """min(c, φ); φ must be increasing."""
    _require_increasing_pre(phi, "truncate")
    c = phi._coerce(c)
    return phi.map(lambda m, v: v if v <= c else c, name="truncation")


def quotient(phi: SetFunction, mapping: Mapping[str, str], new_atoms: Sequence[str] | None = None) -> SetFunction:
    """φ∘Π⁻¹ for a surjection Π: atoms → new atoms."""
    g = phi.ground
    missing = [a for a in g.atoms if a not in mapping]
    if missing:
        raise BadArgument(f"quotient map undefined on {missing}")
    if new_atoms is None:
        new_atoms = []
        for a in g.atoms:
            if mapping[a] not in new_atoms:
                new_atoms.append(mapping[a])
    ng = GroundSet(new_atoms)
    fibers = [0] * ng.n
    for a in g.atoms:
        if mapping[a] not in ng:
            raise BadArgument(f"{a} maps outside the new ground set")
        fibers[ng.index(mapping[a])] |= 1 << g.index(a)
    empty = [ng.atoms[i] for i, f in enumerate(fibers) if f == 0]
    if empty:
        raise NotSurjective(f"quotient map misses {empty}", witness={"missed": empty})
    return SetFunction(ng, table=[phi.value(_expand_fibers(m, fibers)) for m in range(ng.size)],
                       tolerance=phi.tolerance, name="quotient")


def _expand_fibers(mask: int, fibers: Sequence[int]) -> int:
    m = 0
    for i, f in enumerate(fibers):
        if mask >> i & 1:
            m |= f
    return m


def pullback(phi: SetFunction, images: Mapping[str, Iterable[str]], base: Iterable[str] = ()) -> SetFunction:
    """φ∘Γ for the union-preserving map Γ(X) = base ∪ ⋃_{x∈X} images[x]; φ must be increasing."""
    _require_increasing_pre(phi, "pullback")
    ng = GroundSet(list(images))
    fibers = [_as_mask(phi.ground, images[a]) for a in ng.atoms]
    b = _as_mask(phi.ground, base)
    return SetFunction(ng, table=[phi.value(b | _expand_fibers(m, fibers)) for m in range(ng.size)],
                       tolerance=phi.tolerance, name="pullback")


def add_representative(phi: SetFunction, A, label: str = "a") -> SetFunction:
    """Extension to J ∪ {label}: the new atom acts as the whole set A."""
    _require_increasing_pre(phi, "add_representative")
    A = _as_mask(phi.ground, A)
    if label in phi.ground:
        raise BadArgument(f"label {label!r} already in the ground set")
    n = phi.n
    ng = GroundSet(phi.ground.atoms + (label,))
    new = 1 << n
    table = [phi.value(m) if not m & new else phi.value((m ^ new) | A) for m in range(ng.size)]
    return SetFunction(ng, table=table, tolerance=phi.tolerance, name="representative")


def _require_increasing_pre(phi, op):
    c = check_increasing(phi)
    if not c:
        raise PreconditionFailed(f"{op} requires an increasing setfunction: {c.witness}", witness=c.witness)


def structure(phi: SetFunction, op: str, *args, **kwargs) -> SetFunction:
    """Dispatch a structure operation by name."""
    ops = {
        "restrict": restrict, "project": project, "complement": complement,
        "truncate": truncate, "quotient": quotient, "pullback": pullback,
        "add_representative": add_representative,
    }
    if op not in ops:
        raise BadArgument(f"unknown structure operation {op!r}")
    return ops[op](phi, *args, **kwargs)


# -- diverging pairs -----------------------------------------------------------------

@dataclass(frozen=True)
class DivergingPair:
    phi: SetFunction
    psi: SetFunction


def check_diverging(phi: SetFunction, psi: SetFunction) -> DivergingPair:
    """Verify φ, ψ submodular and φ − ψ increasing."""
    same_ground(phi, psi)
    require_submodular(phi, "phi")
    require_submodular(psi, "psi")
    c = check_increasing(phi - psi)
    if not c:
        raise NotDiverging(f"φ−ψ decreases from {c.witness['X']} to {c.witness['Y']}", witness=c.witness)
    return DivergingPair(phi, psi)


def min_of_pair(pair: DivergingPair) -> SetFunction:
    a, b = pair.phi.table, pair.psi.table
    out = SetFunction(pair.phi.ground, table=[min(x, y) for x, y in zip(a, b)],
                      tolerance=_tol(pair.phi, pair.psi), flags={"submodular"}, name="min")
    c = check_submodular(out)
    if not c:
        raise InternalError(f"min of a diverging pair is not submodular: {c.witness}")
    return out


def lift_diverging_pair(pair: DivergingPair, label: str = "a") -> SetFunction:
    """ψ on J ∪ {label} with ψ_J = φ1 and ψ^J = φ2, increasing and submodular."""
    phi1, phi2 = pair.phi, pair.psi
    for f, nm in ((phi1, "phi1"), (phi2, "phi2")):
        c = check_increasing(f)
        if not c:
            raise NotDiverging(f"{nm} is not increasing", witness=c.witness)
        if f.value(0) != 0:
            raise NotDiverging(f"{nm}(∅) must be 0", witness={"function": nm})
    c = check_increasing(phi1 - phi2)
    if not c:
        raise NotDiverging("φ1−φ2 is not increasing", witness=c.witness)
    if label in phi1.ground:
        raise BadArgument(f"label {label!r} already in the ground set")
    n = phi1.n
    J = phi1.full
    shift = phi1.value(J) - phi2.value(J)
    ng = GroundSet(phi1.ground.atoms + (label,))
    new = 1 << n
    table = [phi1.value(m) if not m & new else phi2.value(m ^ new) + shift for m in range(ng.size)]
    psi = SetFunction(ng, table=table, tolerance=_tol(phi1, phi2), flags={"increasing", "submodular"},
                      name="lift")
    for chk in (check_increasing, check_submodular):
        cc = chk(psi)
        if not cc:
            raise InternalError(f"lift fails {cc.claim}: {cc.witness}")
    if not restrict(psi, J).equals(phi1) or not project(psi, J).equals(phi2):
        raise InternalError("lift does not restrict/project to the input pair")
    return psi


# -- splicing ------------------------------------------------------------------------

def splice_labels(left: GroundSet, right: GroundSet) -> list[str]:
    """Right-hand labels after renaming collisions with a "#k" suffix (k = 2, 3, ...)."""
    used = set(left.atoms)
    out = []
    for a in right.atoms:
        lab, k = a, 2
        while lab in used or lab in right.atoms and lab != a:
            lab = f"{a}#{k}"
            k += 1
        used.add(lab)
        out.append(lab)
    return out


def splice(phi: SetFunction, psi: SetFunction, a: str, b: str) -> SetFunction:
    """σ(X∪Y) = min(φ(X)+ψ(Y), φ(X+a)+ψ(Y+b)−φ({a})) on the disjoint union of the grounds."""
    for f, nm in ((phi, "phi"), (psi, "psi")):
        require_submodular(f, nm)
        require_increasing(f, nm)
        require_normalized(f, nm)
    ia = 1 << phi.ground.index(a)
    ib = 1 << psi.ground.index(b)
    ra, rb = phi.value(ia), psi.value(ib)
    if ra != rb:
        raise RankMismatch(f"φ({{{a}}}) = {ra} but ψ({{{b}}}) = {rb}", witness={"phi_a": fmt(ra), "psi_b": fmt(rb)})
    n1 = phi.n
    ng = GroundSet(phi.ground.atoms + tuple(splice_labels(phi.ground, psi.ground)))
    check_size(ng.n, what="splice")
    lo = phi.full
    table = []
    for m in range(ng.size):
        X, Y = m & lo, m >> n1
        table.append(min(phi.value(X) + psi.value(Y), phi.value(X | ia) + psi.value(Y | ib) - ra))
    sigma = SetFunction(ng, table=table, tolerance=_tol(phi, psi),
                        flags={"submodular", "increasing", "normalized"}, name="splice")
    c = check_submodular(sigma)
    if not c:
        raise InternalError(f"splice is not submodular: {c.witness}")
    return sigma
