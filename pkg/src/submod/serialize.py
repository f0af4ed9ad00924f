"""JSON specs for setfunctions and auxiliary objects.

A spec is a dict::

    {"ground": ["a", "b"],
     "function": {"kind": "cut", "edges": [["a", "b", "1/1"]]},
     "flags": ["submodular"]}

Rationals are "p/q" strings (ints are accepted on input). Subsets are lists of
labels; table keys are comma-joined labels in ground order ("" is the empty set). Any function descriptor may
carry "shift": c, which adds the constant c to every value.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .choquet import StepFunction
from .core.generators import (gen_concave_of_measure, gen_coverage, gen_cut, gen_entropy, gen_hitting,
                              gen_hom_count, gen_ideal_indicator, gen_logdet, gen_matroid_rank,
                              gen_modular, make_table_function)
from .core.ground import GroundSet
from .core.relation import Relation, graph_incidence
from .core.setfunction import FLAG_NAMES, SetFunction
from .errors import BadArgument, SubmodError
from .rational import fmt, to_fraction

KINDS = ("table", "cut", "coverage", "graph_coverage", "matroid_rank", "concave_of_measure", "entropy",
         "logdet", "hitting", "ideal_indicator", "hom_count", "modular")


class SpecError(SubmodError):
    """Malformed or unsupported spec."""


def _q(x) -> str:
    try:
        return fmt(to_fraction(x))
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise SpecError(f"not an exact rational: {x!r}") from e


def _need(d: Mapping, key: str):
    if key not in d:
        raise SpecError(f"missing field {key!r}")
    return d[key]


def _ground(spec: Mapping, fallback=None) -> GroundSet | None:
    atoms = spec.get("ground", fallback)
    if atoms is None:
        return None
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        raise SpecError("ground must be a list of string labels")
    return GroundSet(atoms)


def table_key(g: GroundSet, mask: int) -> str:
    return ",".join(g.labels(mask))


def _parse_key(g: GroundSet, key: str) -> int:
    key = key.strip()
    if not key:
        return 0
    return g.mask([k.strip() for k in key.split(",")])


def parse_relation(d: Mapping) -> Relation:
    if "edges" in d:  # graph incidence: edges are the left atoms
        return graph_incidence({k: tuple(v) for k, v in d["edges"].items()})
    return Relation(_need(d, "left"), _need(d, "right"), [tuple(p) for p in _need(d, "pairs")])


def relation_to_json(rel: Relation) -> dict:
    return {"left": list(rel.left.atoms), "right": list(rel.right.atoms),
            "pairs": [list(p) for p in rel.sorted_pairs()]}


def parse_function(spec: Mapping) -> SetFunction:
    """Build the SetFunction described by a spec (or by a bare function descriptor with a ground)."""
    if not isinstance(spec, Mapping):
        raise SpecError("spec must be a JSON object")
    fd = spec.get("function", spec)
    if not isinstance(fd, Mapping):
        raise SpecError("function descriptor must be an object")
    kind = fd.get("kind")
    if kind not in KINDS:
        raise SpecError(f"unknown function kind {kind!r}; expected one of {', '.join(KINDS)}")
    g = _ground(spec) or _ground(fd)
    try:
        phi = _build(kind, fd, g)
    except SubmodError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise SpecError(f"bad parameters for kind {kind!r}: {e}") from e
    if "shift" in fd:
        phi = SetFunction(phi.ground, table=[v + to_fraction(fd["shift"]) for v in phi.table],
                          tolerance=phi.tolerance, name=phi.name)
    flags = spec.get("flags", fd.get("flags", []))
    if flags:
        unknown = set(flags) - set(FLAG_NAMES)
        if unknown:
            raise SpecError(f"unknown flags {sorted(unknown)}")
        phi = phi.with_flags(set(flags) | set(phi.flags))
    return phi


def _build(kind: str, fd: Mapping, g: GroundSet | None) -> SetFunction:
    if kind == "table":
        vals = _need(fd, "values")
        if g is None:
            raise SpecError("table kind needs a ground")
        if isinstance(vals, list):
            if len(vals) != g.size:
                raise SpecError(f"table has {len(vals)} values, expected {g.size}")
            return SetFunction(g, table=[to_fraction(v) for v in vals], name="table")
        return make_table_function(g, {_parse_key(g, k): v for k, v in vals.items()})
    if kind == "cut":
        edges = [tuple(e) for e in _need(fd, "edges")]
        return gen_cut(g or sorted({x for e in edges for x in e[:2]}), edges)
    if kind in ("coverage", "graph_coverage"):
        rel = parse_relation(fd["relation"] if kind == "coverage" else {"edges": _need(fd, "edges")})
        if g is not None and g != rel.left:
            raise SpecError("relation left side must equal the ground")
        return gen_coverage(rel, fd.get("weights"))
    if kind == "matroid_rank":
        mk = fd.get("matroid", "uniform")
        edges = {k: tuple(v) for k, v in fd["edges"].items()} if "edges" in fd else None
        return gen_matroid_rank(g, mk, edges=edges, columns=fd.get("columns"), k=fd.get("k"))
    if kind == "concave_of_measure":
        bps = [tuple(b) for b in _need(fd, "breakpoints")]
        return gen_concave_of_measure(g, _need(fd, "weights"), bps)
    if kind == "entropy":
        joint = {tuple(o): p for o, p in _need(fd, "joint")}
        return gen_entropy(g, joint)
    if kind == "logdet":
        return gen_logdet(g, _need(fd, "matrix"))
    if kind == "hitting":
        return gen_hitting(g, _need(fd, "kernel"), _need(fd, "start"))
    if kind == "ideal_indicator":
        return gen_ideal_indicator(g, [tuple(s) for s in _need(fd, "family")])
    if kind == "hom_count":
        F, G = _need(fd, "F"), _need(fd, "G")
        return gen_hom_count(_need(F, "vertices"), {k: tuple(v) for k, v in _need(F, "edges").items()},
                             _need(G, "vertices"), [tuple(e) for e in _need(G, "edges")], ground=g)
    if kind == "modular":
        return gen_modular(g, _need(fd, "atoms"), fd.get("offset", 0))
    raise SpecError(f"unknown function kind {kind!r}")  # pragma: no cover


def function_to_spec(phi: SetFunction) -> dict:
    """Canonical table spec of an exact setfunction."""
    if not phi.exact:
        raise SpecError("only exact setfunctions serialize to table specs")
    g = phi.ground
    spec: dict[str, Any] = {"ground": list(g.atoms),
                            "function": {"kind": "table",
                                         "values": {table_key(g, m): fmt(v) for m, v in enumerate(phi.table)}}}
    if phi.flags:
        spec["flags"] = sorted(phi.flags)
    return spec


def canonical_spec(spec: Mapping) -> dict:
    """Parse and re-serialize as a table spec; idempotent."""
    return function_to_spec(parse_function(spec))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"malformed JSON: {e}") from e


def load_spec(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as e:
        raise SpecError(f"cannot read spec {path!r}: {e}") from e


# -- auxiliary objects ----------------------------------------------------------------

def parse_step(g: GroundSet, w) -> StepFunction:
    if isinstance(w, Mapping):
        return StepFunction(g, {k: to_fraction(v) for k, v in w.items()})
    if isinstance(w, list):
        return StepFunction(g, [to_fraction(v) for v in w])
    raise SpecError("weights must be a list or an object keyed by atom")


def parse_subset(g: GroundSet, X) -> int:
    if X is None:
        return g.full
    if not isinstance(X, list):
        raise SpecError("subsets are lists of atom labels")
    try:
        return g.mask(X)
    except (KeyError, ValueError, SubmodError) as e:
        raise SpecError(f"unknown atom in subset {X}") from e


def parse_distribution(g: GroundSet, lam) -> list[Fraction]:
    if isinstance(lam, Mapping):
        return [to_fraction(lam[a]) for a in g.atoms]
    return [to_fraction(v) for v in lam]


def charge_from_json(g: GroundSet, d) -> "Charge":
    from .polyhedra import Charge
    atoms = d.get("atoms", d) if isinstance(d, Mapping) else d
    return Charge(g, {a: to_fraction(v) for a, v in atoms.items()} if isinstance(atoms, Mapping) else atoms)
