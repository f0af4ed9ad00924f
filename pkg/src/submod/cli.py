"""Command-line front end: submod certify | compute | selftest.

Exit codes: 0 claim holds or value computed, 1 claim violated (witness in the
report), 2 usage or input error, 3 internal consistency failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Any

from . import __version__
from .core.ground import is_certified_limit
from .core.properties import check_property
from .core.setfunction import SetFunction
from .errors import InternalError, SubmodError
from .rational import fmt
from .serialize import (SpecError, charge_from_json, dumps, load_spec, loads, parse_distribution,
                        parse_function, parse_relation, parse_step, parse_subset, table_key)

PROPERTIES = ("submodular", "supermodular", "modular", "increasing", "decreasing", "normalized",
              "subadditive", "matroid_rank", "strongly_submodular", "convex")
COMPUTATIONS = ("choquet", "var", "decompose", "truncate", "majorize", "distance", "mobius", "minimize",
                "intersect", "weighted_intersect", "separate", "greedy", "couple")

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _table(phi: SetFunction) -> dict:
    g = phi.ground
    return {table_key(g, m): fmt(v) for m, v in enumerate(phi.table)}


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, ensure_ascii=False).encode()).hexdigest()[:16]


class _Aux:
    """Auxiliary inputs: command-line JSON overrides the spec's own fields."""

    def __init__(self, spec: dict, args):
        self.spec, self.args, self.used = spec, args, {}

    def get(self, name: str, required: bool = True):
        raw = getattr(self.args, name, None)
        if raw is not None:
            val = loads(raw) if name != "spec2" else load_spec(raw)
        elif name == "spec2":
            val = self.spec.get("second")
        else:
            val = self.spec.get(name)
        if val is None and required:
            raise SpecError(f"missing auxiliary input {name!r} (pass --{name.replace('_', '-')} or put it in the spec)")
        if val is not None:
            self.used[name] = val
        return val


# -- certify --------------------------------------------------------------------------

def cmd_certify(spec: dict, properties, seed: int = 0):
    phi = parse_function(spec)
    verdicts, witnesses, details = {}, {}, {}
    for p in properties:
        if p == "convex":
            from .choquet import certify_convexity
            c = certify_convexity(phi, trials=100, seed=seed)
        else:
            c = check_property(phi, p)
        verdicts[p] = c.status
        if c.witness is not None:
            witnesses[p] = c.witness
        if c.details:
            details[p] = c.details
    body = {"verdicts": verdicts, "witnesses": witnesses}
    if details:
        body["details"] = details
    ok = all(v == "holds" for v in verdicts.values())
    return phi, body, EXIT_OK if ok else EXIT_VIOLATED


# -- compute --------------------------------------------------------------------------

def cmd_compute(spec: dict, what: str, aux: _Aux):
    from . import calculus, choquet, geometry, polyhedra, sfm
    phi = parse_function(spec)
    g = phi.ground
    out: dict[str, Any]
    if what == "choquet":
        w = parse_step(g, aux.get("weights"))
        val = choquet.choquet(phi, w)
        out = {"value": fmt(val), "layer_cake": choquet.layer_cake(w).to_json()}
    elif what == "var":
        v = calculus.variation(phi)
        out = {"value": fmt(v.total_variation), "mu": _table(v.mu), "nu": _table(v.nu)}
    elif what == "decompose":
        a, b = calculus.decompose_submodular(phi)
        out = {"increasing_part": _table(a), "decreasing_part": _table(b)}
    elif what == "truncate":
        r = sfm.positive_part_function(phi)
        out = {"table": _table(r)}
        U = aux.get("set", required=False)
        if U is not None:
            pr = sfm.positive_part(phi, parse_subset(g, U))
            out.update(pr.to_json())
    elif what == "majorize":
        pr = sfm.majorizer(phi, parse_subset(g, aux.get("set", required=False)))
        out = {**pr.to_json(), "charge": sfm.majorizer_charge(phi).to_json()}
    elif what == "distance":
        out = {"matrix": geometry.bjorner_distance(phi).to_json()}
    elif what == "mobius":
        out = {"upper": _table(geometry.mobius_upper(phi)), "lower": _table(geometry.mobius_lower(phi))}
    elif what == "minimize":
        U = aux.get("set", required=False)
        out = sfm.minimize(phi, None if U is None else parse_subset(g, U)).to_json()
    elif what == "intersect":
        psi = parse_function(aux.get("spec2"))
        X = parse_subset(g, aux.get("set", required=False))
        r = polyhedra.intersection_value(phi, psi, X)
        out = {"value": fmt(r.value), "witness": r.charge.to_json(), "split": g.labels(r.split),
               "basic_phi": r.basic_phi.to_json(), "basic_psi": r.basic_psi.to_json()}
    elif what == "weighted_intersect":
        psi = parse_function(aux.get("spec2"))
        r = polyhedra.weighted_intersection(phi, psi, parse_step(g, aux.get("weights")))
        out = {"value": fmt(r.value), "witness": r.charge.to_json(), "h": r.h.to_json(),
               "split": g.labels(r.minimizer), "split_value": fmt(r.split_value)}
    elif what == "separate":
        xi = parse_function(aux.get("spec2"))
        mu = polyhedra.separate(xi, phi)
        out = {"modular": mu.to_json()}
    elif what == "greedy":
        chain = aux.get("chain", required=False)
        alpha = polyhedra.greedy_chain_charge(phi, chain)
        out = {"charge": alpha.to_json()}
    elif what == "couple":
        rel = parse_relation(aux.get("relation"))
        marg = aux.get("marginals")
        res = polyhedra.coupling_exists(rel, parse_distribution(rel.left, marg["left"]),
                                        parse_distribution(rel.right, marg["right"]))
        out = res.to_json()
        if isinstance(res, polyhedra.HallViolation):
            out["hall_violation"]["X"] = rel.left.labels(res.X)
    else:  # pragma: no cover - argparse restricts choices
        raise SpecError(f"unknown computation {what!r}")
    return phi, {"values": out}, EXIT_OK


# -- reports --------------------------------------------------------------------------

def _render_text(report: dict) -> str:
    lines = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(obj, list) and all(not isinstance(x, (dict, list)) for x in obj):
            lines.append(f"{prefix}: [{', '.join(map(str, obj))}]")
        elif isinstance(obj, list):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix}: {obj}")

    walk("", report)
    return "\n".join(lines) + "\n"


def _emit(report: dict, args) -> None:
    text = _render_text(report) if args.format == "text" else dumps(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="submod", description="Exact toolkit for finite setfunctions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    fmt_group = common.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", dest="format", action="store_const", const="json")
    fmt_group.add_argument("--text", dest="format", action="store_const", const="text")
    common.set_defaults(format="json")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--stable", action="store_true", help="omit wall time so reports are byte-stable")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", parents=[common], help="certify properties of a setfunction")
    c.add_argument("--spec", required=True)
    c.add_argument("--property", "-p", action="append", choices=PROPERTIES, dest="properties")

    k = sub.add_parser("compute", parents=[common], help="compute a derived object")
    k.add_argument("what", choices=COMPUTATIONS)
    k.add_argument("--spec", required=True)
    k.add_argument("--spec2", help="second setfunction spec (intersect, weighted_intersect, separate)")
    k.add_argument("--weights", help="JSON list or object of atom weights")
    k.add_argument("--set", help="JSON list of atom labels")
    k.add_argument("--chain", help="JSON list of subsets, or an atom order")
    k.add_argument("--relation", help="JSON relation object")
    k.add_argument("--marginals", help='JSON {"left": ..., "right": ...}')

    s = sub.add_parser("selftest", parents=[common], help="run the seeded invariant battery")
    s.add_argument("--max-n", type=int, default=4, help="largest ground size drawn")
    s.add_argument("--inject-fault", action="store_true", help="corrupt results to exercise failure paths")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    t0 = time.perf_counter()
    report: dict[str, Any] = {"command": args.command}
    try:
        if args.command == "selftest":
            from .selftest import run_selftest
            res = run_selftest(args.seed, args.max_n, args.inject_fault)
            report.update({"inputs_digest": _digest({"seed": args.seed, "max_n": args.max_n,
                                                     "inject_fault": args.inject_fault}),
                           "certified": is_certified_limit(), "seed": args.seed, **res})
            code = EXIT_OK if res["passed"] else EXIT_VIOLATED
        else:
            spec = load_spec(args.spec)
            if args.command == "certify":
                props = args.properties or ["submodular"]
                report["properties"] = props
                phi, body, code = cmd_certify(spec, props, args.seed)
                inputs = {"spec": spec}
            else:
                aux = _Aux(spec, args)
                report["what"] = args.what
                phi, body, code = cmd_compute(spec, args.what, aux)
                inputs = {"spec": spec, **aux.used}
            report.update({"inputs_digest": _digest(inputs), "ground": list(phi.ground.atoms),
                           "certified": is_certified_limit(), "seed": args.seed, **body})
    except InternalError as e:
        report.update({"error": type(e).__name__, "message": str(e), "witness": e.witness})
        code = EXIT_INTERNAL
    except (SubmodError, ValueError, TypeError, KeyError) as e:
        report.update({"error": type(e).__name__, "message": str(e)})
        if isinstance(e, SubmodError) and e.witness is not None:
            report["witness"] = e.witness
        code = EXIT_USAGE
    if not report.get("certified", True):
        report["certified"] = "uncertified"
    if not args.stable:
        report["wall_time"] = round(time.perf_counter() - t0, 6)
    report["exit_code"] = code
    _emit(report, args)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
