import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from submod.cli import main
from submod.core import GroundSet, SetFunction, gen_matroid_rank
from submod.serialize import (SpecError, canonical_spec, charge_from_json, function_to_spec, loads, parse_distribution,
                              parse_function, parse_relation, parse_step, parse_subset, relation_to_json)

from conftest import K3_EDGES, graphic_table

K3_SPEC = {"ground": ["e1", "e2", "e3"],
           "function": {"kind": "matroid_rank", "matroid": "graphic",
                        "edges": {k: list(v) for k, v in K3_EDGES.items()}}}
TRI_SPEC = {"function": {"kind": "cut", "edges": [["a", "b"], ["b", "c"], ["a", "c"]]}}
K3_COVER_MINUS_1 = {"function": {"kind": "graph_coverage", "edges": {k: list(v) for k, v in K3_EDGES.items()},
                                 "shift": "-1"}}
IND_SPEC = {"ground": ["a", "b"], "function": {"kind": "table", "values": ["0", "1", "1", "1"]}}
CARD_SPEC = {"ground": ["a", "b"], "function": {"kind": "modular", "atoms": ["1", "1"]}}


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestSerialize:
    def test_kinds(self):
        assert list(parse_function(K3_SPEC).table) == graphic_table(K3_EDGES)
        tri = parse_function(TRI_SPEC)
        assert tri(["a"]) == 2
        assert parse_function(IND_SPEC).value(3) == 1
        assert parse_function(CARD_SPEC).value(3) == 2
        shifted = parse_function(K3_COVER_MINUS_1)
        assert shifted.value(0) == -1 and shifted.value(7) == 2
        d = {"ground": ["a", "b"], "function": {"kind": "table", "values": {"": "0", "a": "1/2", "b": "1", "a,b": "1"}}}
        assert parse_function(d).value(1) == Fraction(1, 2)

    def test_more_kinds(self):
        specs = [
            {"ground": ["a", "b"], "function": {"kind": "coverage", "relation": {
                "left": ["a", "b"], "right": ["x", "y"], "pairs": [["a", "x"], ["b", "x"], ["b", "y"]]}}},
            {"ground": ["a", "b", "c"], "function": {"kind": "matroid_rank", "matroid": "uniform", "k": 2}},
            {"ground": ["a", "b"], "function": {"kind": "concave_of_measure", "weights": ["1", "2"],
                                                "breakpoints": [["0", "0"], ["1", "1"], ["3", "3/2"]]}},
            {"ground": ["a", "b"], "function": {"kind": "ideal_indicator", "family": [[], ["a"]]}},
        ]
        for s in specs:
            phi = parse_function(s)
            assert phi.n == len(s["ground"])

    def test_round_trip_idempotent(self):
        for s in (K3_SPEC, TRI_SPEC, IND_SPEC, K3_COVER_MINUS_1):
            c1 = canonical_spec(s)
            assert canonical_spec(c1) == c1
            assert parse_function(c1).equals(parse_function(s))

    def test_errors(self):
        with pytest.raises(SpecError):
            parse_function({"function": {"kind": "nope"}})
        with pytest.raises(SpecError):
            parse_function({"ground": ["a"], "function": {"kind": "table", "values": ["0"]}})
        with pytest.raises(SpecError):
            loads("{not json")
        with pytest.raises(SpecError):
            parse_subset(GroundSet("ab"), ["z"])

    def test_aux(self):
        g = GroundSet("ab")
        assert parse_step(g, {"a": "1/2", "b": 3}).values == (Fraction(1, 2), 3)
        assert parse_subset(g, None) == 3
        assert parse_distribution(g, {"a": "1/3", "b": "2/3"}) == [Fraction(1, 3), Fraction(2, 3)]
        rel = parse_relation({"left": ["a"], "right": ["x"], "pairs": [["a", "x"]]})
        assert parse_relation(relation_to_json(rel)).adj == rel.adj
        assert charge_from_json(g, {"atoms": {"a": "1/1", "b": "-1/2"}}).total() == Fraction(1, 2)
        assert function_to_spec(gen_matroid_rank(g, "uniform", k=1))["function"]["values"]["a,b"] == "1/1"


class TestCLI:
    def test_certify_triangle(self, capsys, tmp_path):
        code, out = run(capsys, "certify", "--spec", write(tmp_path, "t.json", TRI_SPEC), "-p", "submodular")
        rep = json.loads(out)
        assert code == 0 and rep["verdicts"] == {"submodular": "holds"}
        assert list(rep)[:6] == ["command", "properties", "inputs_digest", "ground", "certified", "seed"]
        assert list(rep)[-1] == "exit_code"

    def test_certify_k3_strong(self, capsys, tmp_path):
        code, out = run(capsys, "certify", "--spec", write(tmp_path, "k.json", K3_SPEC),
                        "-p", "strongly_submodular", "-p", "increasing")
        rep = json.loads(out)
        assert code == 1
        assert rep["verdicts"] == {"strongly_submodular": "violated", "increasing": "holds"}
        assert rep["witnesses"]["strongly_submodular"]["mobius"] == "1/1"

    def test_malformed(self, capsys, tmp_path):
        code, out = run(capsys, "certify", "--spec", write(tmp_path, "bad.json", "{oops"))
        assert code == 2 and json.loads(out)["error"] == "SpecError"
        code, _ = run(capsys, "certify", "--spec", str(tmp_path / "missing.json"))
        assert code == 2

    def test_usage_error(self, capsys):
        assert main(["compute", "not-a-thing", "--spec", "x"]) == 2
        capsys.readouterr()

    def test_compute_examples(self, capsys, tmp_path):
        k3 = write(tmp_path, "k3.json", K3_SPEC)
        code, out = run(capsys, "compute", "choquet", "--spec", k3, "--weights", "[2,1,1]")
        assert code == 0 and json.loads(out)["values"]["value"] == "3/1"
        code, out = run(capsys, "compute", "truncate", "--spec", write(tmp_path, "c.json", K3_COVER_MINUS_1))
        table = json.loads(out)["values"]["table"]
        assert [table[k] for k in ("", "e1", "e1,e2", "e1,e2,e3")] == ["0/1", "1/1", "2/1", "2/1"]
        code, out = run(capsys, "compute", "intersect", "--spec", write(tmp_path, "i.json", IND_SPEC),
                        "--spec2", write(tmp_path, "c2.json", CARD_SPEC))
        vals = json.loads(out)["values"]
        assert vals["value"] == "1/1" and "atoms" in vals["witness"]

    def test_compute_all_routes(self, capsys, tmp_path):
        k3 = write(tmp_path, "k3.json", K3_SPEC)
        tri = write(tmp_path, "tri.json", TRI_SPEC)
        u2 = write(tmp_path, "u2.json", {"ground": ["e1", "e2", "e3"],
                                         "function": {"kind": "matroid_rank", "matroid": "uniform", "k": 2}})
        xi = write(tmp_path, "xi.json", {"ground": ["e1", "e2", "e3"],
                                         "function": {"kind": "modular", "atoms": ["0", "0", "0"]}})
        cases = [
            ("var", tri, [], "value", "4/1"),
            ("decompose", tri, [], None, None),
            ("majorize", k3, [], "value", "3/1"),
            ("distance", k3, [], None, None),
            ("mobius", k3, [], None, None),
            ("minimize", tri, [], "value", "0/1"),
            ("weighted_intersect", k3, ["--spec2", u2, "--weights", "[1,1,1]"], "value", "2/1"),
            ("separate", k3, ["--spec2", xi], None, None),
            ("greedy", k3, ["--chain", '["e1","e2","e3"]'], None, None),
        ]
        for what, spec, extra, key, expect in cases:
            code, out = run(capsys, "compute", what, "--spec", spec, *extra)
            assert code == 0, (what, out)
            rep = json.loads(out)
            if key:
                assert rep["values"][key] == expect, what
        code, out = run(capsys, "compute", "greedy", "--spec", k3, "--chain", '["e1","e2","e3"]')
        assert json.loads(out)["values"]["charge"] == {"atoms": {"e1": "1/1", "e2": "1/1", "e3": "0/1"}}

    def test_couple(self, capsys, tmp_path):
        spec = write(tmp_path, "k3.json", K3_SPEC)
        rel = json.dumps({"left": ["a", "b"], "right": ["x", "y"], "pairs": [["a", "x"]]})
        marg = json.dumps({"left": ["1/2", "1/2"], "right": ["1/2", "1/2"]})
        code, out = run(capsys, "compute", "couple", "--spec", spec, "--relation", rel, "--marginals", marg)
        hv = json.loads(out)["values"]["hall_violation"]
        assert code == 0 and hv["X"] == ["a", "b"] and hv["lambda_X"] == "1/1"

    def test_missing_aux(self, capsys, tmp_path):
        code, out = run(capsys, "compute", "choquet", "--spec", write(tmp_path, "k.json", K3_SPEC))
        assert code == 2

    def test_byte_stable(self, capsys, tmp_path):
        k3 = write(tmp_path, "k3.json", K3_SPEC)
        outs = []
        for i in range(2):
            o = str(tmp_path / f"r{i}.json")
            assert main(["certify", "--spec", k3, "-p", "convex", "--seed", "7", "--stable", "--out", o]) == 0
            outs.append(open(o, "rb").read())
        assert outs[0] == outs[1]
        rep = json.loads(outs[0])
        assert "wall_time" not in rep and rep["seed"] == 7
        main(["certify", "--spec", k3])
        assert "wall_time" in json.loads(capsys.readouterr().out)

    def test_text_output(self, capsys, tmp_path):
        code, out = run(capsys, "certify", "--spec", write(tmp_path, "t.json", TRI_SPEC), "--text")
        assert code == 0 and "verdicts.submodular: holds" in out

    def test_uncertified_marker(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("SUBMOD_MAX_N", "24")
        code, out = run(capsys, "certify", "--spec", write(tmp_path, "t.json", TRI_SPEC))
        assert json.loads(out)["certified"] == "uncertified"

    def test_selftest_fast(self, capsys):
        t0 = time.perf_counter()
        code, out = run(capsys, "selftest", "--max-n", "3", "--stable")
        assert time.perf_counter() - t0 < 1.0
        rep = json.loads(out)
        assert code == 0 and rep["passed"]
        assert all(f["status"] == "pass" for f in rep["families"].values())

    def test_selftest_inject_fault(self, capsys):
        code, out = run(capsys, "selftest", "--max-n", "3", "--inject-fault")
        rep = json.loads(out)
        assert code == 1 and not rep["passed"]
        for f in rep["families"].values():
            assert f["status"] == "fail" and f["witness"]

    def test_subprocess_entry(self, tmp_path):
        p = write(tmp_path, "t.json", TRI_SPEC)
        r = subprocess.run([sys.executable, "-m", "submod", "certify", "--spec", p, "--stable"],
                           capture_output=True, text=True)
        assert r.returncode == 0 and json.loads(r.stdout)["exit_code"] == 0
