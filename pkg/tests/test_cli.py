import json
import os
import subprocess
import sys
from importlib import resources

import jsonschema

from gtpoly import repro
from gtpoly.cli import main

SCHEMA = json.loads(resources.files("gtpoly").joinpath("data/report-v1.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["command"] == argv[0]
    return doc["result"]


def test_classify(capsys):
    r = report(capsys, "classify", "--lambda", "3,2", "--mu", "1")
    assert r["tag"] == "NonIntegralWitness"


def test_analyze_integral_and_not(capsys):
    assert report(capsys, "analyze", "--lambda", "5,3", "--weight", "2,2,1,2,1")["integral"] is False
    assert report(capsys, "analyze", "--lambda", "5,3", "--weight", "2,2,2,1,1")["integral"] is True


def test_analyze_empty_polytope(capsys):
    report(capsys, "analyze", "--lambda", "4,3,1", "--weight", "8")


def test_points_and_vertices(capsys):
    r = report(capsys, "points", "--lambda", "4,3,1", "--weight", "1,1,1,1,1,1,1,1", "--count-only")
    assert r["count"] == 70
    report(capsys, "points", "--lambda", "2,2", "--mu", "1", "--weight", "1,1,1")
    report(capsys, "vertices", "--lambda", "2,2", "--weight", "1,1,1,1")


def test_tiling(capsys, tmp_path):
    pat = tmp_path / "pat.json"
    pat.write_text(json.dumps([[0, 0], [1, 0], [2, 0], [2, 1], [2, 2]]))
    r = report(capsys, "tiling", "--pattern", str(pat))
    assert r["is_vertex"] is True


def test_idp_and_triangulate(capsys):
    assert report(capsys, "idp", "--lambda", "2,2", "--weight", "1,1,1,1")["holds"] is True
    report(capsys, "triangulate", "--lambda", "4,3,1", "--weight", "4,2,2")
    report(capsys, "triangulate", "--lambda", "4,3,1", "--weight", "2,2,2,2", "--order", "revlex",
           "--check-only")
    report(capsys, "idp", "--lambda", "2,1", "--rows", "3", "--max-k", "2")


def test_poset_json_and_dot(capsys, tmp_path):
    r = report(capsys, "poset", "--lambda", "3,1")
    assert r["nodes"]
    code, out, _ = run(capsys, "poset", "--lambda", "4,3,1", "--dot", "-")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 23
    dot = tmp_path / "p.dot"
    report(capsys, "poset", "--lambda", "3,1", "--dot", str(dot))
    assert dot.read_text().startswith("digraph")


def test_decompose_modes(capsys, tmp_path):
    hook = tmp_path / "hook.json"
    hook.write_text(json.dumps(["1123", "23"]))
    r = report(capsys, "decompose", "--mode", "hook", "--k", "2", "--input", str(hook))
    assert [c["young"] for c in r["components"]] == [["13", "2"], ["12", "3"]]
    cols = tmp_path / "cols.json"
    cols.write_text(json.dumps(["::::::111115", ":::111333", "122222445", "245"]))
    r = report(capsys, "decompose", "--mode", "columns", "--k", "3", "--input", str(cols))
    assert len(r["components"]) == 3
    mat = tmp_path / "mat.json"
    mat.write_text(json.dumps({"entries": [[1, 0, 1], [0, 1, 0]], "mu": [1, 0], "columns": 3}))
    r = report(capsys, "decompose", "--mode", "contingency", "--input", str(mat))
    pat = tmp_path / "pat.json"
    pat.write_text(json.dumps(r["pattern"]))
    r2 = report(capsys, "decompose", "--mode", "contingency", "--input", str(pat))
    assert r2["matrix"]["entries"] == [[1, 0, 1], [0, 1, 0]]


def test_malformed_input_exits_two(capsys):
    code, out, err = run(capsys, "analyze", "--lambda", "3,1", "--mu", "x", "--weight", "1,1,1")
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "MalformedInput"
    code, _, err = run(capsys, "analyze", "--lambda", "1,2", "--weight", "3")
    assert code == 2


def test_domain_error_exits_two(capsys):
    code, _, err = run(capsys, "idp", "--lambda", "5,3", "--weight", "2,2,1,2,1")
    assert code == 2 and json.loads(err)["error"] == "DomainError"


def test_missing_input_file_exits_two(capsys, tmp_path):
    code, _, _ = run(capsys, "decompose", "--mode", "hook", "--input", str(tmp_path / "nope.json"))
    assert code == 2


def test_repro_passes(capsys):
    r = report(capsys, "repro")
    assert r["failed"] == 0 and r["passed"] > 0


def test_repro_mismatch_exits_one(capsys, monkeypatch):
    bad = [{"id": "wrong", "kind": "is_refinement",
            "input": {"finer": [2, 2], "coarser": [4]}, "expected": {"refines": False}}]
    monkeypatch.setattr(repro, "load_fixtures", lambda: bad)
    code, out, _ = run(capsys, "repro")
    assert code == 1
    jsonschema.validate(json.loads(out), SCHEMA)


def test_spec_file_with_inline_override(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"shape": {"lambda": [5, 3]}, "weight": [2, 2, 1, 2, 1]}))
    assert report(capsys, "analyze", "--spec", str(spec))["integral"] is False
    r = report(capsys, "analyze", "--spec", str(spec), "--weight", "2,2,2,1,1")
    assert r["integral"] is True


def test_json_to_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "classify", "--lambda", "2,2", "--json", str(out))
    assert code == 0 and stdout == ""
    jsonschema.validate(json.loads(out.read_text()), SCHEMA)


def test_timing_only_when_asked(capsys):
    code, out, _ = run(capsys, "classify", "--lambda", "2,2")
    assert "timing" not in json.loads(out)
    code, out, _ = run(capsys, "classify", "--lambda", "2,2", "--timing")
    assert "timing" in json.loads(out)


def test_output_is_deterministic(capsys):
    argv = ("poset", "--lambda", "4,2", "--max-k", "2")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv, "--threads", "3")[1]
    assert a == b
    argv = ("triangulate", "--lambda", "4,3,1", "--weight", "2,2,2,2", "--order", "shuffle",
            "--seed", "7")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_threads_from_environment(capsys, monkeypatch):
    base = run(capsys, "poset", "--lambda", "3,2")[1]
    monkeypatch.setenv("GTPOLY_THREADS", "2")
    assert run(capsys, "poset", "--lambda", "3,2")[1] == base
    monkeypatch.setenv("GTPOLY_THREADS", "many")
    assert run(capsys, "poset", "--lambda", "3,2")[0] == 2


def test_console_script_entry_point():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "gtpoly.cli", "classify", "--lambda", "2,2"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == "gtpoly-report/1"


def test_bad_subcommand_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2
