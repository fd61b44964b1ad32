import io
import json
import subprocess
import sys

import jsonschema
import pydot
import pytest

from mpgta.cli import main

RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
SOLUTION_SCHEMA = {
    "type": "object",
    "required": ["scale", "vertices", "strategies", "certificate"],
    "properties": {
        "scale": {"type": "integer", "minimum": 1},
        "vertices": {"type": "array", "items": {
            "type": "object",
            "required": ["location", "val_region", "target_region", "gain", "bias"],
            "properties": {
                "gain": RATIONAL,
                "bias": {"type": "object", "required": ["kind", "d"],
                         "properties": {"kind": {"enum": ["const", "offset"]}, "d": RATIONAL}},
            },
        }},
        "strategies": {"type": "object", "required": ["min", "max"]},
        "certificate": {"type": "object", "required": ["ok", "violations"],
                        "properties": {"ok": {"type": "boolean"}}},
    },
}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_solve(fixture_path):
    assert run("solve", fixture_path("bias.json")) == (0, "value = 1/2, certificate: ok\n", "")
    assert run("solve", fixture_path("selfloop.json"))[1] == "value = 1, certificate: ok\n"


def test_solve_json(fixture_path):
    code, out, _ = run("solve", fixture_path("bias.json"), "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, SOLUTION_SCHEMA)
    assert data["scale"] == 2 and data["certificate"]["ok"]
    assert {v["gain"] for v in data["vertices"]} == {"1"}


@pytest.mark.parametrize("budget,answer", [("1/2", "false"), ("1", "true"), ("3/4", "true"), ("0", "false")])
def test_decide(fixture_path, budget, answer):
    assert run("decide", fixture_path("bias.json"), "--budget", budget) == (0, answer + "\n", "")


def test_check(fixture_path):
    code, out, _ = run("check", fixture_path("bias.json"), "--samples", 30)
    assert code == 0
    assert "scale = 2\n" in out
    assert "optimality equations: ok" in out
    assert "lifted equations at 30 samples: ok" in out


def test_oracle(fixture_path):
    code, out, _ = run("oracle", fixture_path("bias.json"))
    assert code == 0
    assert out == "solver = 1/2\noracle = 1/2\nagree: true\n"


def test_oracle_cap(tmp_path):
    # both players own a location with two distinct successors
    locations = [{"id": i, "owner": o, "rate": 0, "invariant": "x <= 1"}
                 for i, o in [("a", "min"), ("b", "max")]]
    edges = [{"from": u, "action": f"{u}{v}", "guard": "x = 0", "resets": ["x"], "to": v, "price": p}
             for u in "ab" for v, p in [("a", 0), ("b", 1)]]
    path = tmp_path / "two.json"
    path.write_text(json.dumps({"clocks": ["x"], "k_bound": 1, "initial": "a",
                                "locations": locations, "edges": edges}))
    assert run("oracle", path)[0] == 0
    code, _, err = run("oracle", path, "--cap", 1)
    assert code == 1 and err.startswith("ProfileSpaceTooLarge")


def test_export_dot(fixture_path, tmp_path):
    path = tmp_path / "bias.dot"
    code, out, _ = run("export-dot", fixture_path("bias.json"), "--out", path)
    assert code == 0 and out.startswith("wrote ")
    graphs = pydot.graph_from_dot_data(path.read_text())
    assert len(graphs) == 1 and graphs[0].get_node_list()


def test_finite_solve(fixture_path):
    code, out, _ = run("finite-solve", fixture_path("arena.json"))
    assert code == 0
    assert out.splitlines()[0] == "s: gain = 1, bias = -1/2, plays b -> high"
    assert out.endswith("certificate: ok\n")
    code, out, _ = run("finite-solve", fixture_path("arena.json"), "--json")
    data = json.loads(out)
    assert [n["gain"] for n in data["nodes"]] == ["1", "0", "1"]
    assert data["certificate"]["ok"]


def test_regions():
    assert run("regions", "--k", 1) == (0, "0: {0}\n1: (0,1)\n2: {1}\n", "")


def test_domain_errors(fixture_path, tmp_path):
    code, out, err = run("solve", fixture_path("nonbinary.json"))
    assert code == 1 and out == ""
    assert err.startswith("NonBinaryRate:")
    code, _, err = run("solve", tmp_path / "missing.json")
    assert code == 1 and err.startswith("IOError:")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run("solve", bad)
    assert code == 1 and err.startswith("ParseError:")
    code, _, err = run("solve", fixture_path("bias.json"), "--max-scale", 1)
    assert code == 1 and err.startswith("ScaleEscalationExceeded:")


@pytest.mark.parametrize("argv", [
    [],
    ["solve"],
    ["decide", "x.json"],
    ["decide", "x.json", "--budget", "half"],
    ["regions", "--k", "-1"],
    ["solve", "x.json", "--max-scale", "0"],
    ["solve", "x.json", "--scale-recipe", "guess"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_console_entry_is_deterministic(fixture_path):
    outs = []
    for _ in range(2):
        r = subprocess.run([sys.executable, "-m", "mpgta.cli", "check", fixture_path("bias.json")],
                           capture_output=True, check=True)
        outs.append(r.stdout)
    assert outs[0] == outs[1]
