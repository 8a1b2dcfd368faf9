import io
import json
import sys

import pytest

from incidence_lab import enumerate_objects
from incidence_lab.cli import cli_main
from incidence_lab.generators import GeneratorSpec, generate
from incidence_lab.serialization import loads_point_set


def run(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli_main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(monkeypatch, capsys):
    return lambda argv, stdin="": run(argv, stdin, monkeypatch, capsys)


def test_gen_count_cube(cli):
    code, cube, _ = cli(["gen", "--name", "cube"])
    assert code == 0
    code, out, _ = cli(["count", "--kind", "planes"], cube)
    assert code == 0
    assert json.loads(out)["profiles"]["planes"] == {"3": 8, "4": 12, "total": 20}


def test_round_trip_matches_in_process(cli, tmp_path):
    path = tmp_path / "cfg.json"
    code, _, _ = cli(["gen", "--name", "random_constrained", "--n", "12", "--dim", "3", "--seed", "4",
                      "--flags", "no_3_collinear", "--out", str(path)])
    assert code == 0
    code, out, _ = cli(["count", str(path)])
    S = generate(GeneratorSpec("random_constrained", n=12, dim=3, seed=4,
                               flags=frozenset({"no_3_collinear"}))).points
    profiles = json.loads(out)["profiles"]
    assert profiles["planes"] == enumerate_objects(S, "planes").profile().to_json()
    assert profiles["spheres"] == enumerate_objects(S, "spheres").profile().to_json()
    assert loads_point_set(path.read_text()).points == S


def test_audit_near_pencil(cli):
    _, cfg, _ = cli(["gen", "--name", "near_pencil_plane", "--n", "10", "--k", "1"])
    code, out, _ = cli(["audit"], cfg)
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    assert doc["profiles"]["planes"]["total"] == 37


def test_audit_failure_exit_code(cli):
    _, cfg, _ = cli(["gen", "--name", "cube"])
    code, out, _ = cli(["audit"], cfg)
    assert code == 3
    assert any(e["verdict"] == "fail" for e in json.loads(out)["entries"])


def test_bounds_orchard(cli):
    code, out, _ = cli(["bounds", "--name", "orchard", "--n", "9"])
    rows = {r["bound"]: r["value"] for r in json.loads(out)}
    assert code == 0 and rows == {"orchard_lower": "10", "orchard_upper": "10"}
    code, out, _ = cli(["bounds", "--name", "planes_total", "--n", "58:59", "--format", "csv"])
    assert out.splitlines()[0].startswith("bound,n,k")


def test_strict_hypothesis_exit(cli):
    grid = json.dumps({"dim": 3, "points": [["0", "0", "0"], ["1", "1", "1"], ["2", "2", "2"], ["1", "0", "0"]]})
    code, _, err = cli(["count", "--strict"], grid)
    assert code == 2 and "no_3_collinear" in err
    code, _, _ = cli(["count"], grid)
    assert code == 0


def test_usage_errors(cli):
    assert cli(["count", "--bogus"])[0] == 1
    assert cli([])[0] == 1
    code, _, err = cli(["count"], '{"dim": 2, "points": [["1", 0.5]]}')
    assert code == 1 and "points[0][1]" in err


def test_project_and_invert(cli):
    _, cube, _ = cli(["gen", "--name", "cube"])
    code, out, _ = cli(["project", "--anchor", "0"], cube)
    doc = json.loads(out)
    assert code == 0 and all(row["plane_enumerated"] for row in doc["correspondence"])
    _, cfg, _ = cli(["gen", "--name", "cospherical_plus_k", "--n", "8"])
    code, out, _ = cli(["invert", "--anchor", "7", "--strict"], cfg)
    doc = json.loads(out)
    assert code == 0 and doc["bijective"] and len(doc["points"]) == 7
    code, out, _ = cli(["invert", "--center", "1/2,1/3,1/5"], cfg)
    assert code == 0 and json.loads(out)["dim"] == 3


def test_sphere_cap_override(cli, monkeypatch):
    monkeypatch.setenv("INCIDENCE_LAB_MAX_N", "6")
    _, cfg, _ = cli(["gen", "--name", "random_constrained", "--n", "8", "--dim", "3"])
    assert cli(["count", "--kind", "spheres"], cfg)[0] == 1
    assert cli(["count", "--kind", "spheres", "--max-quadruples", "70"], cfg)[0] == 0


def test_sweep_csv(cli):
    code, out, _ = cli(["sweep", "--name", "random_constrained", "--dim", "2", "--flags", "not_all_collinear",
                        "--n", "5:9", "--trials", "2", "--format", "csv"])
    assert code == 0
    melchior = next(line for line in out.splitlines() if line.startswith("melchior,"))
    assert melchior.endswith(",1")
