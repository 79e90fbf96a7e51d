import json

import pytest

from a22.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_chars_enumerate_json(capsys):
    code, out = run(capsys, "chars", "enumerate", "--kind", "goepel_quads", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 15
    assert len(data["items"][0]["indices"]) == 4


def test_chars_enumerate_text(capsys):
    code, out = run(capsys, "chars", "enumerate", "--kind", "even_chars", "--format", "text")
    lines = out.strip().splitlines()
    assert lines[0] == "# even_chars: 10"
    assert lines[-1].split() == ["10", "(1111)"]


def test_group_verify(capsys):
    code, out = run(capsys, "group", "verify")
    data = json.loads(out)
    assert data["order"] == 720
    assert data["epsilon"]["1,2"] == 1
    assert data["phi"]["5"] == -1


def test_variety_points(capsys):
    code, out = run(capsys, "variety", "points", "--domain", "q", "--format", "json")
    data = json.loads(out)
    assert data["count"] == 15
    assert all(len(p["zero_set"]) == 6 for p in data["points"])


def test_graph_build(capsys, tmp_path):
    out_json, out_dot = tmp_path / "g.json", tmp_path / "g.dot"
    code, out = run(capsys, "graph", "build", "--domain", "q", "--out", str(out_json), "--dot", str(out_dot))
    assert code == 0
    g = json.loads(out_json.read_text())
    assert len(g["vertices"]) == 145
    assert out_dot.exists()


def test_runge_bound_profiles(capsys):
    _, out = run(capsys, "runge", "bound", "--format", "json")
    assert json.loads(out)["height_bound"] == pytest.approx(8.553332, abs=1e-6)
    _, out = run(capsys, "runge", "bound", "--s-contains-3", "--format", "json")
    assert json.loads(out)["height_bound"] == pytest.approx(8.553332, abs=1e-6)
    _, out = run(capsys, "runge", "bound", "--s-contains-2", "--format", "json")
    assert json.loads(out)["height_bound"] == pytest.approx(3.988984, abs=1e-6)
    code, _ = run(capsys, "runge", "bound", "--s-contains-2", "--s-contains-3")
    assert code == 2


def test_runge_sample(capsys):
    code, out = run(capsys, "runge", "sample", "--count", "20", "--seed", "1")
    assert json.loads(out)["passes"]


def test_baker_constants(capsys):
    _, out = run(capsys, "baker", "constants", "--d", "18", "--s", "9", "--regime", "arch")
    data = json.loads(out)
    assert 1e35 < data["c1"] <= 8e35
    _, out = run(capsys, "baker", "constants", "--d", "18", "--s", "9", "--regime", "arch", "--variant", "p77")
    assert json.loads(out)["formula_variant"] == "p77"


def test_baker_bound_audit(capsys):
    _, out = run(capsys, "baker", "bound", "--d", "18", "--s", "9", "--hk", "1", "--rs", "2", "--ps", "5", "--audit")
    data = json.loads(out)
    assert data["interval_audit"]["holds"]
    assert {r["regime"] for r in data["regimes"]} == {"archimedean", "non_archimedean"}


def test_search_run(capsys, tmp_path):
    res, cert = tmp_path / "r.json", tmp_path / "c.json"
    code, out = run(capsys, "search", "run", "--height", "4", "--out", str(res), "--cert", str(cert))
    assert code == 0
    assert json.loads(res.read_text())["points"] == []
    assert json.loads(cert.read_text())["candidates"] == 248832


def test_search_singular_free_choice(capsys, tmp_path):
    code = main(["search", "run", "--free", "6,7,8,9,10", "--out", str(tmp_path / "r.json")])
    assert code == 2
    assert "try" in capsys.readouterr().err


def test_theta_verify(capsys):
    code, out = run(capsys, "theta", "verify", "--suite", "splitting", "--samples", "5", "--seed", "2",
                    "--tol", "1e-12", "--format", "json")
    assert code == 0
    assert json.loads(out)["suites"]["splitting"]["passes"]
