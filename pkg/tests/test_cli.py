import json

import pytest
from typer.testing import CliRunner

from starcover import suites
from starcover.cli import app
from starcover.errors import InexactDivisionError
from starcover.graph import complete_graph, cube_graph, to_json

runner = CliRunner()


def _json(result):
    return json.loads(result.stdout)


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.json"
    path.write_text(to_json(complete_graph(4)))
    return path


@pytest.fixture
def cube_file(tmp_path):
    path = tmp_path / "cube.json"
    path.write_text(to_json(cube_graph()))
    return path


def test_star_json():
    result = runner.invoke(app, ["star", "--n", "2", "--format", "json"])
    assert result.exit_code == 0
    doc = _json(result)
    assert len(doc["vertices"]) == 6
    assert len(doc["edges"]) == 6


def test_star_text():
    result = runner.invoke(app, ["--quiet", "star", "--n", "3"])
    assert result.exit_code == 0
    assert "24 vertices" in result.stdout


def test_star_guard_exits_2(monkeypatch):
    monkeypatch.setenv("STARCOVER_STAR_LIMIT", "2")
    result = runner.invoke(app, ["star", "--n", "3"])
    assert result.exit_code == 2


def test_quotient_by_c3():
    result = runner.invoke(app, ["quotient", "--n", "3", "--subgroup", "(1,2,3)", "--format", "json"])
    assert result.exit_code == 0
    assert len(_json(result)["vertices"]) == 8


def test_quotient_rejects_bad_generator():
    result = runner.invoke(app, ["quotient", "--n", "3", "--subgroup", "(1,4)"])
    assert result.exit_code == 2


def test_charpoly(k4_file):
    result = runner.invoke(app, ["--no-timestamp", "charpoly", "--in", str(k4_file), "--format", "json"])
    assert result.exit_code == 0
    doc = _json(result)
    assert doc["coefficients"] == [-3, -8, -6, 0, 1]
    assert doc["factored"] == "(x+1)^3(x-3)"
    assert "timestamp" not in doc


def test_timestamp_included_by_default(k4_file, monkeypatch):
    monkeypatch.delenv("STARCOVER_TIMESTAMPS", raising=False)
    result = runner.invoke(app, ["charpoly", "--in", str(k4_file), "--format", "json"])
    assert "timestamp" in _json(result)


def test_spectrum(cube_file):
    result = runner.invoke(app, ["--no-timestamp", "spectrum", "--in", str(cube_file), "--format", "json"])
    assert result.exit_code == 0
    doc = _json(result)
    assert doc["eigenvalues"] == {"-3": 1, "-1": 3, "1": 3, "3": 1}
    assert doc["integral"] is True


def test_zeta_with_cycle_counts(k4_file):
    result = runner.invoke(app, ["--no-timestamp", "zeta", "--in", str(k4_file), "--series", "3", "--format", "json"])
    assert result.exit_code == 0
    doc = _json(result)
    assert doc["cycle_counts"] == [0, 0, 24]
    assert doc["r_minus_1"] == 2
    assert len(doc["coefficients"]) == 13


def test_malformed_graph_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [{"id": 0}], "edges": [{"u": 0, "v": 3}]}')
    result = runner.invoke(app, ["charpoly", "--in", str(bad)])
    assert result.exit_code == 2


def test_mult(tmp_path):
    out = tmp_path / "mult.json"
    result = runner.invoke(app, ["--no-timestamp", "mult", "--n", "3", "--table", "--format", "json", "--out", str(out)])
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["multiplicities"]["-2"] == 6
    assert doc["multiplicities"]["0"] == 4
    assert len(doc["table"]) == 5


def test_mult_text_table():
    result = runner.invoke(app, ["mult", "--n", "3", "--k", "2", "--table"])
    assert result.exit_code == 0
    assert "mult(2) = 6" in result.stdout


def test_honeycomb():
    result = runner.invoke(app, ["honeycomb", "--lattice", "G_K4", "--format", "json"])
    assert result.exit_code == 0
    assert len(_json(result)["vertices"]) == 4


def test_honeycomb_labels():
    result = runner.invoke(app, ["honeycomb", "--lattice", "Lambda_X3", "--label", "--format", "json"])
    assert result.exit_code == 0
    labels = {v["label"] for v in _json(result)["vertices"]}
    assert len(labels) == 24
    assert "1234" in labels


def test_honeycomb_bad_lattice():
    result = runner.invoke(app, ["honeycomb", "--lattice", "1,1;2,2"])
    assert result.exit_code == 2


def test_iso(k4_file, cube_file, tmp_path):
    same = runner.invoke(app, ["iso", str(cube_file), str(cube_file)])
    assert same.exit_code == 0
    different = runner.invoke(app, ["iso", str(k4_file), str(cube_file)])
    assert different.exit_code == 1


def test_verify_fourier():
    result = runner.invoke(app, ["--quiet", "verify", "--suite", "fourier"])
    assert result.exit_code == 0
    assert "PASS" in result.stdout


def test_verify_json_report(tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["--no-timestamp", "verify", "--suite", "honeycomb", "--format", "json", "--out", str(out)])
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["passed"] is True
    assert doc["suites"][0]["suite"] == "honeycomb"


def test_verify_unknown_suite():
    result = runner.invoke(app, ["verify", "--suite", "nope"])
    assert result.exit_code == 2


def test_bad_format_is_usage_error():
    result = runner.invoke(app, ["star", "--n", "2", "--format", "yaml"])
    assert result.exit_code == 2


def test_init_config(monkeypatch, tmp_path):
    monkeypatch.setenv("HOME", str(tmp_path))
    result = runner.invoke(app, ["init-config"])
    assert result.exit_code == 0
    assert (tmp_path / ".starcover" / ".env").exists()


def test_verify_exits_1_when_an_identity_fails(monkeypatch):
    def inexact(*args, **kwargs):
        raise InexactDivisionError("remainder is nonzero")

    monkeypatch.setattr(suites, "derive_from_identity", inexact)
    result = runner.invoke(app, ["--quiet", "verify", "--suite", "s3"])
    assert result.exit_code == 1
