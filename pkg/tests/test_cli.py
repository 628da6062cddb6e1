"""Command line interface: exit codes, report shapes, determinism."""

import json

import pytest

from conftest import model
from looptop.cli import main
from looptop.dga import dga_to_doc


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_builtin_ok(capsys):
    code, out, err = run(capsys, ["validate", "--model", "sphere:3"])
    assert code == 0
    assert "OK" in out
    assert err == ""


def test_validate_json_format(capsys):
    code, out, _ = run(capsys, ["validate", "--model", "torus:2",
                                "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert doc["violations"] == []


def test_validate_broken_model_file(tmp_path, capsys):
    doc = dga_to_doc(model("torus:2"))
    for entry in doc["products"]:
        if entry["left"] == "x1" and entry["right"] == "x2":
            entry["result"] = {"x12": "2"}
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, ["validate", str(path)])
    assert code == 1
    assert "rule" in out


def test_model_source_is_exclusive(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(dga_to_doc(model("sphere:2"))))
    code, _, err = run(capsys, ["validate", str(path), "--model", "sphere:2"])
    assert code == 2
    assert "not both" in err


def test_model_source_is_required(capsys):
    code, _, err = run(capsys, ["validate"])
    assert code == 2


def test_unknown_builtin_is_usage_error(capsys):
    code, _, err = run(capsys, ["validate", "--model", "klein:1"])
    assert code == 2


def test_missing_file_is_failure(capsys):
    code, _, err = run(capsys, ["validate", "/no/such/file.json"])
    assert code == 1
    assert "cannot read" in err


def test_bad_json_file_is_failure(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    code, _, err = run(capsys, ["validate", str(path)])
    assert code == 1
    assert "not valid JSON" in err


def test_loop_homology_exact_run(capsys):
    code, out, _ = run(capsys, ["loop-homology", "--model", "sphere:3",
                                "--min", "-3", "--max", "5",
                                "--cutoff", "8"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[1] == "degree\tbetti\tstatus\tclasses\tproducts"
    assert len(lines) == 2 + 9
    assert all("exact" in line for line in lines[2:])


def test_loop_homology_truncated_run(capsys):
    code, out, _ = run(capsys, ["loop-homology", "--model", "sphere:2",
                                "--min", "0", "--max", "4", "--cutoff", "2"])
    assert code == 3
    assert "weight-truncated" in out


def test_loop_homology_degenerate_range(capsys):
    code, _, err = run(capsys, ["loop-homology", "--model", "sphere:3",
                                "--min", "4", "--max", "0"])
    assert code == 2


def test_loop_homology_json(capsys):
    code, out, _ = run(capsys, ["loop-homology", "--model", "sphere:3",
                                "--min", "-3", "--max", "5", "--cutoff", "8",
                                "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["degrees"]["-3"] == {"betti": 1, "exact": True}
    assert doc["ring"]["h-3.0*h2.0"] == {"h-1.0": "1"}


def test_bar_betti_sphere(capsys):
    code, out, _ = run(capsys, ["bar-betti", "--model", "sphere:2",
                                "--min", "0", "--max", "4",
                                "--max-weight", "5"])
    assert code == 0
    rows = [line.split("\t") for line in out.strip().split("\n")[2:]]
    assert [int(r[1]) for r in rows] == [1, 1, 1, 1, 1]


def test_bar_betti_truncated_exit(capsys):
    code, out, _ = run(capsys, ["bar-betti", "--model", "torus:2",
                                "--min", "0", "--max", "2"])
    assert code == 3


def test_bracket_table_torus(capsys):
    code, out, _ = run(capsys, ["bracket", "--model", "torus:2", "--p", "2"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[1] == "class1\tclass2\tfiltration\texpansion"
    assert lines[-1] == "antisymmetry\tok"
    # 6 classes at cutoff 2, so a full 36-row table
    assert len(lines) == 2 + 36 + 1


def test_bracket_rejects_bad_p(capsys):
    code, _, _ = run(capsys, ["bracket", "--model", "torus:2", "--p", "0"])
    assert code == 2


def test_bracket_needs_symplectic_model(capsys):
    code, _, err = run(capsys, ["bracket", "--model", "sphere:3"])
    assert code == 1


def test_pi1_compare(capsys):
    code, out, _ = run(capsys, ["pi1-compare", "--p", "3"])
    assert code == 0
    rows = [line.split("\t") for line in out.strip().split("\n")[1:]]
    assert [(int(r[0]), int(r[1])) for r in rows] == [(1, 1), (2, 3), (3, 6)]
    assert all(r[3] == "ok" for r in rows)


def test_pi1_compare_json(capsys):
    code, out, _ = run(capsys, ["pi1-compare", "--p", "2",
                                "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert [row["h0_dim"] for row in doc["rows"]] == [1, 3]


def test_unknown_command_exits_two(capsys):
    code, _, _ = run(capsys, ["frobnicate"])
    assert code == 2


def test_repeat_runs_are_identical(capsys):
    argv = ["loop-homology", "--model", "torus:1",
            "--min", "-2", "--max", "2", "--cutoff", "4"]
    first = run(capsys, argv)
    second = run(capsys, argv)
    assert first == second
