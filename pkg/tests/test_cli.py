import json

import pytest

from guinand.cli import run
from guinand.report import without_timing


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lemma1_example(capsys):
    code, out, _ = _run(capsys, "verify", "lemma1", "--s", "2,3,2.5+0.7i", "--j-max", "200")
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    names = [c["name"] for c in rep["checks"]]
    assert "factorization[s=2.5+0.7i]" in names
    assert rep["params"]["j_max"] == 200


def test_ppe_example(capsys):
    code, out, _ = _run(capsys, "verify", "ppe", "--x", "1,1.5,2,e,5")
    rep = json.loads(out)
    assert code == 0
    ppe = [c for c in rep["checks"] if c["name"].startswith("ppe")]
    assert len(ppe) == 5 and all(c["rel_err"] < 1e-6 for c in ppe)


def test_flipped_orientation_exit_two(capsys):
    code, _, err = _run(capsys, "verify", "ppe", "--x", "2", "--archimedean-orientation", "flipped")
    assert code == 2 and "FAIL ppe" in err


@pytest.mark.parametrize("argv", [
    ["verify", "ghat-grid", "--t-grid", "0:20:5"],
    ["verify", "zeros-dip", "--zeros", "3"],
    ["verify", "archimedean", "--x", "1,2"],
    ["verify", "weight8"],
    ["verify", "modular"],
    ["matrix", "solve", "--n", "8"],
    ["matrix", "residual", "--n", "8"],
    ["psi0", "compare", "--n", "10", "--zeros", "100"],
])
def test_passing_commands(capsys, argv):
    code, out, _ = _run(capsys, *argv)
    assert code == 0, out
    assert json.loads(out)["pass"]


def test_t_grid_parsing(capsys):
    _, out, _ = _run(capsys, "verify", "ghat-grid", "--t-grid", "0:1:0.5")
    assert len(json.loads(out)["checks"]) == 3


def test_matrix_build_csv(tmp_path, capsys):
    path = tmp_path / "T.csv"
    code, out, _ = _run(capsys, "matrix", "build", "--n", "32", "--out", str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "m\\n," + ",".join(str(n) for n in range(1, 33))
    assert len(lines) == 33
    assert lines[1].split(",")[1] == format(float(lines[1].split(",")[1]), ".17g")
    # the block>n*diag criterion is reported and fails, the rest passes
    rep = json.loads(out)
    failed = [c["name"] for c in rep["checks"] if not c["pass"]]
    assert code == 2 and failed and all("block>n*diag" in n for n in failed)


def test_singular_solve_is_reported(capsys):
    code, out, _ = _run(capsys, "matrix", "solve", "--n", "32")
    rep = json.loads(out)
    assert code == 2
    assert all("error" in c["extra"] for c in rep["checks"])


def test_csv_report_format(capsys):
    code, out, _ = _run(capsys, "verify", "modular", "--format", "csv")
    assert code == 0 and out.startswith("name,value,expected")


def test_determinism(capsys):
    outs = [_run(capsys, "verify", "archimedean", "--x", "2")[1] for _ in range(2)]
    a, b = (without_timing(json.loads(o)) for o in outs)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_merge(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify", "modular", "--out", str(p1)]) == 0
    assert run(["verify", "modular", "--out", str(p2)]) == 0
    code, out, _ = _run(capsys, "report", "merge", str(p1), str(p2))
    rep = json.loads(out)
    assert code == 0
    assert any(c["name"].endswith("#2") for c in rep["checks"])
    assert rep["meta"]["warnings"]


def test_merge_empty(capsys):
    code, out, _ = _run(capsys, "report", "merge")
    assert code == 0 and json.loads(out)["checks"] == []


@pytest.mark.parametrize("argv", [
    ["verify", "nothing"],
    ["verify", "lemma1", "--s", "2+x"],
    ["verify", "lemma1", "--j-max", "10"],
    ["verify", "ppe", "--x", "-1"],
    ["matrix", "build", "--n", "0"],
    ["matrix", "solve", "--ridge", "-1"],
    ["psi0", "compare", "--zeros", "500"],
    ["verify", "modular", "--out", "/nonexistent/dir/x.json"],
])
def test_config_errors(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 1 and "guinand:" in err


def test_merge_schema_mismatch(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"x": 1}')
    code, _, _ = _run(capsys, "report", "merge", str(bad))
    assert code == 1


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("GUINAND_THREADS", "1")
    code, _, _ = _run(capsys, "verify", "archimedean", "--x", "1")
    assert code == 0
    monkeypatch.setenv("GUINAND_THREADS", "lots")
    code, _, _ = _run(capsys, "verify", "ghat-grid")
    assert code == 1
