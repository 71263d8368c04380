import json

import pytest

from topoface import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_twisted(tmp_path, capsys):
    path = tmp_path / "t5.stg.json"
    code, out, err = run(capsys, "generate", "twisted", "--n", "5", "-o", str(path))
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == 1
    assert rep["outputs"]["edges"] == 10
    assert path.exists()


def test_generate_collinear_exits_2(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([["0", "0"], ["1", "1"], ["2", "2"], ["0", "3"]]))
    code, out, err = run(
        capsys, "generate", "straightline", "--points", str(pts), "-o", str(tmp_path / "x.json")
    )
    assert code == 2


def test_missing_file_exits_1(capsys):
    code, out, err = run(capsys, "validate", "does-not-exist.json")
    assert code == 1


@pytest.fixture()
def t5(tmp_path, capsys):
    path = tmp_path / "t5.stg.json"
    assert cli.main(["generate", "twisted", "--n", "5", "-o", str(path)]) == 0
    capsys.readouterr()
    return str(path)


def test_validate_and_planarize(t5, capsys):
    code, out, _ = run(capsys, "validate", t5)
    assert code == 0 and json.loads(out)["outputs"]["valid"]
    code, out, _ = run(capsys, "planarize", t5)
    rep = json.loads(out)
    assert code == 0 and rep["checks"]["euler"]
    assert rep["outputs"]["nodes"] - rep["outputs"]["arcs"] + rep["outputs"]["cells"] == 2


def test_z2_enumerate_count(capsys):
    code, out, _ = run(capsys, "z2", "enumerate", "--n", "4")
    assert code == 0
    assert json.loads(out)["outputs"]["count"] == 7


def test_z2_area_and_inside(t5, capsys):
    code, out, _ = run(capsys, "z2", "area", t5, "--cycle", "0-1,1-2,2-0")
    assert code == 0
    p, q = json.loads(out)["outputs"]["area"].split("/")
    assert int(q) >= 1 and int(p) >= 0
    code, out, _ = run(capsys, "z2", "inside", t5, "--cycle", "0-1,1-2,2-0")
    assert code == 0 and json.loads(out)["checks"]["boundary_matches"]


def test_z2_rejects_non_cycle(t5, capsys):
    code, out, err = run(capsys, "z2", "area", t5, "--cycle", "0-1,1-2")
    assert code == 1


def test_z2_simulate(capsys):
    code, out, _ = run(
        capsys, "z2", "simulate", "--n", "4", "--m", "64", "--trials", "3", "--seed", "5"
    )
    rep = json.loads(out)
    assert code == 0
    assert len(rep["outputs"]["min_per_trial"]) == 3


def test_heilbronn(t5, capsys):
    code, out, _ = run(capsys, "heilbronn", t5, "--k", "3")
    assert code == 0
    assert len(json.loads(out)["outputs"]["cycle"]) == 3


def test_find4_small_best_effort(t5, capsys, tmp_path):
    trace = tmp_path / "trace.json"
    code, out, _ = run(capsys, "find4", t5, "--trace", str(trace))
    rep = json.loads(out)
    assert code == 0  # n < 40: validity only, count not enforced
    assert rep["checks"]["all_disjoint"]
    assert trace.exists()


def test_render_deterministic(t5, capsys, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for target in (a, b):
        code, *_ = run(
            capsys, "render", t5, "-o", str(target),
            "--fill", "0-1,1-2,2-0", "--probe", "7,-1/2",
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"<svg" in a.read_bytes()


def test_render_bad_cycle_exits_1(t5, capsys):
    code, *_ = run(capsys, "render", t5, "--fill", "0-1,2-3")
    assert code == 1


def test_env_seed_used(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TOPOFACE_SEED", "123")
    path = tmp_path / "r.stg.json"
    code, out, _ = run(capsys, "generate", "straightline", "--n", "6", "-o", str(path))
    assert code == 0
    assert json.loads(out)["seed"] == 123
