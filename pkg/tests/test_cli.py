import json

import pytest

from extensor_coding.cli import main
from extensor_coding.graph import Digraph

SQUARE = "g1 = input 1\ng2 = input 2\ng3 = add g1 g2\ng4 = mul g3 g3\noutput g4\n"
CANCEL = ("g1 = input 1\ng2 = input 2\ng3 = mul g1 g2\ng4 = const -1\ng5 = mul g3 g4\n"
          "g6 = add g3 g5\noutput g6\n")


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return {
        "path": write("path.g", Digraph.path(3).to_text()),
        "empty": write("empty.g", Digraph(4, []).to_text()),
        "two": write("two.g", "p directed 4 4\n1 2\n2 3\n1 3\n3 4\n"),
        "k5": write("k5.g", Digraph.complete(5).to_text()),
        "p3": write("p3.g", Digraph.path(3).to_text()),
        "v1": write("v1.g", Digraph(1, []).to_text()),
        "bad": write("bad.g", "p directed 2 5\n"),
        "square": write("sq.c", SQUARE),
        "cancel": write("cancel.c", CANCEL),
        "td": write("p3.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"),
    }


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip() else None
    return code, report


@pytest.mark.parametrize("mode", ["unambiguous", "deterministic", "random-edge", "representative", "few:2"])
def test_detect_modes(capsys, files, mode):
    code, rep = run(capsys, ["detect", files["path"], "--k", "3", "--mode", mode])
    assert code == 0 and rep["result"]["found"] is True
    code, rep = run(capsys, ["detect", files["empty"], "--k", "2", "--mode", mode])
    assert code == 1 and rep["result"]["found"] is False


def test_detect_few_on_two_paths(capsys, files):
    code, rep = run(capsys, ["detect", files["two"], "--k", "3", "--mode", "few:2"])
    assert code == 0 and rep["parameters"]["C"] == 2


def test_count_paths_deterministic_output(capsys, files):
    argv = ["count-paths", files["k5"], "--k", "3", "--eps", "0.2", "--seed", "7"]
    c1, r1 = run(capsys, argv)
    c2, r2 = run(capsys, argv)
    assert c1 == c2 == 0
    assert r1["result"] == r2["result"] and r1["trial_stats"] == r2["trial_stats"]
    assert r1["parameters"]["t"] == 67500 and 48 <= r1["result"]["estimate"]["float"] <= 72
    assert len(r1["input_digest"]) == 64


def test_count_paths_empty(capsys, files):
    code, rep = run(capsys, ["count-paths", files["empty"], "--k", "2", "--eps", "0.5"])
    assert code == 0 and rep["result"]["estimate"]["num"] == 0


def test_seed_from_environment(capsys, files, monkeypatch):
    monkeypatch.setenv("EXTENSOR_SEED", "11")
    _, rep = run(capsys, ["count-paths", files["k5"], "--k", "2", "--eps", "1", "--trials", "50"])
    assert rep["parameters"]["seed"] == 11
    monkeypatch.setenv("EXTENSOR_SEED", "nope")
    assert run(capsys, ["count-paths", files["k5"], "--k", "2", "--eps", "1"])[0] == 2


def test_count_sub(capsys, files):
    code, rep = run(capsys, ["count-sub", files["p3"], files["k5"], "--eps", "0.25", "--seed", "1"])
    assert code == 0 and abs(rep["result"]["estimate"]["float"] - 60) <= 15
    assert rep["result"]["aut"] == 1 and rep["result"]["width"] == 1
    _, rep = run(capsys, ["count-sub", files["v1"], files["k5"], "--eps", "0.25"])
    assert rep["result"]["estimate"]["num"] == 5
    _, rep = run(capsys, ["count-sub", files["k5"], files["p3"], "--eps", "0.25"])
    assert rep["result"]["estimate"]["num"] == 0
    code, rep = run(capsys, ["count-sub", files["p3"], files["k5"], "--eps", "0.5", "--td", files["td"]])
    assert code == 0 and rep["result"]["width"] == 1


def test_detect_multilinear(capsys, files):
    assert run(capsys, ["detect-multilinear", files["square"], "--k", "2"])[0] == 0
    assert run(capsys, ["detect-multilinear", files["cancel"], "--k", "2"])[0] == 1
    assert run(capsys, ["detect-multilinear", files["square"], "--k", "3"])[0] == 1


def test_errors_exit_2(capsys, files):
    assert run(capsys, ["detect", files["bad"], "--k", "2"])[0] == 2
    assert run(capsys, ["detect", "/nonexistent", "--k", "2"])[0] == 2
    assert run(capsys, ["detect", files["path"]])[0] == 2
    assert run(capsys, ["detect", files["path"], "--k", "2", "--mode", "nope"])[0] == 2
    assert run(capsys, ["count-paths", files["k5"], "--k", "2", "--eps", "0"])[0] == 2


def test_bench_walk_suite(capsys):
    code, rep = run(capsys, ["bench", "--suite", "walk"])
    ops = [r["ops"] for r in rep["result"]["walk"]]
    assert code == 0 and ops == sorted(ops)


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "EXTENSOR_SEED" in capsys.readouterr().out
