import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "complygames.cli"]


def run(*args, stdin=None):
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, input=stdin, timeout=300
    )


def test_gen_set_stdout():
    r = run("gen-set", "--cond", "ap(3)", "--n", "13")
    assert r.returncode == 0
    assert r.stdout.split() == ["0", "1", "3", "4", "9", "10", "12", "13"]


def test_gen_set_json_out(tmp_path):
    out = tmp_path / "set.json"
    r = run("gen-set", "--cond", "sidon(2)", "--n", "20", "--format", "json", "--out", str(out))
    assert r.returncode == 0
    assert json.loads(out.read_text())["elements"] == [0, 1, 3, 7, 12, 20]


def test_gen_set_with_figure(tmp_path):
    out = tmp_path / "set.txt"
    fig = tmp_path / "set.svg"
    r = run("gen-set", "--cond", "ap(3)", "--n", "30", "--out", str(out), "--fig", str(fig))
    assert r.returncode == 0
    assert out.read_text().splitlines()[0] == "0"
    assert fig.exists()


def test_gen_perm_csv():
    r = run("gen-perm", "--cond", "wythoff", "--mode", "max", "--n", "6", "--format", "csv")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "n,pi"
    assert lines[1:] == ["0,0", "1,2", "2,1", "3,5", "4,7", "5,3", "6,10"]


def test_gen_perm_dsl_condition():
    r = run("gen-perm", "--cond", "x1 + x3 = 2*x2", "--mode", "max", "--n", "12", "--format", "csv")
    assert r.returncode == 0
    assert r.stdout.strip().splitlines()[-1] == "12,10"


def test_triple():
    r = run("triple", "--triple", "0,2,4")
    assert r.returncode == 0 and r.stdout.strip() == "N"
    r = run("triple", "--triple", "0,1,2")
    assert r.stdout.strip() == "P"


def test_star():
    r = run("star", "--family", "all", "--n", "13")
    assert r.stdout.split() == ["0", "1", "3", "4", "9", "10", "12", "13"]


def test_realizable():
    r = run("realizable", "--set", "0,1,3,4,9,10,12,13", "--horizon", "13")
    assert "witness 2" in r.stdout
    r = run("realizable", "--nim-values", "0,1,2,0,1,2,0")
    assert r.stdout.startswith("realizable")


def test_outcomes_1d_csv(tmp_path):
    out = tmp_path / "o.csv"
    r = run("outcomes-1d", "--family", "all", "--n", "13", "--format", "csv", "--out", str(out))
    assert r.returncode == 0
    assert out.read_text().splitlines()[1] == "0,P"


def test_outcomes_2d_json():
    r = run("outcomes-2d", "--cond", "empty", "--mode", "max", "--x", "4", "--y", "4",
            "--format", "json")
    doc = json.loads(r.stdout)
    assert [2, 2] in doc["P"]


def test_density():
    r = run("density", "--cond", "ap(3)", "--n", "40", "--checkpoints", "1,13,40")
    assert r.stdout.strip().splitlines() == ["1,2", "13,8", "40,16"]


def test_stanley():
    r = run("stanley", "--initial", "0", "2", "--n", "9")
    assert r.stdout.split() == ["0", "2", "3", "5", "9"]


def test_export_grid_with_figure(tmp_path):
    out = tmp_path / "grid.csv"
    fig = tmp_path / "grid.svg"
    r = run("export", "--kind", "grid", "--cond", "ap(3)", "--mode", "max",
            "--x", "10", "--y", "10", "--format", "csv",
            "--out", str(out), "--fig", str(fig))
    assert r.returncode == 0
    assert out.read_text().splitlines()[0] == "x,y,outcome"
    assert fig.read_text().startswith("<?xml")


def test_export_nim_values(tmp_path):
    out = tmp_path / "nim.csv"
    r = run("export", "--kind", "nim", "--amounts", "1,2", "--n", "6", "--out", str(out))
    assert r.returncode == 0
    assert out.read_text().splitlines()[:3] == ["heap,g", "0,0", "1,1"]


def test_usage_error_exit_code():
    r = run("gen-set", "--cond", "x1 + = 2", "--n", "5")
    assert r.returncode == 1
    assert "error" in r.stderr.lower()


def test_unknown_builtin_exit_code():
    r = run("gen-set", "--cond", "bogus(3)", "--n", "5")
    assert r.returncode == 1


def test_verify_quick_pass():
    r = run("verify", "--scale", "0.08")
    assert r.returncode == 0, r.stdout + r.stderr
    doc = json.loads(r.stdout)
    assert doc["failures"] == []
    assert len(doc["checks"]) > 50


def test_play_scripted_heap_game():
    # heap 2 is a next-player win: the human's only (and winning) proposal
    # is the targets {1, 0}; either engine pick lands on a P-position where
    # the engine must propose and cannot
    r = run("play", "--kind", "ap3-board", "--bounds", "4", "--start", "2",
            stdin="1,0\n")
    assert "position: 2" in r.stdout
    assert "winner: human" in r.stdout


def test_play_engine_wins_when_proposing_from_n():
    # same heap with roles flipped: the engine proposes from the N-position
    # and the human cannot escape
    r = run("play", "--kind", "ap3-board", "--bounds", "4", "--start", "2",
            "--role", "chooser", stdin="0\n1\n0\n")
    assert "winner: engine" in r.stdout


def test_play_heap0_immediate_loss():
    r = run("play", "--kind", "ap3-board", "--bounds", "4", "--start", "0", stdin="")
    assert "winner: engine" in r.stdout


def test_play_wythoff_proposer_loses_from_p():
    # (1,2) is a classical Wythoff P-position: the proposer loses under
    # optimal play; script the human through a couple of moves
    r = run("play", "--kind", "wythoff", "--bounds", "6", "6", "--start", "1", "2",
            stdin="0 1\n0\n")
    assert "winner: engine" in r.stdout


def test_play_rejects_illegal_then_reprompts():
    r = run("play", "--kind", "ap3-board", "--bounds", "8", "--start", "8",
            stdin="5,1\n4,0\n0\n2,1\n0\n1,0\n0\n")
    assert "rejected" in r.stdout
    assert "winner" in r.stdout
