from __future__ import annotations

import numpy as np
import pytest
from click.testing import CliRunner

import mpcc.driver
from mpcc.cli import main
from mpcc.oracles import ComponentLabeling


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args, env=None):
    return runner.invoke(main, [str(a) for a in args], env=env or {}, catch_exceptions=False)


def test_gen_and_run(runner, tmp_path):
    g = tmp_path / "g.txt"
    r = invoke(runner, "gen", "--family", "two_cycles", "--n", 600, "--seed", 1, "--out", g)
    assert r.exit_code == 0 and g.read_text().startswith("# n=600\n")
    rep, lab, tr = tmp_path / "r.json", tmp_path / "l.txt", tmp_path / "t.csv"
    r = invoke(runner, "cc", "run", "--in", g, "--seed", 2, "--report", rep, "--labels", lab,
               "--trace", tr)
    assert r.exit_code == 0
    assert "components=2" in r.stdout
    labels = [int(line.split()[1]) for line in lab.read_text().splitlines()]
    assert sorted(set(labels)) == [0, 300]
    assert tr.read_text().startswith("r,live,edges")


def test_invalid_input_exit_code(runner, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 2\n")
    assert invoke(runner, "cc", "run", "--in", bad).exit_code == 4
    assert invoke(runner, "cc", "run", "--in", tmp_path / "missing.txt").exit_code == 4
    assert invoke(runner, "gen", "--family", "cycle", "--n", 2, "--out", tmp_path / "x").exit_code == 4
    assert invoke(runner, "cc", "bench", "--family", "path", "--nmin", 8, "--nmax", 4,
                  "--out", tmp_path / "b.csv").exit_code == 4


def test_mismatch_exit_code(runner, tmp_path, monkeypatch):
    g = tmp_path / "g.txt"
    invoke(runner, "gen", "--family", "path", "--n", 50, "--out", g)

    def wrong(graph):
        return ComponentLabeling(np.arange(graph.n))

    monkeypatch.setattr(mpcc.driver, "oracle_components", wrong)
    assert invoke(runner, "cc", "run", "--in", g).exit_code == 2


def test_strict_audits_exit_code(runner, tmp_path):
    out = tmp_path / "b.csv"
    args = ("cc", "bench", "--family", "path", "--nmin", 256, "--nmax", 256, "--out", out)
    assert invoke(runner, *args).exit_code == 0
    assert invoke(runner, *args, env={"MPCC_STRICT_AUDITS": "1"}).exit_code == 3


def test_no_progress_exit_code(runner, tmp_path, monkeypatch):
    import mpcc.shrink
    g = tmp_path / "g.txt"
    invoke(runner, "gen", "--family", "path", "--n", 100, "--out", g)
    monkeypatch.setattr(mpcc.shrink, "KEEP_PROBABILITY", 0.0)
    monkeypatch.setattr(mpcc.shrink, "STALL_LIMIT", 3)
    r = invoke(runner, "shrink", "--in", g, "--target", 1, "--out", tmp_path / "o",
               "--map", tmp_path / "m")
    assert r.exit_code == 3


def test_shrink_and_lowerbound(runner, tmp_path):
    g = tmp_path / "g.txt"
    invoke(runner, "gen", "--family", "random_tree", "--n", 3000, "--seed", 5, "--out", g)
    r = invoke(runner, "shrink", "--in", g, "--target", 100, "--seed", 1, "--out", tmp_path / "o",
               "--map", tmp_path / "m", "--trace", tmp_path / "t.csv")
    assert r.exit_code == 0
    pairs = (tmp_path / "m").read_text().splitlines()
    assert len(pairs) == 3000 and pairs[0].split()[0] == "0"
    r = invoke(runner, "lowerbound", "--n", 5000, "--dprime", 64, "--seeds", 2, "--solver", "oracle",
               "--out", tmp_path / "lb.csv")
    assert r.exit_code == 0
    rows = (tmp_path / "lb.csv").read_text().splitlines()
    assert rows[0].startswith("seed,outer_iterations,components,iteration")
    assert len(rows) > 2
