import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from linsets import harness
from linsets.cli import main
from linsets.examples_bounds import remark_example
from linsets.field_tower import make_tower
from linsets.fq_linalg import random_subspace
from linsets.harness import (
    SweepConfig, _parse_range, load_config, minimize_witness, run_sweep,
)
from linsets.io import format_subspace, parse_subspace
from linsets.verification import VerificationOutcome, outcome

ROOT = Path(__file__).resolve().parents[1]
SCHEMA = json.loads((ROOT / "docs" / "report_schema.json").read_text())


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "linsets.cli", *args],
                          capture_output=True, text=True)


def test_parse_range():
    assert _parse_range("0-3,6") == (0, 1, 2, 3, 6)
    assert _parse_range(" 2 ") == (2,)


def test_config_validation(tmp_path):
    with pytest.raises(ValueError):
        SweepConfig(mode="sometimes").validate()
    with pytest.raises(ValueError):
        SweepConfig(p=(4,)).validate()
    with pytest.raises(ValueError):
        SweepConfig(checks=("nope",)).validate()
    with pytest.raises(ValueError):
        SweepConfig(mode="random", seed=None).validate()
    cfg = tmp_path / "c.ini"
    cfg.write_text("[sweep]\np = 3\nn = 2\nm = 1-2\nmode = random\nseed = 4\n[budget]\nmax_field = 99\n")
    c = load_config(cfg, samples=3)
    assert (c.p, c.m, c.mode, c.seed, c.samples, c.max_field) == ((3,), (1, 2), "random", 4, 3, 99)


def test_empty_grid():
    rep = run_sweep(SweepConfig(m=()))
    assert rep.cases == 0 and rep.ok


def test_default_sweep_acceptance_example():
    rep = run_sweep(load_config(ROOT / "configs" / "default.ini"))
    assert rep.cases == 35
    assert rep.failures == 0
    jsonschema.validate(json.loads(rep.to_json()), SCHEMA)


def test_budget_skip_is_recorded():
    rep = run_sweep(SweepConfig(p=(2,), n=(3,), r=(2,), m=(3,), max_subspaces=100,
                                checks=("thm_main",)))
    assert rep.cases == 0 and rep.skipped and rep.ok
    rep = run_sweep(SweepConfig(p=(2,), n=(6,), m=(2,), max_field=32, checks=("thm_main",)))
    assert "max_field" in rep.skipped[0]["reason"]


def test_random_report_deterministic():
    cfg = load_config(ROOT / "configs" / "random_q7.ini", samples=4)
    a, b = run_sweep(cfg).to_json(), run_sweep(cfg).to_json()
    assert a == b
    jsonschema.validate(json.loads(a), SCHEMA)


def test_workers_do_not_change_report():
    cfg = SweepConfig(p=(3,), n=(2,), r=(2,), m=(1, 2), mode="random", samples=5, seed=9,
                      checks=("thm_main", "thm_final"))
    one = run_sweep(cfg).to_dict()
    cfg.workers = 2
    two = run_sweep(cfg).to_dict()
    assert two["config"].pop("workers") == 2
    one["config"].pop("workers")
    assert two == one


def test_minimize_witness():
    T = make_tower(2, 1, 2)
    U = random_subspace(T, 2, 4, seed=0)

    def check(V):
        # fails while V still contains (1, 0)
        return outcome("toy", not V.contains((1, 0)), V)

    small = minimize_witness(U, check)
    assert small.fq_dim == 1 and small.contains((1, 0))


def test_failure_witness_and_replay(monkeypatch, tmp_path, capsys):
    # a sabotaged check makes every rank >= 2 case fail; witnesses must replay
    def broken(U, LU=None):
        return outcome("size_bounds", U.fq_dim < 2, U)

    monkeypatch.setattr(harness, "check_size_bounds", broken)
    rep = run_sweep(SweepConfig(p=(2,), n=(2,), r=(2,), m=(3,), checks=("size_bounds",)))
    assert rep.failures == 15 and not rep.ok
    jsonschema.validate(rep.to_dict(), SCHEMA)
    w = rep.witnesses[0]
    W = parse_subspace(w["witness"])
    assert W.fq_dim == 2
    path = tmp_path / "w.txt"
    path.write_text(w["witness"])
    assert main(["analyze", str(path), "--check", "size_bounds"]) == 1
    assert json.loads(capsys.readouterr().out)["check"]["status"] == "fail"


def test_sweep_replay_agrees_with_analyze(tmp_path, capsys):
    T = make_tower(3, 1, 2)
    for seed in range(3):
        U = random_subspace(T, 2, 2, seed)
        path = tmp_path / f"u{seed}.txt"
        path.write_text(format_subspace(U))
        assert main(["analyze", str(path), "--check", "thm_main"]) == 0
        status = json.loads(capsys.readouterr().out)["check"]["status"]
        rep = run_sweep(SweepConfig(p=(3,), n=(2,), m=(2,), checks=("thm_main",)))
        assert status in rep.checks["thm_main"]


def test_cli_missing_config():
    assert main(["sweep", "--config", "missing.toml"]) == 2


def test_cli_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    assert main(["directions", "--table", "t.txt"]) == 2


def test_cli_bad_table(tmp_path):
    t = tmp_path / "t.txt"
    t.write_text("0 1 2\n")
    assert main(["directions", "--table", str(t), "--p", "2", "--h", "2"]) == 2


def test_cli_bad_file(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2 1 2 2 1 1\n1 0\n")
    assert main(["analyze", str(p)]) == 2


def test_cli_remark_pipeline():
    ex = _cli("examples", "--which", "remark", "--q", "2")
    assert ex.returncode == 0
    assert json.loads(ex.stderr)["field_of_linearity"] == 3
    an = subprocess.run([sys.executable, "-m", "linsets.cli", "analyze"], input=ex.stdout,
                        capture_output=True, text=True)
    assert an.returncode == 0
    payload = json.loads(an.stdout)
    assert payload["field_of_linearity"] == 3
    assert payload["rank"] == 5 and payload["size"] == 9
    assert payload["spectrum"] == {"2": 8, "3": 1}
    assert "unproven_maximal" in payload["flags"]


def test_cli_gen_dual_cyclic(tmp_path, capsys):
    f = tmp_path / "u.txt"
    assert main(["gen", "--q", "3", "--n", "2", "--r", "2", "--m", "2", "--e", "2",
                 "--seed", "1", "--out", str(f)]) == 0
    U = parse_subspace(f.read_text())
    assert U.fq_dim == 4
    assert main(["dual", str(f)]) == 0
    assert parse_subspace(capsys.readouterr().out).fq_dim == 0
    g = tmp_path / "v.txt"
    main(["gen", "--q", "3", "--n", "2", "--r", "2", "--m", "2", "--out", str(g)])
    assert main(["cyclic", str(g), "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("key,value\n") and "checks.inclusion,pass" in out


def test_cli_directions(tmp_path, capsys):
    t = tmp_path / "id.txt"
    t.write_text("".join(f"{x} {x}\n" for x in range(9)))
    assert main(["directions", "--table", str(t), "--p", "3", "--h", "2"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert (res["N"], res["s"], res["case"]) == (1, 9, "case3")
    u = tmp_path / "u.txt"
    u.write_text(format_subspace(remark_example(2)))
    assert main(["directions", str(u)]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["N"] == 9 and res["w"] == 2


def test_cli_sweep_outputs(tmp_path):
    out = tmp_path / "r.json"
    assert main(["sweep", "--config", str(ROOT / "configs" / "default.ini"),
                 "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    jsonschema.validate(rep, SCHEMA)
    assert rep["cases"] == 35 and rep["failures"] == 0


def test_cli_examples_new_report(tmp_path):
    rpt = tmp_path / "r.json"
    sub = tmp_path / "u.txt"
    assert main(["examples", "--which", "new", "--q", "7", "--out", str(sub),
                 "--report", str(rpt)]) == 0
    rep = json.loads(rpt.read_text())
    assert rep["status"] == "pass" and rep["size"] == 17151
    assert parse_subspace(sub.read_text()).fq_dim == 6


def test_outcome_contract():
    with pytest.raises(ValueError):
        VerificationOutcome("x", "fail")
    with pytest.raises(ValueError):
        VerificationOutcome("x", "maybe")
    assert outcome("x", True).to_dict()["status"] == "pass"
