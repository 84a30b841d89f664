import json
import subprocess
import sys

import pytest

from viewprop import cli, models


def run(capsys, *args):
    code = cli.main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_queens_json_record(capsys):
    code, out, _ = run(capsys, "--model", "queens", "--size", "8", "--mode", "views", "--all", "--stats", "json")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1
    rec = json.loads(lines[0])
    assert rec["solutions"] == 92
    assert set(rec) == {"model", "size", "mode", "solutions", "failures", "propagations", "nodes", "wall_ms"}


def test_golomb_optimize_reports_length(capsys):
    code, out, _ = run(capsys, "--model", "golomb", "--size", "6", "--optimize", "--stats", "json")
    assert code == 0 and json.loads(out)["objective"] == 17


def test_text_stats(capsys):
    code, out, _ = run(capsys, "--model", "queens", "--size", "5", "--mode", "decomposed")
    header, row = out.strip().splitlines()
    assert code == 0 and header.split()[:4] == ["model", "size", "mode", "solutions"]
    assert row.split()[:4] == ["queens", "5", "decomposed", "10"]


@pytest.mark.parametrize("args", [
    ["--model", "nosuch"],
    ["--model", "alpha", "--size", "3"],
    ["--model", "queens", "--optimize"],
    ["--bogus"],
    ["--model", "queens", "--mode", "sideways"],
    [],
])
def test_usage_and_model_errors_exit_1(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == 1 and err.startswith("viewprop:")


def test_invalid_solution_exits_2(capsys, monkeypatch):
    real = models.build

    def broken(*a, **kw):
        m = real(*a, **kw)
        m.check = lambda sol: False
        return m

    monkeypatch.setattr(models, "build", broken)
    code, _, err = run(capsys, "--model", "queens", "--size", "4")
    assert code == 2 and "fail validation" in err


def test_seed_check_outcome_sets_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "seed_check", lambda: False)
    assert run(capsys, "--seed-check", "--model", "queens", "--size", "4")[0] == 2
    monkeypatch.setattr(cli, "seed_check", lambda: True)
    assert run(capsys, "--seed-check")[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "viewprop", "--model", "queens", "--size", "6", "--stats", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["solutions"] == 4
