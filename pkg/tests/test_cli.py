import json
import subprocess
import sys

import pytest

from bcs.cli import main

from goldens import TB5_ROWS, TB8_EVEN_LIMIT, TB8_ODD_LIMIT, ZUGZWANG_RULESET


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_csv_golden(capsys):
    code, out, _ = run_cli(capsys, "solve", "--tb", "5", "--x-max", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,p,marker,value"
    data = lines[1:]
    assert len(data) == 18
    expected = [
        f"{x},{p},L,{TB5_ROWS[x][p]}" for x in range(3) for p in range(6)
    ]
    assert data == expected


def test_solve_table_contains_worked_cell(capsys):
    code, out, _ = run_cli(capsys, "solve", "--tb", "5", "--x-max", "2")
    assert code == 0
    # budgets rendered richest first, matching the published tables
    assert out.splitlines()[0].split() == ["x", "\\", "p^", "5", "4", "3", "2", "1", "0"]
    assert out.splitlines()[3].split() == ["2", "2", "2", "0", "0", "0", "-2"]


def test_solve_tb0(capsys):
    code, out, _ = run_cli(capsys, "solve", "--tb", "0", "--x-max", "3", "--format", "csv")
    values = [line.split(",")[-1] for line in out.strip().splitlines()[1:]]
    assert values == ["0", "1", "0", "1"]


def test_solve_json_schema(capsys):
    code, out, _ = run_cli(capsys, "solve", "--tb", "9", "--x-max", "9", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["tb"] == 9
    row9 = payload["rows"][9]
    assert row9["x"] == 9
    assert row9["values"][6] == 1


def test_limits_tb8(capsys):
    code, out, _ = run_cli(capsys, "limits", "--tb", "8", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert tuple(payload["even"]) == TB8_EVEN_LIMIT
    assert tuple(payload["odd"]) == TB8_ODD_LIMIT
    assert payload["x_star"] <= payload["bound"] + 2 == 19


def test_limits_tb0_text(capsys):
    code, out, _ = run_cli(capsys, "limits", "--tb", "0")
    assert code == 0
    assert "x_star = 0" in out
    lines = out.splitlines()
    assert lines[2].split() == ["x", "even", "0"]
    assert lines[3].split() == ["x", "odd", "1"]


def test_limits_convergence_failure_exit_code(capsys, monkeypatch):
    from bcs.solver import ConvergenceBoundExceeded

    def explode(tb):
        raise ConvergenceBoundExceeded("rows still differ")

    monkeypatch.setattr("bcs.cli.solver.limit_rows", explode)
    code = main(["limits", "--tb", "3"])
    captured = capsys.readouterr()
    assert code == 3
    assert "rows still differ" in captured.err


def test_automaton_matches_limits_tb8(capsys):
    code, auto_out, _ = run_cli(capsys, "automaton", "--tb", "8", "--format", "json")
    assert code == 0
    auto = json.loads(auto_out)["tables"]["alpha"]
    code, lim_out, _ = run_cli(capsys, "limits", "--tb", "8", "--format", "json")
    limits = json.loads(lim_out)
    assert auto["even"] == limits["even"]
    assert auto["odd"] == limits["odd"]


def test_automaton_tb0(capsys):
    code, out, _ = run_cli(capsys, "automaton", "--tb", "0", "--format", "json")
    tables = json.loads(out)["tables"]["alpha"]
    assert tables == {"even": [0], "odd": [1]}


def test_check_passes(capsys):
    code, out, _ = run_cli(capsys, "check", "--tb", "5", "--x-max", "30")
    assert code == 0
    assert out.count("pass") == 10
    assert "FAIL" not in out


def test_check_with_oracle(capsys):
    code, out, _ = run_cli(
        capsys, "check", "--tb", "8", "--x-max", "40", "--with-oracle"
    )
    assert code == 0
    assert "pass oracle_equivalence" in out


def test_check_ruleset_violation_exits_nonzero(tmp_path, capsys):
    path = tmp_path / "zugzwang.game"
    path.write_text(ZUGZWANG_RULESET)
    code, out, _ = run_cli(capsys, "check", "--ruleset", str(path))
    assert code == 1
    assert "property B" in out

    code, out, _ = run_cli(
        capsys, "check", "--ruleset", str(path), "--format", "json"
    )
    payload = json.loads(out)
    assert not payload["holds"]
    assert payload["violations"] == [
        {
            "property": "B",
            "position": "x1",
            "budgets": [1],
            "lhs": 0,
            "rhs": 1,
            "detail": "",
        }
    ]


def test_check_round_trip_from_json(tmp_path, capsys):
    table_path = tmp_path / "table.json"
    code, out, _ = run_cli(
        capsys, "solve", "--tb", "6", "--x-max", "20", "--format", "json",
        "--out", str(table_path),
    )
    assert code == 0
    code, direct, _ = run_cli(
        capsys, "check", "--tb", "6", "--x-max", "20", "--format", "json"
    )
    assert code == 0
    code, reloaded, _ = run_cli(
        capsys, "check", "--from-json", str(table_path), "--format", "json"
    )
    assert code == 0
    assert json.loads(direct) == json.loads(reloaded)


def test_conjecture_text(capsys):
    code, out, _ = run_cli(capsys, "conjecture", "--tb", "9")
    assert code == 0
    assert "update rule on solver limits: holds" in out
    assert "beta_truncated: exact" in out
    assert "beta_euclidean: none" in out


def test_bids_dot_golden(capsys):
    code, out, _ = run_cli(
        capsys, "bids", "--tb", "5", "--kind", "tie", "--bid", "0", "--format", "dot"
    )
    assert code == 0
    arrows = [line for line in out.splitlines() if "->" in line]
    assert len(arrows) == 6  # three bidirectional pairs
    assert '  n0 -> n5 [label="0T"];' in arrows


def test_bids_holder_win_reduced(capsys):
    code, out, _ = run_cli(
        capsys, "bids", "--tb", "5", "--kind", "holder-win", "--bid", "3", "--reduced"
    )
    arrows = [line for line in out.splitlines() if "->" in line]
    assert arrows == ['  n3 -> n0 [label="3W"];']


def test_bids_tie_infeasible_is_empty(capsys):
    code, out, _ = run_cli(capsys, "bids", "--tb", "1", "--kind", "tie", "--bid", "1")
    assert code == 0
    assert "->" not in out


def test_deterministic_output(capsys):
    _, first, _ = run_cli(capsys, "solve", "--tb", "7", "--x-max", "12", "--format", "csv")
    _, second, _ = run_cli(capsys, "solve", "--tb", "7", "--x-max", "12", "--format", "csv")
    assert first == second


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--tb", "5"])  # missing --x-max
    assert exc.value.code == 2


def test_play_scripted(capsys, monkeypatch):
    feed = iter(["1", "0"])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(feed))
    code = main(
        ["play", "--tb", "5", "--x", "2", "--p", "1", "--marker", "L",
         "--engine-side", "L"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "bids: L=1 R=1" in out  # engine opens with the one-dollar tie
    assert "final score +0" in out


def test_play_transcript_replays(capsys, monkeypatch):
    import re

    from bcs.core import Side, make_position
    from bcs.oracle import replay

    feed = iter(["2", "0", "1"])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(feed))
    code = main(
        ["play", "--tb", "9", "--x", "3", "--p", "4", "--marker", "R",
         "--engine-side", "R"]
    )
    out = capsys.readouterr().out
    assert code == 0
    bids = [
        (int(l), int(r)) for l, r in re.findall(r"bids: L=(\d+) R=(\d+)", out)
    ]
    assert len(bids) == 3
    trace = replay(9, make_position(9, 3, 4, Side.RIGHT), bids)
    printed = int(re.search(r"final score ([+-]\d+)", out).group(1))
    assert trace.utility == printed


def test_play_reprompts_and_aborts(capsys, monkeypatch):
    feed = iter(["7", "nonsense"])

    def fake_input(prompt=""):
        try:
            return next(feed)
        except StopIteration:
            raise EOFError

    monkeypatch.setattr("builtins.input", fake_input)
    code = main(
        ["play", "--tb", "5", "--x", "2", "--p", "1", "--marker", "L",
         "--engine-side", "L"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "aborted" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bcs", "solve", "--tb", "1", "--x-max", "1",
         "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "x,p,marker,value"
