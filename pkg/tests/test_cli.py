import json
from importlib import resources

import pytest

from serrecat.cli import main
from serrecat.errors import ParseError, ValidationError
from serrecat.workspace import Report, format_workspace, parse_workspace, reports_json, run_tasks


def fixture_text():
    return resources.files("serrecat").joinpath("fixtures/a2_example.sw").read_text()


def test_minimal_workspace():
    ws = parse_workspace('version 1\nobject X finab {"invariants": [2, 4]}\n')
    assert list(ws.objects) == ["X"] and ws.objects["X"].order == 8
    assert run_tasks(ws) == []


def test_duplicate_and_forward_references():
    with pytest.raises(ValidationError, match="'X'"):
        parse_workspace('object X finab {"invariants": [2]}\nobject X finab {"invariants": [3]}\n')
    with pytest.raises(ValidationError, match="undeclared"):
        parse_workspace('task t compute hom X Y\nobject X finab {"invariants": [2]}\n')
    with pytest.raises(ValidationError, match="group table"):
        parse_workspace('group G {"table": [[0, 1], [0, 1]]}\n')


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as exc:
        parse_workspace('version 1\nobject X finab {"invariants": [2,}\n')
    assert exc.value.line == 2 and exc.value.column > 15
    with pytest.raises(ParseError) as exc:
        parse_workspace("frobnicate X\n")
    assert (exc.value.line, exc.value.column) == (1, 1)
    with pytest.raises(ParseError):
        parse_workspace('object X finab {"invariants": [2]}\ntask t compute nothing X X\n')


def test_fixture_runs_end_to_end():
    ws = parse_workspace(fixture_text())
    reports = run_tasks(ws)
    assert [r.task for r in reports] == [t.id for t in ws.tasks]
    assert all(r.passed for r in reports)
    by_id = {r.task: r for r in reports}
    assert by_id["ext1"].result["order"] == 2
    assert by_id["facts"].result["passed"]


def test_fmt_is_idempotent():
    once = format_workspace(parse_workspace(fixture_text()))
    assert format_workspace(parse_workspace(once)) == once


def test_task_examples():
    ws = parse_workspace(
        'object X finab {"invariants": [4]}\nobject Y finab {"invariants": [6]}\n'
        "task a compute hom X Y\ntask b verify ext2-k field=F_4 N=16\n")
    a, b = run_tasks(ws)
    assert a.result["invariants"] == [2]
    assert b.result["coker_F_minus_id"]["dim_k"] == 1 and b.passed


def test_error_isolation():
    ws = parse_workspace(
        'object X finab {"invariants": [4]}\n'
        "task bad compute qhom X X predicate=nonsense\ntask good compute hom X X\n")
    bad, good = run_tasks(ws)
    assert bad.status == "error" and "message" in bad.result
    assert good.passed and good.result["order"] == 4


def test_report_round_trip():
    ws = parse_workspace(fixture_text())
    for r in run_tasks(ws):
        data = json.loads(json.dumps(r.to_json(timing=True)))
        assert Report.from_json(data).to_json(timing=True) == data


def test_determinism():
    ws = parse_workspace(fixture_text())
    assert reports_json(run_tasks(ws, seed=3)) == reports_json(run_tasks(ws, seed=3))


def test_cli_exit_codes(tmp_path, capsys):
    path = tmp_path / "a2.sw"
    path.write_text(fixture_text())
    assert main(["run", str(path), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out) == 6 and "wall_time" not in out[0]
    bad = tmp_path / "bad.sw"
    bad.write_text("object X finab {oops}\n")
    assert main(["run", str(bad)]) == 2
    assert main(["verify", "nonsense"]) == 2
    assert main(["compute", "hom", "finab:4", "finab:6"]) == 0
    assert "[2]" in capsys.readouterr().out
    small = tmp_path / "thm.sw"
    small.write_text("task t verify thm-hd S=2 max_order=8 bound=3\n")
    assert main(["run", str(small)]) == 0
    # the span of S1 lacks the lifting property, so the verdict cannot be reached
    failing = tmp_path / "fail.sw"
    failing.write_text('object S1 simple {"field": "F_2", "vertex": 1}\n'
                       'task t verify hdmax category=a2:F_2 predicate=span:{S1}\n')
    capsys.readouterr()
    assert main(["run", str(failing), "--json"]) == 1
    (rep,) = json.loads(capsys.readouterr().out)
    assert rep["result"]["error"] == "LiftingPropertyUnverified"
    assert main(["fmt", str(path)]) == 0


def test_cli_inline_literals(capsys):
    assert main(["compute", "qhom", "S1@F_3", "P1@F_3", "span:{S2@F_3}", "--json"]) == 0
    (rep,) = json.loads(capsys.readouterr().out)
    assert rep["result"]["order"] == 3
    assert main(["compute", "locext", "finab:6", "finab:6", "S=2", "degree=1", "--json"]) == 0
    (rep,) = json.loads(capsys.readouterr().out)
    assert rep["result"]["invariants"] == [3]
    assert main(["verify", "ext2-k", "field=F_9", "--truncation", "12", "--json"]) == 0
    (rep,) = json.loads(capsys.readouterr().out)
    assert rep["provenance"]["N"] == 12
