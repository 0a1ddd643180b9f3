import json

import pytest

from museplan.cli import main
from museplan.corpus import save_museum
from conftest import build_museum


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rank_outputs_all_rows(capsys):
    code, out, _ = run(capsys, "rank", "--museum", "orangerie")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "artwork_id,raw_energy,score"
    assert len(lines) == 145
    scores = [float(line.split(",")[2]) for line in lines[1:]]
    assert scores == sorted(scores, reverse=True)
    assert scores[0] == 1.0


def test_plan_table_and_validity(capsys):
    code, out, err = run(capsys, "plan", "--museum", "orangerie", "--interest", "f3",
                         "--artists", "Claude Monet,André Derain", "--tmax", "120")
    assert code == 0, err
    lines = out.strip().splitlines()
    assert lines[0] == "step,room,name,artworks"
    assert lines[1].split(",")[1] == "E"
    assert lines[-1].startswith("#")
    assert "rp=" in lines[-1]


def test_plan_json_format(capsys):
    code, out, _ = run(capsys, "plan", "--tmax", "60", "--interest", "f2",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "optimal"
    assert payload["steps"][0]["room"] == "E"
    assert 0.0 <= payload["relevance_percentage"] <= 100.0
    breakdown = payload["time_breakdown_min"]
    assert breakdown["rooms"] + breakdown["arcs"] + breakdown["artworks"] <= 60.0


def test_plan_deterministic(capsys):
    args = ("plan", "--interest", "f4", "--artists", "Chaïm Soutine",
            "--tmax", "90", "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_plan_zero_budget_is_data_error(capsys):
    code, _, err = run(capsys, "plan", "--tmax", "0")
    assert code == 2
    assert "infeasible" in err


def test_plan_overlapping_lists(capsys):
    code, _, err = run(capsys, "plan", "--tmax", "60",
                       "--include", "monet-matin", "--exclude", "monet-matin")
    assert code == 2
    assert "overlap" in err


def test_plan_unknown_artist_errors(capsys):
    code, _, err = run(capsys, "plan", "--tmax", "60", "--interest", "f3",
                       "--artists", "Nobody")
    assert code == 2
    assert "empty preference" in err


def test_usage_errors(capsys):
    assert run(capsys, "plan")[0] == 1            # missing --tmax
    assert run(capsys, "nonsense")[0] == 1        # unknown command
    assert run(capsys, "plan", "--tmax", "60", "--interest", "f9")[0] == 1


def test_missing_dataset(capsys):
    code, _, err = run(capsys, "rank", "--museum", "/does/not/exist.json")
    assert code == 2
    assert "no bundled dataset" in err


def test_simulate_table_and_determinism(capsys, tmp_path):
    museum = build_museum(
        [("E", "entrance", 0), ("X", "exit", 0), ("v1", "room", 1), ("v2", "room", 1)],
        [("E", "v1", 0.5), ("v1", "v2", 0.5), ("v2", "X", 0.5)],
        [("a1", "alice", "v1", 2.0), ("a2", "bob", "v2", 2.0),
         ("a3", "alice", "v2", 2.0)])
    path = tmp_path / "mini.json"
    save_museum(*museum, path)
    args = ("simulate", "--museum", str(path), "--seed", "7",
            "--durations", "4:12:2", "--combo-sizes", "1,2", "--combos-per-size", "3")
    code1, out1, err1 = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0, err1
    assert out1 == out2
    lines = out1.strip().splitlines()
    assert lines[0] == "kind,duration_min,mean_rp,n"
    assert len(lines) == 1 + 4 * 5


def test_simulate_writes_file(capsys, tmp_path):
    out_path = tmp_path / "table.csv"
    code, out, _ = run(capsys, "simulate", "--durations", "300:330:15",
                       "--kinds", "f1", "--out", str(out_path))
    assert code == 0
    assert out == ""
    assert out_path.read_text().startswith("kind,duration_min")


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "--museum", "orangerie")
    assert code == 0
    assert "OK" in out


def test_validate_reports_violations(capsys, tmp_path):
    bad = {
        "meta": {"name": "bad"},
        "vertices": [{"id": "E", "kind": "entrance", "room_time": 0},
                     {"id": "X", "kind": "exit", "room_time": 0},
                     {"id": "v1", "kind": "room", "room_time": 1}],
        "arcs": [{"from": "E", "to": "v1", "arc_time": 0.5}],
        "artworks": [],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, err = run(capsys, "validate", "--museum", str(path))
    assert code == 2
    assert "INVALID" in out
    assert "no-exit-path" in err


def test_plan_solution_out(capsys, tmp_path):
    out = tmp_path / "solution.json"
    code, _, _ = run(capsys, "plan", "--tmax", "45", "--solution-out", str(out))
    assert code == 0
    report = json.loads(out.read_text())
    assert report["status"] == "optimal"
    assert any(k.startswith("y[") for k in report["variables"])
