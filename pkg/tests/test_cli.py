"""
Test cases for the command-line front end.
"""
import json
import os
import xml.etree.ElementTree as ET

import pytest

from main import main, parse_snapshots
from exceptions import UsageError

SVG = "{http://www.w3.org/2000/svg}"
EXPERIMENTS = os.path.join(os.path.dirname(__file__), "..", "experiments")


def plan(out, *extra):
    return main(["plan", "--scenario", "scenario1_empty", "--iterations", "300", "--seed", "1", "--out", str(out), *extra])


def group(root, group_id):
    return next(g for g in root.iter(f"{SVG}g") if g.get("id") == group_id)


def test_scenarios_list(capsys):
    assert main(["scenarios", "list"]) == 0
    names = capsys.readouterr().out.split()
    assert names == ["scenario1_empty", "scenario2_obstacles_two_homotopy", "scenario3_costfield"]


def test_validate_cost_field_scenario(capsys):
    """The report lists region weights 2 and 0.5 and the default weight 1."""
    assert main(["scenarios", "validate", "scenario3_costfield"]) == 0
    out = capsys.readouterr().out
    assert "scenario3_costfield: OK" in out
    assert "cost=line_integral region_weights=[2, 0.5] default_weight=1" in out
    assert "free_space_measure=100" in out
    assert "gamma_lower_bound=600" in out


def test_validate_malformed_json(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text('{"dimension": 2, "bounds": [[0, 1], [0, 1]', encoding="utf-8")
    assert main(["scenarios", "validate", str(bad)]) == 2
    assert "INVALID" in capsys.readouterr().err


def test_validate_undecodable_file(tmp_path, capsys):
    """Read-side failures are validation errors with exit code 2."""
    bad = tmp_path / "binary.json"
    bad.write_bytes(b"\xff\xfe\x00{")
    assert main(["scenarios", "validate", str(bad)]) == 2
    assert "INVALID" in capsys.readouterr().err


def test_validate_lists_every_problem(tmp_path, capsys):
    bad = tmp_path / "invalid.json"
    bad.write_text(
        json.dumps({"dimension": 2, "bounds": [[0, 1], [0, 1]], "goal": {"type": "box", "bounds": [[0.8, 0.9], [0.8, 0.9]]}}),
        encoding="utf-8",
    )
    assert main(["scenarios", "validate", str(bad)]) == 2
    assert "x_init" in capsys.readouterr().err


def test_plan_writes_json_and_svg(tmp_path, capsys):
    """One polyline per edge, one circle per vertex and one best-path element when found."""
    out = tmp_path / "run"
    assert plan(out) == 0
    assert "rrt_star on scenario1_empty" in capsys.readouterr().out

    with open(f"{out}.json", encoding="utf-8") as f:
        document = json.load(f)
    summary = document["run"]
    assert document["scenario"] == "scenario1_empty"
    assert summary["planner"] == "rrt_star"
    assert summary["edges"] == summary["vertices"] - 1

    root = ET.parse(f"{out}.svg").getroot()
    assert len(list(group(root, "edges").iter(f"{SVG}polyline"))) == summary["edges"]
    assert len(list(group(root, "vertices").iter(f"{SVG}circle"))) == summary["vertices"]
    best_elements = list(group(root, "best-path"))
    assert len(best_elements) == (1 if document["best_path"]["found"] else 0)
    assert len(list(root.iter(f"{SVG}polyline"))) == summary["edges"]


def test_plan_reruns_are_byte_identical(tmp_path):
    assert plan(tmp_path / "a") == 0
    assert plan(tmp_path / "b") == 0
    for suffix in (".json", ".svg"):
        with open(tmp_path / f"a{suffix}", "rb") as a, open(tmp_path / f"b{suffix}", "rb") as b:
            assert a.read() == b.read()


def test_plan_prm_star_and_rrg(tmp_path):
    for planner in ("prm_star", "rrg"):
        out = tmp_path / planner
        assert plan(out, "--planner", planner) == 0
        with open(f"{out}.json", encoding="utf-8") as f:
            assert json.load(f)["run"]["planner"] == planner


def test_plan_snapshots(tmp_path):
    out = tmp_path / "tree"
    assert plan(out, "--planner", "rrt", "--snapshots", "100,250") == 0
    assert (tmp_path / "tree_100.svg").is_file()
    assert (tmp_path / "tree_250.svg").is_file()
    small = ET.parse(tmp_path / "tree_100.svg").getroot()
    assert len(list(group(small, "vertices"))) <= 101


def test_plan_usage_errors(tmp_path):
    """Bad flags and missing scenarios exit with 2."""
    assert main(["plan", "--scenario", "scenario1_empty", "--planner", "rrt_sharp", "--out", str(tmp_path / "x")]) == 2
    assert main(["plan", "--scenario", "no_such_scenario", "--out", str(tmp_path / "x")]) == 2
    assert plan(tmp_path / "x", "--eta", "-1") == 2
    assert main(["plan", "--scenario", "scenario1_empty", "--iterations", "0", "--out", str(tmp_path / "x")]) == 2
    assert plan(tmp_path / "x", "--snapshots", "5,nope") == 2


def test_plan_output_failure_exits_3(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory", encoding="utf-8")
    assert main(["plan", "--scenario", "scenario1_empty", "--iterations", "20", "--out", str(blocker / "run")]) == 3


def test_bench_smoke(tmp_path, capsys):
    assert main(["bench", os.path.join(EXPERIMENTS, "smoke.json"), "--out", str(tmp_path), "--workers", "1"]) == 0
    printed = capsys.readouterr().out.split()
    assert [os.path.basename(p) for p in printed] == ["aggregate.csv", "trial_000.csv", "complexity.csv"]


def test_bench_by_bundled_name(tmp_path):
    assert main(["bench", "smoke", "--out", str(tmp_path), "--workers", "1"]) == 0
    assert (tmp_path / "aggregate.csv").is_file()


def test_bench_missing_spec(tmp_path):
    assert main(["bench", str(tmp_path / "none.json"), "--out", str(tmp_path)]) == 2


def test_parse_snapshots():
    assert parse_snapshots("250, 100,250", 300) == [100, 250]
    assert parse_snapshots(None, 10) == []
    with pytest.raises(UsageError):
        parse_snapshots("0", 10)
