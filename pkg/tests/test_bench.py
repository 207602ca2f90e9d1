"""
Test cases for the Monte-Carlo benchmark harness.
"""
import math
import os

import pandas as pd
import pytest
from pydantic import ValidationError

import services.bench_service as bench_service
from exceptions import InvariantViolation, ScenarioError
from models import AggregateSeries, ExperimentSpec, TrialRecord
from services.bench_service import (
    aggregate_trials,
    complexity_report,
    default_checkpoints,
    emit_csv,
    run_experiment,
    write_experiment,
)
from services.scenario_service import load_experiment

EXPERIMENTS = os.path.join(os.path.dirname(__file__), "..", "experiments")
DATA = os.path.join(os.path.dirname(__file__), "data")


def smoke_spec(**overrides):
    fields = {
        "scenario": "scenario1_empty",
        "planners": ["rrt", "rrg", "rrt_star"],
        "iterations": 200,
        "trials": 1,
        "base_seed": 7,
        "record_stride": 50,
        "record_walltime": False,
        "rrg_query_stride": 1,
    }
    fields.update(overrides)
    return ExperimentSpec(**fields)


def record(planner, costs, walltime=None, trial=0):
    iterations = [10 * (i + 1) for i in range(len(costs))]
    return TrialRecord(
        trial=trial,
        seed=trial,
        planner=planner,
        iterations=iterations,
        costs=costs,
        vertex_counts=iterations,
        obstacle_free_calls=[10] * len(costs),
        calls_per_log_n=[1.0] * len(costs),
        wall_time=walltime or [0.0] * len(costs),
        sample_digest="d",
    )


def read_bytes(paths):
    contents = []
    for path in paths:
        with open(path, "rb") as f:
            contents.append(f.read())
    return contents


def test_bundled_smoke_spec_loads():
    spec = load_experiment(os.path.join(EXPERIMENTS, "smoke.json"))
    assert spec.planners == ["rrt", "rrg", "rrt_star"]
    assert spec.stride_points == [50, 100, 150, 200]


def test_smoke_experiment_writes_three_files(tmp_path):
    """One trial gives aggregate.csv, trial_000.csv and complexity.csv."""
    result = run_experiment(smoke_spec(), workers=1)
    paths = write_experiment(result, str(tmp_path))
    assert [os.path.basename(p) for p in paths] == ["aggregate.csv", "trial_000.csv", "complexity.csv"]

    aggregate = pd.read_csv(paths[0])
    assert list(aggregate.columns) == list(AggregateSeries.COLUMNS)
    assert len(aggregate) == 12
    assert aggregate["iteration"].tolist()[:4] == [50, 100, 150, 200]

    trial = pd.read_csv(paths[1])
    assert list(trial.columns) == ["iteration", "planner", "cost", "vertices", "obstaclefree_calls", "walltime_s"]
    assert len(trial) == 12

    complexity = pd.read_csv(paths[2])
    assert complexity["n"].tolist()[:5] == [10, 20, 50, 100, 200]
    rrt_ratio = complexity[complexity["planner"] == "rrt"]["time_ratio_vs_rrt"]
    assert rrt_ratio.isna().all()


def test_shared_stream_orderings_show_in_aggregate():
    """With exact RRG costs, mean Y(RRG) <= Y(RRT*) <= Y(RRT) at every stride of a single trial."""
    series = run_experiment(smoke_spec(), workers=1).aggregate
    rrt = series.for_planner("rrt")["mean_cost"]
    rrg = series.for_planner("rrg")["mean_cost"]
    star = series.for_planner("rrt_star")["mean_cost"]
    assert (rrg <= star + 1e-9).all()
    assert (star <= rrt + 1e-9).all()


def test_reruns_are_byte_identical(tmp_path):
    first = write_experiment(run_experiment(smoke_spec(), workers=1), str(tmp_path / "a"))
    second = write_experiment(run_experiment(smoke_spec(), workers=1), str(tmp_path / "b"))
    assert read_bytes(first) == read_bytes(second)


def test_aggregate_matches_committed_golden_file(tmp_path):
    """
    x_init lies in the goal, so every cost is 0, and gamma is large enough for
    Near to hold every vertex: O_i is 1 for RRT, 1 + i for RRG and i for RRT*.
    """
    spec = smoke_spec(
        scenario=os.path.join(DATA, "start_in_goal.json"),
        iterations=4,
        record_stride=2,
        trials=2,
        base_seed=0,
        eta=100.0,
        gamma_multiplier=1000.0,
    )
    paths = write_experiment(run_experiment(spec, workers=1), str(tmp_path))
    with open(os.path.join(DATA, "aggregate_start_in_goal.csv"), "rb") as f:
        golden = f.read()
    assert read_bytes(paths[:1]) == [golden]


def test_serial_and_parallel_runs_agree(tmp_path):
    """Trial order, not completion order, decides the output."""
    spec = smoke_spec(trials=3, planners=["rrt", "rrt_star"], iterations=100)
    serial = write_experiment(run_experiment(spec, workers=1), str(tmp_path / "serial"))
    parallel = write_experiment(run_experiment(spec, workers=3), str(tmp_path / "parallel"))
    assert read_bytes(serial) == read_bytes(parallel)
    assert [os.path.basename(p) for p in parallel][1:4] == ["trial_000.csv", "trial_001.csv", "trial_002.csv"]


def test_empty_series_writes_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    emit_csv(AggregateSeries.empty(), str(path))
    assert path.read_text(encoding="utf-8") == ",".join(AggregateSeries.COLUMNS) + "\n"
    assert aggregate_trials([], ["rrt"]).frame.empty


def test_aggregate_statistics():
    """Population variance, NaN variance with an unreached trial, reach rate and wall-time ratio."""
    trials = [
        record("rrt", [math.inf, 3.0], walltime=[1.0, 2.0], trial=0),
        record("rrt", [5.0, 4.0], walltime=[1.0, 2.0], trial=1),
        record("rrt_star", [4.0, 2.0], walltime=[2.0, 6.0], trial=0),
        record("rrt_star", [4.0, 2.0], walltime=[2.0, 6.0], trial=1),
    ]
    frame = aggregate_trials(trials, ["rrt", "rrt_star"]).frame
    rrt = frame[frame["planner"] == "rrt"].reset_index(drop=True)
    star = frame[frame["planner"] == "rrt_star"].reset_index(drop=True)

    assert rrt.loc[0, "mean_cost"] == math.inf
    assert math.isnan(rrt.loc[0, "var_cost"])
    assert rrt.loc[0, "reach_rate"] == 0.5
    assert rrt.loc[1, "mean_cost"] == pytest.approx(3.5)
    assert rrt.loc[1, "var_cost"] == pytest.approx(0.25)
    assert star.loc[1, "var_cost"] == 0.0
    assert star["walltime_ratio_vs_rrt"].tolist() == pytest.approx([2.0, 3.0])
    assert rrt["walltime_ratio_vs_rrt"].tolist() == pytest.approx([1.0, 1.0])


def test_default_checkpoints():
    assert default_checkpoints(1) == [1]
    assert default_checkpoints(200) == [10, 20, 50, 100, 200]
    assert default_checkpoints(1000) == [10, 20, 50, 100, 200, 500, 1000]


def test_complexity_report_uses_requested_points():
    spec = smoke_spec(planners=["rrt", "rrg"], iterations=300, record_stride=100, complexity_points=[100, 300])
    table = complexity_report(spec)
    assert table["n"].tolist() == [100, 300, 100, 300]
    assert table["planner"].tolist() == ["rrt", "rrt", "rrg", "rrg"]
    assert (table["mean_obstaclefree_per_log_n"] > 0).all()


def test_invalid_specs_are_rejected(tmp_path):
    """Stride must divide N; planners are unique incremental planners."""
    with pytest.raises(ValidationError):
        smoke_spec(record_stride=70)
    with pytest.raises(ValidationError):
        smoke_spec(planners=["rrt", "rrt"])
    with pytest.raises(ValidationError):
        smoke_spec(planners=["prm_star"])
    with pytest.raises(ValidationError):
        smoke_spec(trials=0)

    path = tmp_path / "bad.json"
    path.write_text('{"scenario": "scenario1_empty", "planners": ["rrt"], "iterations": 100, '
                    '"trials": 1, "record_stride": 30}', encoding="utf-8")
    with pytest.raises(ScenarioError) as excinfo:
        load_experiment(str(path))
    assert excinfo.value.problems
    with pytest.raises(ScenarioError):
        load_experiment(str(tmp_path / "missing.json"))


def test_unknown_scenario_in_spec():
    with pytest.raises(ScenarioError):
        run_experiment(smoke_spec(scenario="no_such_scenario"), workers=1)


def test_sample_digest_mismatch_is_reported(monkeypatch):
    """Planners of one trial must consume the same samples."""
    real_run = bench_service.run

    def tampered_run(*args, **kwargs):
        result = real_run(*args, **kwargs)
        if result.kind == "rrg":
            result.sample_digest = "0" * 32
        return result

    monkeypatch.setattr(bench_service, "run", tampered_run)
    with pytest.raises(InvariantViolation):
        run_experiment(smoke_spec(iterations=50), workers=1)
