"""
Monte-Carlo benchmark harness.

Every trial runs all listed planners on the same sample sequence (seed
``base_seed + trial``), one after another in the same process. Trials run in
worker processes and are gathered in trial order, so the aggregates do not
depend on the worker count.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from configs.logging_config import get_logger
from configs.settings import get_settings
from exceptions import InvariantViolation
from models import AggregateSeries, ExperimentResult, ExperimentSpec, RunResult, TrialRecord
from planners.near_params import NearParams
from planners.runner import PlannerKind, run

from .oracle_service import oracle_optimal_cost
from .scenario_service import load_scenario
from .utils import FileUtils, PerformanceTimer

logger = get_logger(__name__)

FLOAT_FORMAT = "%.9g"
COMPLEXITY_COLUMNS = (
    "n",
    "planner",
    "mean_obstaclefree_per_log_n",
    "mean_walltime_s",
    "time_ratio_vs_rrt",
)


@dataclass(frozen=True)
class TrialTask:
    """Everything a worker process needs to run one trial."""

    scenario_path: str
    trial: int
    seed: int
    planners: Sequence[str]
    iterations: int
    record_stride: int
    checkpoints: Sequence[int]
    params: NearParams
    planner_config: Dict[str, Any]
    record_walltime: bool


def default_checkpoints(iterations: int) -> List[int]:
    """Logarithmically spaced iteration counts 1, 2, 5 x 10^k within [10, N], plus N."""
    points = set()
    k = 1
    while 10 ** k <= iterations:
        for m in (1, 2, 5):
            if m * 10 ** k <= iterations:
                points.add(m * 10 ** k)
        k += 1
    points.add(iterations)
    return sorted(points)


def _window_calls_per_log_n(cumulative: np.ndarray, vertices: int, end: int, window: int) -> float:
    """Mean ObstacleFree calls per iteration over (end - window, end], over log of the vertex count."""
    start = end - window
    calls = cumulative[end - 1] - (cumulative[start - 1] if start > 0 else 0)
    if vertices < 2:
        return math.nan
    return float(calls) / window / math.log(vertices)


def summarise_run(result: RunResult, task: TrialTask) -> TrialRecord:
    """Reduce a run to its stride and checkpoint samples."""
    cumulative = np.cumsum(np.asarray(result.obstacle_free_calls, dtype=np.int64))
    stride = task.record_stride
    iterations = list(range(stride, task.iterations + 1, stride))

    def walltime(i: int) -> float:
        return float(result.wall_time[i - 1]) if task.record_walltime else 0.0

    window_calls = [
        int(cumulative[i - 1] - (cumulative[i - 1 - stride] if i > stride else 0))
        for i in iterations
    ]
    return TrialRecord(
        trial=task.trial,
        seed=task.seed,
        planner=result.kind,
        iterations=iterations,
        costs=[float(result.best_costs[i - 1]) for i in iterations],
        vertex_counts=[int(result.vertex_counts[i - 1]) for i in iterations],
        obstacle_free_calls=window_calls,
        calls_per_log_n=[
            _window_calls_per_log_n(cumulative, result.vertex_counts[i - 1], i, stride)
            for i in iterations
        ],
        wall_time=[walltime(i) for i in iterations],
        sample_digest=result.sample_digest,
        checkpoints=list(task.checkpoints),
        checkpoint_calls_per_log_n=[
            _window_calls_per_log_n(cumulative, result.vertex_counts[n - 1], n, max(1, n // 10))
            for n in task.checkpoints
        ],
        checkpoint_wall_time=[walltime(n) for n in task.checkpoints],
    )


def run_trial(task: TrialTask) -> List[TrialRecord]:
    """
    Run every planner of one trial on the shared sample sequence.

    Raises:
        InvariantViolation: Two planners consumed different sample sequences
    """
    scenario = load_scenario(task.scenario_path)
    records = []
    for name in task.planners:
        result = run(
            scenario.world,
            scenario.cost,
            PlannerKind(name),
            task.params,
            task.iterations,
            task.seed,
            config=task.planner_config,
        )
        records.append(summarise_run(result, task))

    digests = {record.planner: record.sample_digest for record in records}
    if len(set(digests.values())) > 1:
        raise InvariantViolation(f"Trial {task.trial} planners consumed different samples: {digests}")
    return records


def _trial_tasks(spec: ExperimentSpec, scenario_path: str, params: NearParams) -> List[TrialTask]:
    planner_config = get_settings().get_planner_config()
    if spec.rrg_query_stride is not None:
        planner_config["rrg_query_stride"] = spec.rrg_query_stride
    checkpoints = spec.complexity_points or default_checkpoints(spec.iterations)
    return [
        TrialTask(
            scenario_path=scenario_path,
            trial=t,
            seed=spec.base_seed + t,
            planners=tuple(spec.planners),
            iterations=spec.iterations,
            record_stride=spec.record_stride,
            checkpoints=tuple(sorted(set(checkpoints))),
            params=params,
            planner_config=planner_config,
            record_walltime=spec.record_walltime,
        )
        for t in range(spec.trials)
    ]


def run_experiment(
    spec: ExperimentSpec,
    workers: Optional[int] = None,
    base_dir: Optional[str] = None,
) -> ExperimentResult:
    """
    Run all trials of an experiment and aggregate them.

    Args:
        spec: Experiment definition
        workers: Worker processes; defaults to settings.worker_count()
        base_dir: Directory the scenario reference is resolved against first

    Returns:
        ExperimentResult with the aggregate series, raw trial records and
        complexity table
    """
    scenario = load_scenario(spec.scenario, base_dir=base_dir)
    params = scenario.near_params(eta=spec.eta, gamma_multiplier=spec.gamma_multiplier)
    tasks = _trial_tasks(spec, os.path.abspath(scenario.path), params)
    workers = workers or get_settings().worker_count()
    workers = max(1, min(workers, len(tasks)))
    log = logger.bind(scenario=scenario.name, trials=spec.trials, workers=workers)
    log.info("Experiment started", planners=list(spec.planners), iterations=spec.iterations)

    with PerformanceTimer("run_experiment", scenario=scenario.name):
        if workers == 1:
            per_trial = [run_trial(task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                per_trial = list(executor.map(run_trial, tasks))

    trials = [record for records in per_trial for record in records]
    oracle_cost = None
    if spec.oracle_resolution is not None and scenario.world.dimension == 2:
        oracle_cost = oracle_optimal_cost(scenario.world, scenario.cost, spec.oracle_resolution)

    result = ExperimentResult(
        aggregate=aggregate_trials(trials, spec.planners),
        trials=trials,
        complexity=complexity_table(trials, spec.planners),
        oracle_cost=oracle_cost,
    )
    log.info("Experiment finished", oracle_cost=oracle_cost)
    return result


def _ratio_to_rrt(frame: pd.DataFrame, key: str, value: str) -> pd.Series:
    """Per-row ratio of ``value`` to the RRT row of the same trial and ``key``."""
    rrt = frame.loc[frame["planner"] == PlannerKind.RRT.value, ["trial", key, value]]
    merged = frame[["trial", key]].merge(
        rrt.rename(columns={value: "_rrt"}), on=["trial", key], how="left"
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = frame[value].to_numpy(dtype=float) / merged["_rrt"].to_numpy(dtype=float)
    ratio[~np.isfinite(ratio)] = np.nan
    return pd.Series(ratio, index=frame.index)


def aggregate_trials(trials: Sequence[TrialRecord], planners: Sequence[str]) -> AggregateSeries:
    """
    Mean and population variance of Y across trials at each stride, plus the
    mean ObstacleFree calls per iteration over log N_i, mean wall-time, the
    fraction of trials holding a goal path and the wall-time ratio against RRT.
    """
    if not trials:
        return AggregateSeries.empty()

    frame = pd.concat(
        [
            pd.DataFrame(
                {
                    "trial": record.trial,
                    "planner": record.planner,
                    "iteration": record.iterations,
                    "cost": record.costs,
                    "per_log_n": record.calls_per_log_n,
                    "walltime": record.wall_time,
                }
            )
            for record in trials
        ],
        ignore_index=True,
    )
    frame["reached"] = np.isfinite(frame["cost"]).astype(float)
    frame["ratio"] = _ratio_to_rrt(frame, "iteration", "walltime")

    rows = []
    for planner in planners:
        subset = frame[frame["planner"] == planner]
        for iteration, group in subset.groupby("iteration", sort=True):
            costs = group["cost"].to_numpy(dtype=float)
            rows.append(
                {
                    "iteration": int(iteration),
                    "planner": planner,
                    "mean_cost": float(np.mean(costs)),
                    "var_cost": _population_variance(costs),
                    "mean_obstaclefree_per_log_n": _nanmean(group["per_log_n"]),
                    "mean_walltime_s": float(group["walltime"].mean()),
                    "reach_rate": float(group["reached"].mean()),
                    "walltime_ratio_vs_rrt": _nanmean(group["ratio"]),
                }
            )
    return AggregateSeries(frame=pd.DataFrame(rows, columns=list(AggregateSeries.COLUMNS)))


def _population_variance(values: np.ndarray) -> float:
    # An infinite sample makes the spread undefined rather than zero.
    if not np.all(np.isfinite(values)):
        return math.nan
    return float(np.var(values, ddof=0))


def _nanmean(series: pd.Series) -> float:
    values = series.to_numpy(dtype=float)
    finite = values[~np.isnan(values)]
    return float(finite.mean()) if finite.size else math.nan


def complexity_table(trials: Sequence[TrialRecord], planners: Sequence[str]) -> pd.DataFrame:
    """Checkpoint rows of (n, planner, mean O_i / log N_i, mean wall-time, time ratio against RRT)."""
    if not trials:
        return pd.DataFrame(columns=list(COMPLEXITY_COLUMNS))
    if PlannerKind.RRT.value not in planners:
        logger.warning("No RRT run in the experiment; time ratios are left empty")

    frame = pd.concat(
        [
            pd.DataFrame(
                {
                    "trial": record.trial,
                    "planner": record.planner,
                    "n": record.checkpoints,
                    "per_log_n": record.checkpoint_calls_per_log_n,
                    "walltime": record.checkpoint_wall_time,
                }
            )
            for record in trials
        ],
        ignore_index=True,
    )
    frame["ratio"] = _ratio_to_rrt(frame, "n", "walltime")

    rows = []
    for planner in planners:
        subset = frame[frame["planner"] == planner]
        for n, group in subset.groupby("n", sort=True):
            rows.append(
                {
                    "n": int(n),
                    "planner": planner,
                    "mean_obstaclefree_per_log_n": _nanmean(group["per_log_n"]),
                    "mean_walltime_s": float(group["walltime"].mean()),
                    "time_ratio_vs_rrt": _nanmean(group["ratio"]),
                }
            )
    return pd.DataFrame(rows, columns=list(COMPLEXITY_COLUMNS))


def complexity_report(spec: ExperimentSpec, trials: Optional[Sequence[TrialRecord]] = None) -> pd.DataFrame:
    """
    ObstacleFree growth and wall-time ratios at logarithmically spaced n.

    Args:
        spec: Experiment definition
        trials: Records of an experiment already run for ``spec``; run it when omitted
    """
    if trials is None:
        return run_experiment(spec).complexity
    return complexity_table(trials, spec.planners)


def emit_csv(series: Any, path: str) -> None:
    """
    Write a table as UTF-8 CSV with LF line endings and 9 significant digits.

    Args:
        series: AggregateSeries or DataFrame
        path: Output file

    Raises:
        OutputError: The file cannot be written
    """
    frame = series.frame if isinstance(series, AggregateSeries) else series
    text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    FileUtils.write_text_file(path, text)


def write_experiment(result: ExperimentResult, out_dir: str) -> List[str]:
    """
    Write aggregate.csv, one trial_XXX.csv per trial and complexity.csv.

    Returns:
        Paths written, in order
    """
    paths = [os.path.join(out_dir, "aggregate.csv")]
    emit_csv(result.aggregate, paths[0])

    by_trial: Dict[int, List[TrialRecord]] = {}
    for record in result.trials:
        by_trial.setdefault(record.trial, []).append(record)
    for trial, records in sorted(by_trial.items()):
        path = os.path.join(out_dir, f"trial_{trial:03d}.csv")
        emit_csv(pd.concat([r.to_frame() for r in records], ignore_index=True), path)
        paths.append(path)

    paths.append(os.path.join(out_dir, "complexity.csv"))
    emit_csv(result.complexity, paths[-1])
    logger.info("Experiment written", out_dir=out_dir, files=len(paths))
    return paths
