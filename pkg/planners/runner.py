"""
Algorithm body: draw a free sample, extend, record. Also the planner factory.
"""

from enum import Enum
from typing import Any, Callable, Dict, Iterable, Optional, Type

from configs.logging_config import get_logger
from exceptions import UsageError
from geometry.cost_model import CostModel
from geometry.world import DEFAULT_MAX_REJECTIONS, SampleStream, WorldModel, sample_free
from models import RunResult

from .base_planner import BasePlanner
from .graph import PlannerGraph
from .near_params import NearParams
from .prm_star import prm_star_build
from .rrg_planner import RRGPlanner
from .rrt_planner import RRTPlanner
from .rrt_star_planner import RRTStarPlanner

logger = get_logger(__name__)

SnapshotCallback = Callable[[int, PlannerGraph], None]


class PlannerKind(str, Enum):
    RRT = "rrt"
    RRG = "rrg"
    RRT_STAR = "rrt_star"
    PRM_STAR = "prm_star"

    @property
    def incremental(self) -> bool:
        return self is not PlannerKind.PRM_STAR

    @classmethod
    def parse(cls, name: str) -> "PlannerKind":
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise UsageError(f"Unknown planner '{name}' (choose from {choices})") from None


PLANNER_CLASSES: Dict[PlannerKind, Type[BasePlanner]] = {
    PlannerKind.RRT: RRTPlanner,
    PlannerKind.RRG: RRGPlanner,
    PlannerKind.RRT_STAR: RRTStarPlanner,
}


def create_planner(
    kind: PlannerKind,
    world: WorldModel,
    cost: CostModel,
    params: NearParams,
    config: Optional[Dict[str, Any]] = None,
    seed: Optional[int] = None,
) -> BasePlanner:
    """Instantiate an incremental planner."""
    kind = PlannerKind(kind)
    if not kind.incremental:
        raise UsageError(f"{kind.value} is built in one batch; use prm_star_build")
    return PLANNER_CLASSES[kind](world, cost, params, config=config, seed=seed)


def run(
    world: WorldModel,
    cost: CostModel,
    kind: PlannerKind,
    params: NearParams,
    iterations: int,
    seed: int,
    config: Optional[Dict[str, Any]] = None,
    snapshots: Iterable[int] = (),
    on_snapshot: Optional[SnapshotCallback] = None,
) -> RunResult:
    """
    Run a planner for ``iterations`` iterations on the stream seeded by ``seed``.

    The result depends only on the arguments. For PRM* ``iterations`` is the
    sample count and the cost series has a single entry.

    Args:
        world: Problem instance
        cost: Path-cost functional
        kind: Planner to run
        params: Steering bound and Near constants
        iterations: Iteration count N, at least 1
        seed: Sample-stream seed
        config: Planner settings (see PlannerSettings)
        snapshots: Iterations after which ``on_snapshot`` sees the graph
        on_snapshot: Callback receiving (iteration, graph)

    Returns:
        RunResult with the final graph, the best-cost series and the stream digest
    """
    kind = PlannerKind(kind)
    if iterations < 1:
        raise UsageError(f"Iteration count must be at least 1, got {iterations}")
    config = config or {}
    stream = SampleStream(seed)

    if not kind.incremental:
        graph = prm_star_build(world, cost, params, iterations, seed, config, stream=stream)
        return RunResult(
            kind=kind.value,
            seed=seed,
            iterations=iterations,
            graph=graph,
            best_costs=[graph.shortest_goal_cost(cost)],
            sample_digest=stream.hexdigest(),
            metrics={"obstacle_free_calls": sum(graph.obstacle_free_calls)},
        )

    planner = create_planner(kind, world, cost, params, config=config, seed=seed)
    max_rejections = config.get("max_rejections", DEFAULT_MAX_REJECTIONS)
    snapshot_at = set(snapshots) if on_snapshot is not None else set()
    planner.logger.info("Planner run started", iterations=iterations, eta=params.eta, gamma=params.gamma)

    for i in range(1, iterations + 1):
        planner.step(sample_free(world, stream, max_rejections))
        if i in snapshot_at:
            on_snapshot(i, planner.graph)
    planner.close()

    return RunResult(
        kind=kind.value,
        seed=seed,
        iterations=iterations,
        graph=planner.graph,
        best_costs=planner.best_costs,
        sample_digest=stream.hexdigest(),
        metrics=dict(planner.metrics),
    )
