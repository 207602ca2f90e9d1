"""
Batch roadmap whose connection radius shrinks like (log n / n)^(1/d).
"""

import time
from typing import Any, Dict, Optional

from configs.logging_config import get_logger
from exceptions import UsageError
from geometry.cost_model import CostModel
from geometry.world import DEFAULT_MAX_REJECTIONS, SampleStream, WorldModel, sample_free
from retrievers import create_index

from .graph import GraphMode, PlannerGraph
from .near_params import NearParams, prm_radius

logger = get_logger(__name__)


def prm_star_build(
    world: WorldModel,
    cost: CostModel,
    params: NearParams,
    n: int,
    seed: int,
    config: Optional[Dict[str, Any]] = None,
    stream: Optional[SampleStream] = None,
) -> PlannerGraph:
    """
    Build the roadmap from ``n`` free samples plus x_init.

    Every pair closer than ``prm_radius(params, n)`` is joined by a symmetric
    edge pair when the straight segment between them is obstacle-free. The
    counters hold a single entry covering the whole build.

    Args:
        world: Problem instance
        cost: Path-cost functional, used for the logged goal cost
        params: Near constants; ``gamma`` sets the ball volume gamma log n / n
        n: Number of samples, at least 2
        seed: Seed of the sample stream
        config: Planner settings (index backend, rejection cap)
        stream: Stream to draw from; a fresh one seeded with ``seed`` by default

    Returns:
        Graph-mode PlannerGraph rooted at x_init (id 0)
    """
    if n < 2:
        raise UsageError(f"PRM* needs at least 2 samples, got {n}")
    config = config or {}
    log = logger.bind(planner="prm_star", seed=seed)
    stream = stream if stream is not None else SampleStream(seed)
    max_rejections = config.get("max_rejections", DEFAULT_MAX_REJECTIONS)

    started = time.perf_counter()
    index = create_index(
        world.dimension,
        backend=config.get("index_backend", "kd"),
        epsilon=config.get("kd_epsilon", 0.0),
        rebuild_factor=config.get("kd_rebuild_factor", 2.0),
    )
    graph = PlannerGraph(world.x_init, GraphMode.GRAPH, index)
    if world.in_goal(world.x_init):
        graph.goal_ids.append(0)
    for _ in range(n):
        x = sample_free(world, stream, max_rejections)
        graph.add_vertex(x, in_goal=world.in_goal(x))

    radius = prm_radius(params, n)
    calls = 0
    for u, x_u in enumerate(graph.vertices):
        for v in index.near(x_u, radius):
            if v <= u:
                continue
            calls += 1
            if world.obstacle_free_segment(x_u, graph.vertices[v]):
                graph.add_symmetric_edge(u, v)

    graph.record_iteration(calls, time.perf_counter() - started)
    log.info(
        "Roadmap built",
        vertices=len(graph),
        edges=len(graph.edges) // 2,
        radius=radius,
        obstacle_free_calls=calls,
        best_cost=graph.shortest_goal_cost(cost),
    )
    return graph
