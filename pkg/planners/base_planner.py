"""
Base planner module providing the iteration body shared by every incremental planner.
"""

import math
import time
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Dict, List, Optional, Tuple

from configs.logging_config import get_logger
from geometry.cost_model import CostModel
from geometry.primitives import Point, steer
from geometry.world import WorldModel
from retrievers import create_index

from .graph import GraphMode, PlannerGraph, ROOT_ID
from .near_params import NearParams

logger = get_logger(__name__)


class BasePlanner(ABC):
    """
    Abstract base class for the incremental planners.

    One iteration takes a free sample, hands it to ``extend`` and records the
    vertex count, the ObstacleFree calls made and the best goal cost so far.
    """

    kind: ClassVar[str] = "base"
    mode: ClassVar[GraphMode] = GraphMode.TREE

    def __init__(
        self,
        world: WorldModel,
        cost: CostModel,
        params: NearParams,
        config: Optional[Dict[str, Any]] = None,
        seed: Optional[int] = None,
    ):
        """
        Initialize the planner with a single-vertex graph at x_init.

        Args:
            world: Problem instance
            cost: Path-cost functional
            params: Steering bound and Near constants
            config: Planner settings (see PlannerSettings)
            seed: Seed of the sample stream driving this planner, for logging
        """
        self.world = world
        self.cost = cost
        self.params = params
        self.config = config or {}
        self.logger = logger.bind(planner=self.kind, seed=seed)

        index = create_index(
            world.dimension,
            backend=self.config.get("index_backend", "kd"),
            epsilon=self.config.get("kd_epsilon", 0.0),
            rebuild_factor=self.config.get("kd_rebuild_factor", 2.0),
        )
        self.graph = PlannerGraph(world.x_init, self.mode, index)
        if world.in_goal(world.x_init):
            self.graph.goal_ids.append(ROOT_ID)

        self.best_costs: List[float] = []
        self.metrics = {
            "iterations": 0,
            "vertices_added": 0,
            "duplicates_skipped": 0,
            "obstacle_free_calls": 0,
            "rewires": 0,
        }
        self.debug_invariants = bool(self.config.get("debug_invariants", False))
        self._calls = 0
        self._elapsed = 0.0

    @abstractmethod
    def extend(self, x: Point) -> Optional[int]:
        """Extend the graph toward ``x``; return the new vertex id, if any."""

    @abstractmethod
    def best_cost(self) -> float:
        """Cost of the best goal-reaching path held by the graph, +inf if none."""

    def finalize(self) -> None:
        """Hook for planners that refresh bookkeeping lazily."""

    def obstacle_free(self, a: Point, b: Point) -> bool:
        """Counted ObstacleFree test."""
        self._calls += 1
        return self.world.obstacle_free_segment(a, b)

    def steer_from_nearest(self, x: Point) -> Optional[Tuple[int, Point]]:
        """
        Nearest vertex and the steered point toward ``x``.

        Returns:
            (nearest id, x_new), or None when x_new would duplicate the
            nearest vertex.
        """
        nearest_id, _ = self.graph.index.nearest(x)
        x_nearest = self.graph.vertices[nearest_id]
        x_new = steer(x_nearest, x, self.params.eta)
        if x_new == x_nearest:
            self.metrics["duplicates_skipped"] += 1
            return None
        return nearest_id, x_new

    def add_vertex(self, x_new: Point) -> int:
        self.metrics["vertices_added"] += 1
        return self.graph.add_vertex(x_new, in_goal=self.world.in_goal(x_new))

    def step(self, x: Point) -> Optional[int]:
        """Run one iteration on the sample ``x``."""
        self._calls = 0
        started = time.perf_counter()
        new_id = self.extend(x)
        self._elapsed += time.perf_counter() - started

        self.metrics["iterations"] += 1
        self.metrics["obstacle_free_calls"] += self._calls
        self.graph.record_iteration(self._calls, self._elapsed)
        self.best_costs.append(self.best_cost())
        if self.debug_invariants:
            self.graph.check_invariants(self.cost)
        return new_id

    def close(self) -> None:
        """Finish the run: refresh lazy bookkeeping and the final best cost."""
        self.finalize()
        if self.best_costs:
            self.best_costs[-1] = self.best_cost()
        self.logger.info(
            "Planner run finished",
            iterations=self.metrics["iterations"],
            vertices=len(self.graph),
            best_cost=self.best_costs[-1] if self.best_costs else math.inf,
        )

    def get_status(self) -> Dict[str, Any]:
        """Get the current status of the planner."""
        return {
            "kind": self.kind,
            "vertices": len(self.graph),
            "edges": self.graph.edge_count,
            "best_cost": self.best_cost(),
            "metrics": self.metrics.copy(),
            "index": self.graph.index.get_status(),
        }
