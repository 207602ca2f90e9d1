"""
Rapidly-exploring Random Tree.
"""

import math
from typing import Optional

from geometry.primitives import Point

from .base_planner import BasePlanner
from .graph import GraphMode


class RRTPlanner(BasePlanner):
    """Extends the nearest vertex toward each sample with a single collision test."""

    kind = "rrt"
    mode = GraphMode.TREE

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # Tree costs never change, so the best goal cost is a running minimum.
        self._best = min(
            (self.graph.cost_to_come[v] for v in self.graph.goal_ids), default=math.inf
        )

    def extend(self, x: Point) -> Optional[int]:
        steered = self.steer_from_nearest(x)
        if steered is None:
            return None
        nearest_id, x_new = steered
        if not self.obstacle_free(self.graph.vertices[nearest_id], x_new):
            return None

        new_id = self.add_vertex(x_new)
        self.graph.attach(
            nearest_id, new_id, self.cost.segment_cost(self.graph.vertices[nearest_id], x_new)
        )
        if self.graph.goal_ids and self.graph.goal_ids[-1] == new_id:
            self._best = min(self._best, self.graph.cost_to_come[new_id])
        return new_id

    def best_cost(self) -> float:
        return self._best
