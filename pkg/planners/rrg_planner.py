"""
Rapidly-exploring Random Graph.
"""

import math
from typing import Optional

from geometry.primitives import Point

from .base_planner import BasePlanner
from .graph import GraphMode
from .near_params import near_radius


class RRGPlanner(BasePlanner):
    """
    RRT extension plus symmetric connections to every obstacle-free vertex in
    the Near ball.

    The best goal cost needs a shortest-path search, so it is refreshed every
    ``rrg_query_stride`` iterations and held flat in between.
    """

    kind = "rrg"
    mode = GraphMode.GRAPH

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.query_stride = int(self.config.get("rrg_query_stride", 50))
        self._best = 0.0 if self.graph.goal_ids else math.inf
        self._refresh_pending = False

    def extend(self, x: Point) -> Optional[int]:
        steered = self.steer_from_nearest(x)
        if steered is None:
            return None
        nearest_id, x_new = steered
        if not self.obstacle_free(self.graph.vertices[nearest_id], x_new):
            return None

        # Near uses |V| before x_new joins the graph.
        radius = near_radius(self.params, len(self.graph))
        near_ids = self.graph.index.near(x_new, radius)

        new_id = self.add_vertex(x_new)
        self.graph.add_symmetric_edge(nearest_id, new_id)
        # Every Near vertex is tested, x_nearest included, so O_i = 1 + |Near|.
        for near_id in near_ids:
            if self.obstacle_free(x_new, self.graph.vertices[near_id]):
                self.graph.add_symmetric_edge(near_id, new_id)
        return new_id

    def step(self, x: Point) -> Optional[int]:
        if (self.metrics["iterations"] + 1) % self.query_stride == 0:
            self._refresh_pending = True
        return super().step(x)

    def best_cost(self) -> float:
        if self._refresh_pending:
            self._refresh_pending = False
            self.finalize()
        return self._best

    def finalize(self) -> None:
        if self.graph.goal_ids:
            self._best = min(self._best, self.graph.shortest_goal_cost(self.cost))
