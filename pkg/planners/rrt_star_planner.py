"""
RRT*: minimum-cost parent selection and rewiring over the Near ball.
"""

import math
from typing import Dict, Optional

from geometry.primitives import Point

from .base_planner import BasePlanner
from .graph import GraphMode
from .near_params import near_radius


class RRTStarPlanner(BasePlanner):
    """
    Tree planner whose vertex set matches RRG on the same samples.

    x_new starts with cost through x_nearest and takes the cheapest
    obstacle-free parent among the Near vertices; each Near vertex is then
    rewired through x_new when that strictly lowers its cost, and the cost of
    its whole subtree is refreshed.
    """

    kind = "rrt_star"
    mode = GraphMode.TREE

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._best = min(
            (self.graph.cost_to_come[v] for v in self.graph.goal_ids), default=math.inf
        )
        self._best_dirty = False

    def extend(self, x: Point) -> Optional[int]:
        graph = self.graph
        steered = self.steer_from_nearest(x)
        if steered is None:
            return None
        nearest_id, x_new = steered
        x_nearest = graph.vertices[nearest_id]
        if not self.obstacle_free(x_nearest, x_new):
            return None

        radius = near_radius(self.params, len(graph))
        near_ids = graph.index.near(x_new, radius)
        new_id = self.add_vertex(x_new)

        # ObstacleFree is symmetric, so one test per Near vertex serves both loops.
        line_free: Dict[int, bool] = {nearest_id: True}
        line_cost: Dict[int, float] = {
            nearest_id: self.cost.segment_cost(x_nearest, x_new)
        }
        best_parent = nearest_id
        best_cost = graph.cost_to_come[nearest_id] + line_cost[nearest_id]
        for near_id in near_ids:
            if near_id == nearest_id:
                continue
            x_near = graph.vertices[near_id]
            line_free[near_id] = self.obstacle_free(x_near, x_new)
            if not line_free[near_id]:
                continue
            line_cost[near_id] = self.cost.segment_cost(x_near, x_new)
            candidate = graph.cost_to_come[near_id] + line_cost[near_id]
            if candidate < best_cost:
                best_parent, best_cost = near_id, candidate
        graph.attach(best_parent, new_id, line_cost[best_parent])

        for near_id in near_ids:
            if near_id == best_parent or not line_free[near_id]:
                continue
            # Edges are priced parent-to-child, as path_cost walks the tree.
            rewire_cost = self.cost.segment_cost(x_new, graph.vertices[near_id])
            if graph.cost_to_come[new_id] + rewire_cost < graph.cost_to_come[near_id]:
                graph.rewire(near_id, new_id, rewire_cost)
                self.metrics["rewires"] += 1
                self._best_dirty = True

        if graph.goal_ids and graph.goal_ids[-1] == new_id:
            self._best = min(self._best, graph.cost_to_come[new_id])
        return new_id

    def best_cost(self) -> float:
        if self._best_dirty:
            graph = self.graph
            self._best = min(
                (graph.cost_to_come[v] for v in graph.goal_ids), default=math.inf
            )
            self._best_dirty = False
        return self._best
