"""
Vertex/edge store shared by every planner, with parent pointers and
cost-to-come bookkeeping for tree planners.
"""

import heapq
import math
from collections import deque
from enum import Enum
from typing import Dict, List, Optional, Set, Tuple

from exceptions import InvariantViolation
from geometry.cost_model import CostModel
from geometry.primitives import Point, Polyline
from retrievers.base_index import BaseIndex

ROOT_ID = 0
NO_PARENT = -1


class GraphMode(Enum):
    TREE = "tree"
    GRAPH = "graph"


class PlannerGraph:
    """
    Vertices are numbered in insertion order starting with the root (id 0).

    Tree mode keeps ``parent``, ``children``, ``edge_cost`` and
    ``cost_to_come``; edges are the directed (parent, child) pairs. Graph mode
    keeps symmetric edge pairs and an adjacency list.
    """

    def __init__(self, root: Point, mode: GraphMode, index: BaseIndex):
        self.mode = mode
        self.index = index
        self.vertices: List[Point] = []
        self.edges: Set[Tuple[int, int]] = set()
        self.parent: List[int] = []
        self.children: List[List[int]] = []
        self.edge_cost: List[float] = []
        self.cost_to_come: List[float] = []
        self.adjacency: List[List[int]] = []
        self.goal_ids: List[int] = []

        # Per-iteration counters: N_i, O_i, cumulative wall-time.
        self.vertex_counts: List[int] = []
        self.obstacle_free_calls: List[int] = []
        self.wall_time: List[float] = []

        self.add_vertex(root)
        if self.is_tree:
            self.cost_to_come[ROOT_ID] = 0.0

    @property
    def is_tree(self) -> bool:
        return self.mode is GraphMode.TREE

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def add_vertex(self, point: Point, in_goal: bool = False) -> int:
        vertex_id = len(self.vertices)
        self.vertices.append(point)
        self.index.insert(point, vertex_id)
        self.children.append([])
        self.adjacency.append([])
        if self.is_tree:
            self.parent.append(NO_PARENT)
            self.edge_cost.append(0.0)
            self.cost_to_come.append(0.0)
        if in_goal:
            self.goal_ids.append(vertex_id)
        return vertex_id

    def attach(self, parent_id: int, child_id: int, edge_cost: float) -> None:
        """Give a fresh tree vertex its parent."""
        self.parent[child_id] = parent_id
        self.edge_cost[child_id] = edge_cost
        self.cost_to_come[child_id] = self.cost_to_come[parent_id] + edge_cost
        self.children[parent_id].append(child_id)
        self.edges.add((parent_id, child_id))

    def rewire(self, child_id: int, new_parent_id: int, edge_cost: float) -> int:
        """
        Move ``child_id`` under ``new_parent_id`` and refresh the cost of its
        whole subtree.

        Returns:
            Number of vertices whose cost was updated
        """
        old_parent = self.parent[child_id]
        self.children[old_parent].remove(child_id)
        self.edges.discard((old_parent, child_id))
        self.parent[child_id] = new_parent_id
        self.edge_cost[child_id] = edge_cost
        self.children[new_parent_id].append(child_id)
        self.edges.add((new_parent_id, child_id))
        return self._propagate_costs(child_id)

    def _propagate_costs(self, start_id: int) -> int:
        updated = 0
        queue = deque([start_id])
        while queue:
            vertex_id = queue.popleft()
            self.cost_to_come[vertex_id] = (
                self.cost_to_come[self.parent[vertex_id]] + self.edge_cost[vertex_id]
            )
            updated += 1
            queue.extend(self.children[vertex_id])
        return updated

    def add_symmetric_edge(self, u: int, v: int) -> bool:
        """Add (u, v) and (v, u); returns False when the pair already existed."""
        if (u, v) in self.edges:
            return False
        self.edges.add((u, v))
        self.edges.add((v, u))
        self.adjacency[u].append(v)
        self.adjacency[v].append(u)
        return True

    def undirected_edges(self) -> List[Tuple[int, int]]:
        """Each edge once, as (smaller id, larger id), sorted."""
        return sorted({(min(u, v), max(u, v)) for u, v in self.edges})

    def shortest_costs(
        self, cost_model: CostModel, source: int = ROOT_ID
    ) -> Tuple[Dict[int, float], Dict[int, int]]:
        """
        Dijkstra over the edges weighted by segment cost.

        Heap entries are (distance, id), so equal distances settle in id order
        and a predecessor only changes on a strict improvement.

        Returns:
            (distance per reached vertex, predecessor per reached non-source vertex)
        """
        dist: Dict[int, float] = {source: 0.0}
        pred: Dict[int, int] = {}
        settled = set()
        heap: List[Tuple[float, int]] = [(0.0, source)]
        vertices = self.vertices
        while heap:
            d, u = heapq.heappop(heap)
            if u in settled:
                continue
            settled.add(u)
            for v in sorted(self.adjacency[u]):
                if v in settled:
                    continue
                candidate = d + cost_model.segment_cost(vertices[u], vertices[v])
                if candidate < dist.get(v, math.inf):
                    dist[v] = candidate
                    pred[v] = u
                    heapq.heappush(heap, (candidate, v))
        return dist, pred

    def shortest_goal_cost(self, cost_model: CostModel) -> float:
        """Cheapest shortest-path distance to a recorded goal vertex."""
        dist, _ = self.shortest_costs(cost_model)
        return min((dist[v] for v in self.goal_ids if v in dist), default=math.inf)

    def path_ids(self, vertex_id: int) -> List[int]:
        """Root-to-vertex ids along parent pointers."""
        chain = [vertex_id]
        while self.parent[chain[-1]] != NO_PARENT:
            chain.append(self.parent[chain[-1]])
            if len(chain) > len(self.vertices):
                raise InvariantViolation(f"Parent pointers from {vertex_id} form a cycle")
        chain.reverse()
        return chain

    def path_to(self, vertex_id: int) -> Polyline:
        return Polyline(tuple(self.vertices[i] for i in self.path_ids(vertex_id)))

    def record_iteration(self, obstacle_free_calls: int, elapsed: float) -> None:
        self.vertex_counts.append(len(self.vertices))
        self.obstacle_free_calls.append(obstacle_free_calls)
        self.wall_time.append(elapsed)

    def check_invariants(self, cost_model: Optional[CostModel] = None, tolerance: float = 1e-9) -> None:
        """
        Raise InvariantViolation unless the structural invariants hold.

        Trees: |E| = |V| - 1, every vertex reaches the root, and (given a cost
        model) every cost-to-come matches its parent-chain path cost. Graphs:
        every edge comes with its reverse.
        """
        if not self.is_tree:
            for u, v in self.edges:
                if (v, u) not in self.edges:
                    raise InvariantViolation(f"Edge ({u}, {v}) has no reverse")
            return

        if len(self.edges) != len(self.vertices) - 1:
            raise InvariantViolation(
                f"Tree has {len(self.edges)} edges for {len(self.vertices)} vertices"
            )
        if self.cost_to_come[ROOT_ID] != 0.0 or self.parent[ROOT_ID] != NO_PARENT:
            raise InvariantViolation("Root must have no parent and cost-to-come 0")

        # Walk down from the root; path costs are recomputed from the geometry.
        path_cost: Dict[int, float] = {ROOT_ID: 0.0}
        queue = deque([ROOT_ID])
        while queue:
            parent_id = queue.popleft()
            for child_id in self.children[parent_id]:
                if (
                    child_id in path_cost
                    or self.parent[child_id] != parent_id
                    or (parent_id, child_id) not in self.edges
                ):
                    raise InvariantViolation(
                        f"Child list of {parent_id} disagrees with parent of {child_id}"
                    )
                if cost_model is not None:
                    path_cost[child_id] = path_cost[parent_id] + cost_model.segment_cost(
                        self.vertices[parent_id], self.vertices[child_id]
                    )
                else:
                    path_cost[child_id] = 0.0
                queue.append(child_id)

        if len(path_cost) != len(self.vertices):
            unreached = sorted(set(range(len(self.vertices))) - set(path_cost))
            raise InvariantViolation(f"Vertices {unreached[:10]} do not reach the root")
        if cost_model is None:
            return
        for vertex_id, expected in path_cost.items():
            if abs(expected - self.cost_to_come[vertex_id]) >= tolerance:
                raise InvariantViolation(
                    f"Vertex {vertex_id}: cost_to_come {self.cost_to_come[vertex_id]} "
                    f"differs from path cost {expected}"
                )
