"""
Incremental kd-tree over planner vertices with exact or epsilon-approximate
nearest-neighbor queries and closed-ball range queries.
"""

import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

from exceptions import QueryError, UsageError
from geometry.primitives import squared_distance

from .base_index import BaseIndex


class KdNode:
    __slots__ = ("point", "vertex_id", "axis", "left", "right")

    def __init__(self, point: Tuple[float, ...], vertex_id: int, axis: int):
        self.point = point
        self.vertex_id = vertex_id
        self.axis = axis
        self.left: Optional["KdNode"] = None
        self.right: Optional["KdNode"] = None


class KdIndex(BaseIndex):
    """
    kd-tree with incremental leaf insertion and a median rebuild whenever the
    size has grown by ``rebuild_factor`` since the last build.

    Points with a coordinate equal to a node's split value may sit on either
    side after a rebuild; both subtrees are bounded by the splitting plane, so
    the plane distance stays a valid lower bound.
    """

    MIN_REBUILD_SIZE = 8

    def __init__(
        self,
        dimension: int,
        epsilon: float = 0.0,
        rebuild_factor: float = 2.0,
        config: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize the kd-tree.

        Args:
            dimension: Dimension of the indexed points
            epsilon: Approximation slack for nearest queries, 0 for exact
            rebuild_factor: Growth ratio that triggers a balanced rebuild
            config: Configuration dictionary
        """
        super().__init__(dimension, "kd_index", config)
        if epsilon < 0:
            raise UsageError(f"epsilon must be nonnegative, got {epsilon}")
        if rebuild_factor <= 1.0:
            raise UsageError(f"rebuild_factor must exceed 1, got {rebuild_factor}")
        self.epsilon = float(epsilon)
        self.rebuild_factor = float(rebuild_factor)
        self._prune_scale = (1.0 + self.epsilon) ** 2
        self.root: Optional[KdNode] = None
        self.entries: Dict[int, Tuple[float, ...]] = {}
        self._built_size = 0
        self.rebuilds = 0
        self.last_visited = 0

    def __len__(self) -> int:
        return len(self.entries)

    def insert(self, point: Sequence[float], vertex_id: int) -> None:
        self._check_point(point)
        if vertex_id in self.entries:
            raise UsageError(f"Duplicate vertex id {vertex_id}")
        point = tuple(point)
        self.entries[vertex_id] = point
        self.stats["inserts"] += 1

        size = len(self.entries)
        if size >= self.MIN_REBUILD_SIZE and size >= self.rebuild_factor * max(self._built_size, 1):
            self.rebuild()
            return

        if self.root is None:
            self.root = KdNode(point, vertex_id, 0)
            return
        node = self.root
        while True:
            if point[node.axis] < node.point[node.axis]:
                if node.left is None:
                    node.left = KdNode(point, vertex_id, (node.axis + 1) % self.dimension)
                    return
                node = node.left
            else:
                if node.right is None:
                    node.right = KdNode(point, vertex_id, (node.axis + 1) % self.dimension)
                    return
                node = node.right

    def rebuild(self) -> None:
        """Rebuild a balanced tree from every stored entry."""
        items = sorted(self.entries.items())
        self.root = self._build([(point, vid) for vid, point in items], 0)
        self._built_size = len(items)
        self.rebuilds += 1
        self.logger.debug("kd-tree rebuilt", size=self._built_size)

    def _build(self, items: List[Tuple[Tuple[float, ...], int]], depth: int) -> Optional[KdNode]:
        if not items:
            return None
        axis = depth % self.dimension
        items.sort(key=lambda item: (item[0][axis], item[1]))
        mid = len(items) // 2
        point, vertex_id = items[mid]
        node = KdNode(point, vertex_id, axis)
        node.left = self._build(items[:mid], depth + 1)
        node.right = self._build(items[mid + 1:], depth + 1)
        return node

    def nearest(self, query: Sequence[float]) -> Tuple[int, float]:
        """
        Closest stored point to ``query``.

        Returns:
            (vertex id, distance); with epsilon > 0 the distance is within a
            factor (1 + epsilon) of the true minimum.
        """
        self._check_point(query)
        if self.root is None:
            raise QueryError("Nearest query on an empty index")
        self.stats["nearest_queries"] += 1

        best_sq = math.inf
        best_id = -1
        visited = 0
        scale = self._prune_scale
        stack: List[Tuple[KdNode, float]] = [(self.root, 0.0)]
        while stack:
            node, bound = stack.pop()
            # Equal bounds are still visited: they may hold a smaller id.
            if bound * scale > best_sq:
                continue
            visited += 1
            sq = squared_distance(node.point, query)
            if sq < best_sq or (sq == best_sq and node.vertex_id < best_id):
                best_sq = sq
                best_id = node.vertex_id

            diff = query[node.axis] - node.point[node.axis]
            if diff < 0:
                near, far = node.left, node.right
            else:
                near, far = node.right, node.left
            if far is not None:
                stack.append((far, max(bound, diff * diff)))
            if near is not None:
                stack.append((near, bound))

        self.last_visited = visited
        self.stats["visited"] += visited
        return best_id, math.sqrt(best_sq)

    def near(self, query: Sequence[float], radius: float) -> List[int]:
        """Ids within the closed ball of ``radius`` around ``query``, sorted ascending."""
        self._check_point(query)
        if not radius > 0:
            raise UsageError(f"Near radius must be positive, got {radius}")
        self.stats["near_queries"] += 1
        if self.root is None:
            return []

        found: List[int] = []
        visited = 0
        stack: List[KdNode] = [self.root]
        while stack:
            node = stack.pop()
            visited += 1
            # Compared as a distance so nearest(q) lies in near(q, nearest distance).
            if math.sqrt(squared_distance(node.point, query)) <= radius:
                found.append(node.vertex_id)
            diff = query[node.axis] - node.point[node.axis]
            if diff < 0:
                near, far = node.left, node.right
            else:
                near, far = node.right, node.left
            if near is not None:
                stack.append(near)
            if far is not None and abs(diff) <= radius:
                stack.append(far)

        self.stats["visited"] += visited
        found.sort()
        return found
