"""
Linear-scan index: the brute-force reference every other index is checked against.
"""

import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

from exceptions import QueryError, UsageError
from geometry.primitives import squared_distance

from .base_index import BaseIndex


class LinearScanIndex(BaseIndex):
    """Stores entries in insertion order and scans all of them per query."""

    def __init__(self, dimension: int, config: Optional[Dict[str, Any]] = None):
        super().__init__(dimension, "linear_index", config)
        self.points: List[Tuple[float, ...]] = []
        self.ids: List[int] = []
        self._id_set = set()

    def insert(self, point: Sequence[float], vertex_id: int) -> None:
        self._check_point(point)
        if vertex_id in self._id_set:
            raise UsageError(f"Duplicate vertex id {vertex_id}")
        self._id_set.add(vertex_id)
        self.points.append(tuple(point))
        self.ids.append(vertex_id)
        self.stats["inserts"] += 1

    def nearest(self, query: Sequence[float]) -> Tuple[int, float]:
        self._check_point(query)
        if not self.points:
            raise QueryError("Nearest query on an empty index")
        self.stats["nearest_queries"] += 1
        self.stats["visited"] += len(self.points)

        best = (math.inf, -1)
        for point, vertex_id in zip(self.points, self.ids):
            candidate = (squared_distance(point, query), vertex_id)
            if candidate < best:
                best = candidate
        return best[1], math.sqrt(best[0])

    def near(self, query: Sequence[float], radius: float) -> List[int]:
        self._check_point(query)
        if not radius > 0:
            raise UsageError(f"Near radius must be positive, got {radius}")
        self.stats["near_queries"] += 1
        self.stats["visited"] += len(self.points)

        return sorted(
            vertex_id
            for point, vertex_id in zip(self.points, self.ids)
            if math.sqrt(squared_distance(point, query)) <= radius
        )

    def __len__(self) -> int:
        return len(self.points)
