"""
Base index module providing the interface shared by all nearest-neighbor indexes.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence, Tuple

from configs.logging_config import get_logger
from exceptions import UsageError


class BaseIndex(ABC):
    """
    Abstract base class for vertex indexes used by the planners.

    Vertex ids are integers; every query breaks distance ties by the smallest id.
    """

    def __init__(self, dimension: int, name: str, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the base index.

        Args:
            dimension: Dimension of the indexed points
            name: Name of the index
            config: Configuration dictionary
        """
        self.dimension = dimension
        self.name = name
        self.config = config or {}
        self.logger = get_logger(f"{__name__}.{name}")
        self.stats = {"inserts": 0, "nearest_queries": 0, "near_queries": 0, "visited": 0}

    @abstractmethod
    def insert(self, point: Sequence[float], vertex_id: int) -> None:
        """Add a point under a fresh id."""

    @abstractmethod
    def nearest(self, query: Sequence[float]) -> Tuple[int, float]:
        """Return (id, distance) of the closest point."""

    @abstractmethod
    def near(self, query: Sequence[float], radius: float) -> List[int]:
        """Return the ids within the closed ball, sorted ascending."""

    @abstractmethod
    def __len__(self) -> int:
        pass

    def _check_point(self, point: Sequence[float]) -> None:
        if len(point) != self.dimension:
            raise UsageError(
                f"Index dimension is {self.dimension}, got a point of dimension {len(point)}"
            )

    def get_status(self) -> Dict[str, Any]:
        """Get the current status of the index."""
        return {
            "name": self.name,
            "size": len(self),
            "config": self.config,
            "stats": self.stats.copy(),
        }
