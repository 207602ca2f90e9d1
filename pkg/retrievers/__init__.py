"""
Nearest-neighbor indexes over planner vertices.
"""

from exceptions import UsageError

from .base_index import BaseIndex
from .kd_index import KdIndex
from .linear_index import LinearScanIndex

__all__ = ["BaseIndex", "KdIndex", "LinearScanIndex", "create_index"]


def create_index(
    dimension: int,
    backend: str = "kd",
    epsilon: float = 0.0,
    rebuild_factor: float = 2.0,
) -> BaseIndex:
    """Build an empty index of the configured backend."""
    if backend == "kd":
        return KdIndex(dimension, epsilon=epsilon, rebuild_factor=rebuild_factor)
    if backend == "linear":
        return LinearScanIndex(dimension)
    raise UsageError(f"Unknown index backend: {backend}")
