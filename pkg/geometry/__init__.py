"""
Geometry modules: primitives, the world model and path-cost functionals.
"""

from .cost_model import CostKind, CostModel, WeightedRegion
from .primitives import (
    TOLERANCE,
    Point,
    Polyline,
    Segment,
    concat,
    distance,
    line,
    path_length,
    squared_distance,
    steer,
)
from .world import BallGoal, Box, SampleStream, WorldModel, sample_free

__all__ = [
    "BallGoal",
    "Box",
    "CostKind",
    "CostModel",
    "Point",
    "Polyline",
    "SampleStream",
    "Segment",
    "TOLERANCE",
    "WeightedRegion",
    "WorldModel",
    "concat",
    "distance",
    "line",
    "path_length",
    "sample_free",
    "squared_distance",
    "steer",
]
