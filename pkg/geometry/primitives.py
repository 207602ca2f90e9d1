"""
Points, segments and polyline paths in R^d, plus the Steer and Line primitives
shared by every planner.
"""

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

from exceptions import UsageError

# Absolute tolerance for every geometric comparison.
TOLERANCE = 1e-12


class Point(tuple):
    """
    Immutable d-dimensional point with finite float coordinates.

    Any d >= 1 is accepted here; WorldModel rejects worlds with d < 2.
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable[float]):
        values = tuple(float(c) for c in coords)
        if len(values) < 1:
            raise UsageError("A point needs at least one coordinate")
        for value in values:
            if not math.isfinite(value):
                raise UsageError(f"Point coordinates must be finite, got {values}")
        return super().__new__(cls, values)

    @property
    def coords(self) -> Tuple[float, ...]:
        return tuple(self)

    @property
    def dimension(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"Point({', '.join(repr(c) for c in self)})"


def check_dimension(*points: Sequence[float]) -> int:
    """Return the shared dimension of ``points`` or raise UsageError."""
    dimension = len(points[0])
    for p in points[1:]:
        if len(p) != dimension:
            raise UsageError(
                f"Dimension mismatch: expected {dimension}, got {len(p)}"
            )
    return dimension


def squared_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """Squared Euclidean distance.

    Every nearest-neighbor comparison in the toolkit goes through this function
    so that the kd-tree and the linear-scan oracle see bit-identical values.
    """
    total = 0.0
    for x, y in zip(a, b):
        diff = x - y
        total += diff * diff
    return total


def distance(a: Sequence[float], b: Sequence[float]) -> float:
    return math.sqrt(squared_distance(a, b))


def points_close(a: Sequence[float], b: Sequence[float], tol: float = TOLERANCE) -> bool:
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def steer(from_point: Point, toward: Point, eta: float) -> Point:
    """
    Move from ``from_point`` toward ``toward`` by at most ``eta``.

    Args:
        from_point: Starting point
        toward: Target point
        eta: Steering bound, must be positive

    Returns:
        ``toward`` itself when it lies within ``eta``, otherwise the point at
        distance ``eta`` along the segment.
    """
    check_dimension(from_point, toward)
    if not eta > 0:
        raise UsageError(f"Steering bound must be positive, got {eta}")

    gap = distance(from_point, toward)
    if gap <= eta:
        return toward if isinstance(toward, Point) else Point(toward)

    scale = eta / gap
    return Point(x + (y - x) * scale for x, y in zip(from_point, toward))


@dataclass(frozen=True)
class Segment:
    """Straight segment [a, b]."""

    a: Point
    b: Point

    def __post_init__(self):
        check_dimension(self.a, self.b)

    @property
    def length(self) -> float:
        return distance(self.a, self.b)

    @property
    def is_degenerate(self) -> bool:
        return points_close(self.a, self.b)


@dataclass(frozen=True)
class Polyline:
    """
    Ordered waypoints of a piecewise-linear path.

    Consecutive duplicates (within TOLERANCE) are dropped at construction, so a
    path with a single remaining waypoint is the degenerate zero-length path.
    """

    waypoints: Tuple[Point, ...] = field(default_factory=tuple)

    def __post_init__(self):
        points = [p if isinstance(p, Point) else Point(p) for p in self.waypoints]
        if not points:
            raise UsageError("A polyline needs at least one waypoint")
        check_dimension(*points)

        kept = [points[0]]
        for p in points[1:]:
            if not points_close(p, kept[-1]):
                kept.append(p)
        object.__setattr__(self, "waypoints", tuple(kept))

    @property
    def start(self) -> Point:
        return self.waypoints[0]

    @property
    def end(self) -> Point:
        return self.waypoints[-1]

    @property
    def is_degenerate(self) -> bool:
        return len(self.waypoints) == 1

    def segments(self) -> Iterable[Segment]:
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            yield Segment(a, b)

    def __len__(self) -> int:
        return len(self.waypoints)


def line(a: Point, b: Point) -> Polyline:
    """Straight path between two points."""
    check_dimension(a, b)
    return Polyline((a, b))


def concat(first: Polyline, second: Polyline) -> Polyline:
    """Concatenate two paths sharing an endpoint."""
    check_dimension(first.end, second.start)
    if not points_close(first.end, second.start):
        raise UsageError(
            f"Cannot concatenate: {first.end!r} does not match {second.start!r}"
        )
    return Polyline(first.waypoints + second.waypoints[1:])


def path_length(path: Polyline) -> float:
    """Sum of Euclidean segment lengths."""
    return math.fsum(
        distance(a, b) for a, b in zip(path.waypoints, path.waypoints[1:])
    )
