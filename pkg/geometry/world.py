"""
Problem-instance container: bounds, obstacles, goal region, initial state,
collision tests and seeded uniform sampling of the free space.
"""

import hashlib
import itertools
import math
import struct
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from exceptions import ConfigurationError, UsageError
from geometry.primitives import Point, check_dimension, squared_distance

DEFAULT_MAX_REJECTIONS = 1_000_000


@dataclass(frozen=True)
class Box:
    """Axis-aligned box given by its lower and upper corners."""

    lo: Tuple[float, ...]
    hi: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(float(v) for v in self.lo))
        object.__setattr__(self, "hi", tuple(float(v) for v in self.hi))
        check_dimension(self.lo, self.hi)
        for lo, hi in zip(self.lo, self.hi):
            if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
                raise UsageError(f"Invalid box extents lo={self.lo} hi={self.hi}")

    @classmethod
    def from_intervals(cls, intervals: Sequence[Sequence[float]]) -> "Box":
        """Build from ``[[lo, hi], ...]`` as written in scenario files."""
        return cls(tuple(iv[0] for iv in intervals), tuple(iv[1] for iv in intervals))

    @property
    def dimension(self) -> int:
        return len(self.lo)

    @property
    def volume(self) -> float:
        return math.prod(hi - lo for lo, hi in zip(self.lo, self.hi))

    @property
    def diagonal(self) -> float:
        return math.sqrt(sum((hi - lo) ** 2 for lo, hi in zip(self.lo, self.hi)))

    @property
    def center(self) -> Point:
        return Point((lo + hi) / 2.0 for lo, hi in zip(self.lo, self.hi))

    def contains(self, x: Sequence[float]) -> bool:
        """Closed membership."""
        return all(lo <= v <= hi for v, lo, hi in zip(x, self.lo, self.hi))

    def contains_interior(self, x: Sequence[float]) -> bool:
        """Open membership."""
        return all(lo < v < hi for v, lo, hi in zip(x, self.lo, self.hi))

    def interiors_overlap(self, other: "Box") -> bool:
        return all(
            max(a_lo, b_lo) < min(a_hi, b_hi)
            for a_lo, a_hi, b_lo, b_hi in zip(self.lo, self.hi, other.lo, other.hi)
        )

    def intersection(self, other: "Box") -> Optional["Box"]:
        lo = tuple(max(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, other.hi))
        if any(h <= l for l, h in zip(lo, hi)):
            return None
        return Box(lo, hi)

    def segment_hits_interior(self, a: Sequence[float], b: Sequence[float]) -> bool:
        """
        Slab test of the segment [a, b] against the open box.

        Grazing a face, an edge or a corner is not a hit.
        """
        t_enter, t_exit = 0.0, 1.0
        for start, end, lo, hi in zip(a, b, self.lo, self.hi):
            delta = end - start
            if delta == 0.0:
                if not lo < start < hi:
                    return False
                continue
            t_lo = (lo - start) / delta
            t_hi = (hi - start) / delta
            if t_lo > t_hi:
                t_lo, t_hi = t_hi, t_lo
            if t_lo > t_enter:
                t_enter = t_lo
            if t_hi < t_exit:
                t_exit = t_hi
            if t_enter >= t_exit:
                return False
        return t_enter < t_exit

    def to_intervals(self) -> List[List[float]]:
        return [[lo, hi] for lo, hi in zip(self.lo, self.hi)]


@dataclass(frozen=True)
class BallGoal:
    """Closed ball goal region."""

    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point(self.center))
        if not self.radius > 0:
            raise UsageError(f"Goal ball radius must be positive, got {self.radius}")

    @property
    def dimension(self) -> int:
        return len(self.center)

    def contains(self, x: Sequence[float]) -> bool:
        return squared_distance(x, self.center) <= self.radius * self.radius

    def bounding_box(self) -> Box:
        return Box(
            tuple(c - self.radius for c in self.center),
            tuple(c + self.radius for c in self.center),
        )


GoalRegion = Union[Box, BallGoal]


@dataclass(frozen=True)
class WorldModel:
    """
    One planning problem: the box X, open box obstacles, a goal region inside the
    free space and the initial state.
    """

    bounds: Box
    obstacles: Tuple[Box, ...]
    goal: GoalRegion
    x_init: Point

    def __post_init__(self):
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        object.__setattr__(self, "x_init", Point(self.x_init))
        d = self.bounds.dimension
        if d < 2:
            raise ConfigurationError(f"World dimension must be at least 2, got {d}")
        for box in self.obstacles:
            if box.dimension != d:
                raise ConfigurationError("Obstacle dimension does not match bounds")
            if not (self.bounds.contains(box.lo) and self.bounds.contains(box.hi)):
                raise ConfigurationError(f"Obstacle {box.to_intervals()} leaves the bounds")
        if self.goal.dimension != d or len(self.x_init) != d:
            raise ConfigurationError("Goal and x_init must match the world dimension")
        if not self.obstacle_free_point(self.x_init):
            raise ConfigurationError(f"x_init {self.x_init!r} is not in free space")
        self._check_goal()

    def _check_goal(self) -> None:
        goal_box = self.goal if isinstance(self.goal, Box) else self.goal.bounding_box()
        if isinstance(self.goal, Box) and self.goal.volume <= 0:
            raise ConfigurationError("Goal region must have positive measure")
        if not self.bounds.contains(goal_box.lo) or not self.bounds.contains(goal_box.hi):
            raise ConfigurationError("Goal region leaves the bounds")
        for box in self.obstacles:
            if box.interiors_overlap(goal_box):
                raise ConfigurationError(
                    f"Goal region intersects obstacle {box.to_intervals()}"
                )

    @property
    def dimension(self) -> int:
        return self.bounds.dimension

    def obstacle_free_point(self, x: Sequence[float]) -> bool:
        check_dimension(x, self.bounds.lo)
        if not self.bounds.contains(x):
            return False
        return not any(box.contains_interior(x) for box in self.obstacles)

    def obstacle_free_segment(self, a: Sequence[float], b: Sequence[float]) -> bool:
        """True iff [a, b] stays inside the closure of the free space."""
        check_dimension(a, b, self.bounds.lo)
        # The bounds are convex, so both endpoints inside is enough.
        if not (self.bounds.contains(a) and self.bounds.contains(b)):
            return False
        return not any(box.segment_hits_interior(a, b) for box in self.obstacles)

    def in_goal(self, x: Sequence[float]) -> bool:
        return self.goal.contains(x)

    def free_space_measure(self) -> float:
        """Exact volume of the free space by coordinate compression of the obstacle union."""
        clipped = [
            box
            for box in (self.bounds.intersection(o) for o in self.obstacles)
            if box is not None
        ]
        return self.bounds.volume - union_volume(clipped)

    def segments_free_batch(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Vectorised obstacle_free_segment over rows of ``a`` and ``b``."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        lo = np.asarray(self.bounds.lo)
        hi = np.asarray(self.bounds.hi)
        free = np.all((a >= lo) & (a <= hi) & (b >= lo) & (b <= hi), axis=1)
        for box in self.obstacles:
            free &= ~_segments_hit_open_box(a, b, box)
        return free

    def points_free_batch(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        lo = np.asarray(self.bounds.lo)
        hi = np.asarray(self.bounds.hi)
        free = np.all((x >= lo) & (x <= hi), axis=1)
        for box in self.obstacles:
            inside = np.all((x > np.asarray(box.lo)) & (x < np.asarray(box.hi)), axis=1)
            free &= ~inside
        return free


def union_volume(boxes: Sequence[Box]) -> float:
    """Volume of a union of boxes, exact up to floating point."""
    if not boxes:
        return 0.0
    d = boxes[0].dimension
    cuts = [sorted({v for box in boxes for v in (box.lo[k], box.hi[k])}) for k in range(d)]
    total = 0.0
    for cell in itertools.product(*(range(len(c) - 1) for c in cuts)):
        lo = [cuts[k][i] for k, i in enumerate(cell)]
        hi = [cuts[k][i + 1] for k, i in enumerate(cell)]
        mid = [(l + h) / 2.0 for l, h in zip(lo, hi)]
        if any(box.contains_interior(mid) for box in boxes):
            total += math.prod(h - l for l, h in zip(lo, hi))
    return total


def _segments_hit_open_box(a: np.ndarray, b: np.ndarray, box: Box) -> np.ndarray:
    """Vectorised Box.segment_hits_interior."""
    m = a.shape[0]
    t_enter = np.zeros(m)
    t_exit = np.ones(m)
    possible = np.ones(m, dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        for k, (lo, hi) in enumerate(zip(box.lo, box.hi)):
            start = a[:, k]
            delta = b[:, k] - start
            flat = delta == 0.0
            possible &= ~flat | ((start > lo) & (start < hi))
            t_lo = (lo - start) / delta
            t_hi = (hi - start) / delta
            near = np.where(flat, -np.inf, np.minimum(t_lo, t_hi))
            far = np.where(flat, np.inf, np.maximum(t_lo, t_hi))
            t_enter = np.maximum(t_enter, near)
            t_exit = np.minimum(t_exit, far)
    return possible & (t_enter < t_exit)


class SampleStream:
    """
    Seeded stream of uniform draws.

    The generator is numpy's PCG64 seeded with the 64-bit integer seed; draws are
    consumed from it in order, so equal seeds give bit-identical sequences on every
    platform. ``counter`` counts accepted samples and ``draws`` every raw draw.
    """

    BLOCK = 4096

    def __init__(self, seed: int):
        if seed < 0 or seed >= 2**64:
            raise UsageError(f"Seed must fit in 64 unsigned bits, got {seed}")
        self.seed = int(seed)
        self.counter = 0
        self.draws = 0
        self._rng = np.random.Generator(np.random.PCG64(self.seed))
        self._buffer: List[float] = []
        self._cursor = 0
        self._digest = hashlib.blake2b(digest_size=16)

    def _next_unit(self) -> float:
        if self._cursor >= len(self._buffer):
            self._buffer = self._rng.random(self.BLOCK).tolist()
            self._cursor = 0
        value = self._buffer[self._cursor]
        self._cursor += 1
        return value

    def draw_in(self, box: Box) -> Point:
        """One raw uniform draw over ``box``."""
        self.draws += 1
        return Point(
            lo + (hi - lo) * self._next_unit() for lo, hi in zip(box.lo, box.hi)
        )

    def accept(self, x: Point) -> None:
        self.counter += 1
        self._digest.update(struct.pack(f"<{len(x)}d", *x))

    def hexdigest(self) -> str:
        """Digest of every accepted sample so far."""
        return self._digest.hexdigest()


def sample_free(
    world: WorldModel,
    stream: SampleStream,
    max_rejections: int = DEFAULT_MAX_REJECTIONS,
) -> Point:
    """Uniform sample of the free space by rejection."""
    for _ in range(max_rejections + 1):
        x = stream.draw_in(world.bounds)
        if world.obstacle_free_point(x):
            stream.accept(x)
            return x
    raise ConfigurationError(
        f"Free space has measure ~0: {max_rejections} consecutive rejections"
    )


def free_space_measure(world: WorldModel) -> float:
    return world.free_space_measure()


def obstacle_free_point(world: WorldModel, x: Sequence[float]) -> bool:
    return world.obstacle_free_point(x)


def obstacle_free_segment(world: WorldModel, a: Sequence[float], b: Sequence[float]) -> bool:
    return world.obstacle_free_segment(a, b)


def in_goal(world: WorldModel, x: Sequence[float]) -> bool:
    return world.in_goal(x)
