"""
Path-cost functionals: Euclidean length, or the line integral of a
piecewise-constant weight field over axis-aligned regions.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Tuple

import numpy as np

from exceptions import ConfigurationError
from geometry.primitives import Polyline, check_dimension, distance
from geometry.world import Box


class CostKind(Enum):
    EUCLIDEAN_LENGTH = "euclidean_length"
    LINE_INTEGRAL = "line_integral"


@dataclass(frozen=True)
class WeightedRegion:
    box: Box
    weight: float


@dataclass(frozen=True)
class CostModel:
    """
    Cost of a path.

    For ``LINE_INTEGRAL`` the weight of a region applies on the box taken
    half-open per axis (``lo <= x < hi``), so a segment running along a face
    shared by two regions is counted once.
    """

    kind: CostKind = CostKind.EUCLIDEAN_LENGTH
    regions: Tuple[WeightedRegion, ...] = field(default_factory=tuple)
    default_weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        if not self.default_weight > 0:
            raise ConfigurationError(
                f"default_weight must be positive, got {self.default_weight}"
            )
        for region in self.regions:
            if not region.weight > 0:
                raise ConfigurationError(
                    f"Region weights must be positive, got {region.weight}"
                )
        for i, first in enumerate(self.regions):
            for second in self.regions[i + 1:]:
                if first.box.interiors_overlap(second.box):
                    raise ConfigurationError(
                        f"Cost regions {first.box.to_intervals()} and "
                        f"{second.box.to_intervals()} overlap"
                    )
        if self.kind is CostKind.EUCLIDEAN_LENGTH and self.regions:
            raise ConfigurationError("Euclidean cost does not take weighted regions")

    @classmethod
    def euclidean(cls) -> "CostModel":
        return cls(CostKind.EUCLIDEAN_LENGTH)

    @property
    def max_weight(self) -> float:
        return max([self.default_weight, *(r.weight for r in self.regions)])

    def segment_cost(self, a: Sequence[float], b: Sequence[float]) -> float:
        """Cost of the straight segment from ``a`` to ``b``."""
        check_dimension(a, b)
        length = distance(a, b)
        if self.kind is CostKind.EUCLIDEAN_LENGTH:
            return length

        weighted = self.default_weight
        for region in self.regions:
            fraction = _half_open_fraction(a, b, region.box)
            if fraction > 0.0:
                weighted += fraction * (region.weight - self.default_weight)
        return length * weighted

    def path_cost(self, path: Polyline) -> float:
        """Sum of segment costs; the degenerate single-point path costs 0."""
        total = 0.0
        for a, b in zip(path.waypoints, path.waypoints[1:]):
            total += self.segment_cost(a, b)
        return total

    def weight_at(self, x: Sequence[float]) -> float:
        """Field value at a point, under the same half-open convention."""
        if self.kind is CostKind.EUCLIDEAN_LENGTH:
            return 1.0
        for region in self.regions:
            if all(lo <= v < hi for v, lo, hi in zip(x, region.box.lo, region.box.hi)):
                return region.weight
        return self.default_weight

    def segment_costs_batch(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Vectorised segment_cost over rows of ``a`` and ``b``."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        length = np.sqrt(np.sum((b - a) ** 2, axis=1))
        if self.kind is CostKind.EUCLIDEAN_LENGTH:
            return length
        weighted = np.full(a.shape[0], self.default_weight)
        for region in self.regions:
            fraction = _half_open_fraction_batch(a, b, region.box)
            weighted += fraction * (region.weight - self.default_weight)
        return length * weighted


def _half_open_fraction(a: Sequence[float], b: Sequence[float], box: Box) -> float:
    """Parametric length fraction of [a, b] inside the half-open box."""
    t_enter, t_exit = 0.0, 1.0
    for start, end, lo, hi in zip(a, b, box.lo, box.hi):
        delta = end - start
        if delta == 0.0:
            if not lo <= start < hi:
                return 0.0
            continue
        t_lo = (lo - start) / delta
        t_hi = (hi - start) / delta
        if t_lo > t_hi:
            t_lo, t_hi = t_hi, t_lo
        t_enter = max(t_enter, t_lo)
        t_exit = min(t_exit, t_hi)
        if t_enter >= t_exit:
            return 0.0
    return t_exit - t_enter


def _half_open_fraction_batch(a: np.ndarray, b: np.ndarray, box: Box) -> np.ndarray:
    m = a.shape[0]
    t_enter = np.zeros(m)
    t_exit = np.ones(m)
    inside = np.ones(m, dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        for k, (lo, hi) in enumerate(zip(box.lo, box.hi)):
            start = a[:, k]
            delta = b[:, k] - start
            flat = delta == 0.0
            inside &= ~flat | ((start >= lo) & (start < hi))
            t_lo = (lo - start) / delta
            t_hi = (hi - start) / delta
            t_enter = np.maximum(t_enter, np.where(flat, -np.inf, np.minimum(t_lo, t_hi)))
            t_exit = np.minimum(t_exit, np.where(flat, np.inf, np.maximum(t_lo, t_hi)))
    return np.where(inside, np.clip(t_exit - t_enter, 0.0, None), 0.0)


def segment_cost(model: CostModel, a: Sequence[float], b: Sequence[float]) -> float:
    return model.segment_cost(a, b)


def path_cost(model: CostModel, path: Polyline) -> float:
    return model.path_cost(path)
