"""
Connection-radius parameters shared by RRG, RRT* and PRM*.
"""

import math
from dataclasses import dataclass
from typing import Optional

from scipy.special import gamma as gamma_function

from exceptions import UsageError
from geometry.world import WorldModel


def unit_ball_volume(d: int) -> float:
    """Volume of the unit ball in R^d: pi^(d/2) / Gamma(d/2 + 1)."""
    return float(math.pi ** (d / 2.0) / gamma_function(d / 2.0 + 1.0))


def gamma_lower_bound(world: WorldModel) -> float:
    """Threshold 2^d (1 + 1/d) mu(X_free) above which gamma gives asymptotic optimality."""
    d = world.dimension
    return (2.0 ** d) * (1.0 + 1.0 / d) * world.free_space_measure()


@dataclass(frozen=True)
class NearParams:
    d: int
    eta: float
    gamma: float
    zeta_d: Optional[float] = None

    def __post_init__(self):
        if self.d < 1:
            raise UsageError(f"Dimension must be positive, got {self.d}")
        if not self.eta > 0:
            raise UsageError(f"eta must be positive, got {self.eta}")
        if not self.gamma > 0:
            raise UsageError(f"gamma must be positive, got {self.gamma}")
        if self.zeta_d is None:
            object.__setattr__(self, "zeta_d", unit_ball_volume(self.d))
        elif not math.isclose(self.zeta_d, unit_ball_volume(self.d), rel_tol=1e-12):
            raise UsageError(f"zeta_d {self.zeta_d} is not the unit-ball volume in R^{self.d}")

    @classmethod
    def for_world(
        cls,
        world: WorldModel,
        eta: Optional[float] = None,
        gamma: Optional[float] = None,
        eta_fraction: float = 0.1,
        gamma_multiplier: float = 1.1,
    ) -> "NearParams":
        """Scenario defaults: eta a fraction of the bounds diagonal, gamma a multiple of gamma_L."""
        if eta is None:
            eta = eta_fraction * world.bounds.diagonal
        if gamma is None:
            gamma = gamma_multiplier * gamma_lower_bound(world)
        return cls(d=world.dimension, eta=eta, gamma=gamma)

    def satisfies_optimality(self, world: WorldModel) -> bool:
        return self.gamma > gamma_lower_bound(world)

    def radius(self, n: int) -> float:
        return near_radius(self, n)


def near_radius(params: NearParams, n: int) -> float:
    """
    Radius of the Near ball for a graph with ``n`` vertices.

    The ball volume is min{gamma log n / n, zeta_d eta^d}; at n = 1 the formula
    collapses to 0 and eta is returned instead.
    """
    if n < 1:
        raise UsageError(f"Vertex count must be at least 1, got {n}")
    if n == 1:
        return params.eta
    shrinking = (params.gamma / params.zeta_d * math.log(n) / n) ** (1.0 / params.d)
    return min(shrinking, params.eta)


def prm_radius(params: NearParams, n: int) -> float:
    """Uncapped connection radius (gamma / zeta_d * log n / n)^(1/d) used by PRM*."""
    if n < 2:
        raise UsageError(f"PRM* needs at least 2 samples, got {n}")
    return (params.gamma / params.zeta_d * math.log(n) / n) ** (1.0 / params.d)
