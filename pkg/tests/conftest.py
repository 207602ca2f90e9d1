"""
Pytest configuration and fixtures.
"""
import pytest

from geometry.cost_model import CostKind, CostModel, WeightedRegion
from geometry.primitives import Point
from geometry.world import Box, WorldModel
from planners.near_params import NearParams
from services.scenario_service import load_scenario


def make_world(bounds, obstacles=(), goal=None, x_init=(0.1, 0.1)):
    """WorldModel from interval lists, as written in scenario files."""
    return WorldModel(
        bounds=Box.from_intervals(bounds),
        obstacles=tuple(Box.from_intervals(o) for o in obstacles),
        goal=Box.from_intervals(goal) if goal is not None else Box.from_intervals([[0.8, 0.9], [0.8, 0.9]]),
        x_init=Point(x_init),
    )


@pytest.fixture
def unit_world():
    """Empty unit square, start (0.1, 0.1), goal [0.8, 0.9]^2."""
    return make_world([[0.0, 1.0], [0.0, 1.0]])


@pytest.fixture
def block_world():
    """Unit square with the open obstacle [0.4, 0.6]^2."""
    return make_world([[0.0, 1.0], [0.0, 1.0]], obstacles=[[[0.4, 0.6], [0.4, 0.6]]])


@pytest.fixture
def euclidean():
    return CostModel.euclidean()


@pytest.fixture
def band_cost():
    """Weight 2 on the band y in [0.4, 0.6], 1 elsewhere."""
    return CostModel(
        kind=CostKind.LINE_INTEGRAL,
        regions=(WeightedRegion(Box.from_intervals([[0.0, 1.0], [0.4, 0.6]]), 2.0),),
        default_weight=1.0,
    )


@pytest.fixture
def unit_params(unit_world):
    return NearParams.for_world(unit_world, eta=0.1)


@pytest.fixture
def debug_config():
    """Planner settings with per-iteration invariant checks and exact RRG costs."""
    return {
        "index_backend": "kd",
        "kd_epsilon": 0.0,
        "kd_rebuild_factor": 2.0,
        "rrg_query_stride": 1,
        "max_rejections": 1_000_000,
        "debug_invariants": True,
    }


@pytest.fixture(scope="session")
def scenario1():
    return load_scenario("scenario1_empty")


@pytest.fixture(scope="session")
def scenario2():
    return load_scenario("scenario2_obstacles_two_homotopy")


@pytest.fixture(scope="session")
def scenario3():
    return load_scenario("scenario3_costfield")
