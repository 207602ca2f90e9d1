"""
Sampling-based planners: RRT, RRG, RRT* and the PRM* roadmap builder.
"""

from .base_planner import BasePlanner
from .graph import GraphMode, NO_PARENT, PlannerGraph, ROOT_ID
from .near_params import NearParams, gamma_lower_bound, near_radius, prm_radius, unit_ball_volume
from .prm_star import prm_star_build
from .rrg_planner import RRGPlanner
from .rrt_planner import RRTPlanner
from .rrt_star_planner import RRTStarPlanner
from .runner import PLANNER_CLASSES, PlannerKind, create_planner, run

__all__ = [
    "BasePlanner",
    "GraphMode",
    "NO_PARENT",
    "NearParams",
    "PLANNER_CLASSES",
    "PlannerGraph",
    "PlannerKind",
    "RRGPlanner",
    "RRTPlanner",
    "RRTStarPlanner",
    "ROOT_ID",
    "create_planner",
    "gamma_lower_bound",
    "near_radius",
    "prm_radius",
    "prm_star_build",
    "run",
    "unit_ball_volume",
]
