"""
Data models for the planning toolkit: run results, benchmark records and the
pydantic schemas of scenario and experiment files.
"""

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Literal, Optional

import pandas as pd
from pydantic import BaseModel, Field, field_validator, model_validator

from geometry.cost_model import CostKind, CostModel, WeightedRegion
from geometry.primitives import Point, Polyline
from geometry.world import BallGoal, Box, WorldModel

if TYPE_CHECKING:
    from planners.graph import PlannerGraph

@dataclass(frozen=True)
class PathResult:
    """Best feasible path held by a planner graph."""

    waypoints: Optional[Polyline]
    cost: float
    found: bool

    @classmethod
    def not_found(cls) -> "PathResult":
        return cls(waypoints=None, cost=math.inf, found=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "found": self.found,
            "cost": self.cost if self.found else None,
            "waypoints": [list(p) for p in self.waypoints.waypoints] if self.found else [],
        }


@dataclass
class RunResult:
    """Outcome of one planner run on one sample stream."""

    kind: str
    seed: int
    iterations: int
    graph: "PlannerGraph"
    best_costs: List[float]
    sample_digest: str
    metrics: Dict[str, int] = field(default_factory=dict)

    @property
    def final_cost(self) -> float:
        return self.best_costs[-1] if self.best_costs else math.inf

    @property
    def vertex_counts(self) -> List[int]:
        return self.graph.vertex_counts

    @property
    def obstacle_free_calls(self) -> List[int]:
        return self.graph.obstacle_free_calls

    @property
    def wall_time(self) -> List[float]:
        return self.graph.wall_time

    def summary(self) -> Dict[str, Any]:
        """JSON-ready summary; wall-time is left out so reruns are byte-identical."""
        return {
            "planner": self.kind,
            "seed": self.seed,
            "iterations": self.iterations,
            "final_best_cost": self.final_cost if math.isfinite(self.final_cost) else None,
            "vertices": len(self.graph),
            "edges": len(self.graph.undirected_edges()),
            "goal_vertices": len(self.graph.goal_ids),
            "obstacle_free_calls": int(sum(self.graph.obstacle_free_calls)),
            "metrics": dict(sorted(self.metrics.items())),
            "sample_digest": self.sample_digest,
        }


@dataclass
class TrialRecord:
    """
    Stride samples of one planner in one trial.

    Holds plain lists only so it pickles cheaply across worker processes.
    ``obstacle_free_calls`` counts the calls made inside each stride window;
    ``checkpoints`` are the iterations tabulated by the complexity report.
    """

    trial: int
    seed: int
    planner: str
    iterations: List[int]
    costs: List[float]
    vertex_counts: List[int]
    obstacle_free_calls: List[int]
    calls_per_log_n: List[float]
    wall_time: List[float]
    sample_digest: str
    checkpoints: List[int] = field(default_factory=list)
    checkpoint_calls_per_log_n: List[float] = field(default_factory=list)
    checkpoint_wall_time: List[float] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        """Raw per-trial rows, as written to the trial CSV files."""
        return pd.DataFrame(
            {
                "iteration": self.iterations,
                "planner": self.planner,
                "cost": self.costs,
                "vertices": self.vertex_counts,
                "obstaclefree_calls": self.obstacle_free_calls,
                "walltime_s": self.wall_time,
            }
        )


@dataclass
class AggregateSeries:
    """Across-trial statistics at the recorded strides, one row per (iteration, planner)."""

    frame: pd.DataFrame

    COLUMNS = (
        "iteration",
        "planner",
        "mean_cost",
        "var_cost",
        "mean_obstaclefree_per_log_n",
        "mean_walltime_s",
        "reach_rate",
        "walltime_ratio_vs_rrt",
    )

    @classmethod
    def empty(cls) -> "AggregateSeries":
        return cls(frame=pd.DataFrame(columns=list(cls.COLUMNS)))

    def for_planner(self, planner: str) -> pd.DataFrame:
        return self.frame[self.frame["planner"] == planner].reset_index(drop=True)


@dataclass
class ExperimentResult:
    aggregate: AggregateSeries
    trials: List[TrialRecord]
    complexity: pd.DataFrame
    oracle_cost: Optional[float] = None


# Scenario and experiment file schemas


class GoalSpec(BaseModel):
    type: Literal["box", "ball"]
    bounds: Optional[List[List[float]]] = None
    center: Optional[List[float]] = None
    radius: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def check_shape(self) -> "GoalSpec":
        if self.type == "box" and self.bounds is None:
            raise ValueError("box goal needs 'bounds'")
        if self.type == "ball" and (self.center is None or self.radius is None):
            raise ValueError("ball goal needs 'center' and 'radius'")
        return self

    def build(self):
        if self.type == "box":
            return Box.from_intervals(self.bounds)
        return BallGoal(Point(self.center), float(self.radius))


class CostRegionSpec(BaseModel):
    box: List[List[float]]
    weight: float = Field(gt=0)


class CostSpec(BaseModel):
    kind: Literal["euclidean_length", "line_integral"] = "euclidean_length"
    regions: List[CostRegionSpec] = Field(default_factory=list)
    default_weight: float = Field(default=1.0, gt=0)

    def build(self) -> CostModel:
        return CostModel(
            kind=CostKind(self.kind),
            regions=tuple(
                WeightedRegion(Box.from_intervals(r.box), r.weight) for r in self.regions
            ),
            default_weight=self.default_weight,
        )


class PlannerDefaults(BaseModel):
    eta: Optional[float] = Field(default=None, gt=0)
    gamma_multiplier: float = Field(default=1.1, gt=0)
    iterations: int = Field(default=20000, ge=1)


class ScenarioFile(BaseModel):
    """Scenario JSON: world, cost functional and planner defaults."""

    name: Optional[str] = None
    description: Optional[str] = None
    dimension: int = Field(ge=2)
    bounds: List[List[float]]
    obstacles: List[List[List[float]]] = Field(default_factory=list)
    goal: GoalSpec
    x_init: List[float]
    cost: CostSpec = Field(default_factory=CostSpec)
    planner: PlannerDefaults = Field(default_factory=PlannerDefaults)

    @model_validator(mode="after")
    def check_dimensions(self) -> "ScenarioFile":
        d = self.dimension
        boxes = [("bounds", self.bounds)]
        boxes += [(f"obstacles[{i}]", b) for i, b in enumerate(self.obstacles)]
        boxes += [(f"cost.regions[{i}]", r.box) for i, r in enumerate(self.cost.regions)]
        if self.goal.bounds is not None:
            boxes.append(("goal.bounds", self.goal.bounds))
        for label, box in boxes:
            if len(box) != d or any(len(interval) != 2 for interval in box):
                raise ValueError(f"{label} must hold {d} [lo, hi] intervals")
        if len(self.x_init) != d:
            raise ValueError(f"x_init must have {d} coordinates")
        if self.goal.center is not None and len(self.goal.center) != d:
            raise ValueError(f"goal.center must have {d} coordinates")
        if self.cost.kind == "euclidean_length" and self.cost.regions:
            raise ValueError("euclidean_length cost does not take regions")
        return self

    def build_world(self) -> WorldModel:
        return WorldModel(
            bounds=Box.from_intervals(self.bounds),
            obstacles=tuple(Box.from_intervals(b) for b in self.obstacles),
            goal=self.goal.build(),
            x_init=Point(self.x_init),
        )

    def build_cost_model(self) -> CostModel:
        return self.cost.build()


class ExperimentSpec(BaseModel):
    """Monte-Carlo experiment definition; trials run with seed base_seed + t."""

    scenario: str
    planners: List[Literal["rrt", "rrg", "rrt_star"]] = Field(min_length=1)
    iterations: int = Field(ge=1)
    trials: int = Field(ge=1)
    base_seed: int = Field(default=0, ge=0)
    record_stride: int = Field(default=100, ge=1)
    oracle_resolution: Optional[int] = Field(default=None, ge=64)
    record_walltime: bool = True
    rrg_query_stride: Optional[int] = Field(default=None, ge=1)
    gamma_multiplier: Optional[float] = Field(default=None, gt=0)
    eta: Optional[float] = Field(default=None, gt=0)
    complexity_points: Optional[List[int]] = None

    @field_validator("planners")
    @classmethod
    def unique_planners(cls, value: List[str]) -> List[str]:
        if len(set(value)) != len(value):
            raise ValueError("planners must not repeat")
        return value

    @model_validator(mode="after")
    def stride_divides_iterations(self) -> "ExperimentSpec":
        if self.iterations % self.record_stride != 0:
            raise ValueError(
                f"record_stride {self.record_stride} does not divide iterations {self.iterations}"
            )
        if self.complexity_points is not None:
            bad = [n for n in self.complexity_points if not 1 <= n <= self.iterations]
            if bad:
                raise ValueError(f"complexity_points {bad} fall outside 1..{self.iterations}")
        return self

    @property
    def stride_points(self) -> List[int]:
        return list(range(self.record_stride, self.iterations + 1, self.record_stride))
