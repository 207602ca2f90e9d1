"""
Scenario and experiment file loading.

Bundled scenarios live in ``settings.scenarios_dir`` and can be named without a
path; anything else is read from disk.
"""

import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from configs.logging_config import get_logger
from configs.settings import get_settings
from exceptions import ConfigurationError, ScenarioError, UsageError
from geometry.cost_model import CostModel
from geometry.world import WorldModel
from models import ExperimentSpec, ScenarioFile
from planners.near_params import NearParams, gamma_lower_bound

from .utils import load_config

logger = get_logger(__name__)

BUNDLED_SCENARIOS = (
    "scenario1_empty",
    "scenario2_obstacles_two_homotopy",
    "scenario3_costfield",
)


@dataclass(frozen=True)
class Scenario:
    """A validated scenario file with its world and cost model built."""

    name: str
    path: str
    spec: ScenarioFile
    world: WorldModel
    cost: CostModel

    def near_params(
        self,
        eta: Optional[float] = None,
        gamma_multiplier: Optional[float] = None,
    ) -> NearParams:
        """Planner constants; flags override the scenario defaults, which override settings."""
        planner_settings = get_settings().planner
        if eta is None:
            eta = self.spec.planner.eta
        if gamma_multiplier is None:
            gamma_multiplier = self.spec.planner.gamma_multiplier
        return NearParams.for_world(
            self.world,
            eta=eta,
            eta_fraction=planner_settings.eta_fraction,
            gamma_multiplier=gamma_multiplier,
        )

    def report(self) -> Dict[str, Any]:
        """Free-space measure, gamma threshold, default constants and cost weights."""
        params = self.near_params()
        cost_spec = self.spec.cost
        return {
            "name": self.name,
            "dimension": self.world.dimension,
            "free_space_measure": self.world.free_space_measure(),
            "gamma_lower_bound": gamma_lower_bound(self.world),
            "default_gamma": params.gamma,
            "default_eta": params.eta,
            "asymptotically_optimal": params.satisfies_optimality(self.world),
            "cost_kind": cost_spec.kind,
            "region_weights": [region.weight for region in cost_spec.regions],
            "default_weight": cost_spec.default_weight,
        }


def list_bundled() -> List[str]:
    """Names of the scenarios shipped with the toolkit."""
    directory = get_settings().scenarios_dir
    return [name for name in BUNDLED_SCENARIOS if os.path.isfile(os.path.join(directory, f"{name}.json"))]


def resolve_scenario_path(reference: str, base_dir: Optional[str] = None) -> str:
    """Map a bundled name or a (possibly relative) path onto an existing file."""
    candidates = [reference]
    if base_dir and not os.path.isabs(reference):
        candidates.insert(0, os.path.join(base_dir, reference))
    if not reference.endswith((".json", ".yml", ".yaml")):
        candidates.append(os.path.join(get_settings().scenarios_dir, f"{reference}.json"))
    for candidate in candidates:
        if os.path.isfile(candidate):
            return candidate
    raise ScenarioError(f"Scenario not found: {reference}", problems=[f"no file at {reference}"])


def _validation_problems(error: ValidationError) -> List[str]:
    problems = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        problems.append(f"{location}: {item['msg']}")
    return problems


def load_scenario(reference: str, base_dir: Optional[str] = None) -> Scenario:
    """
    Load and validate a scenario.

    Args:
        reference: Bundled scenario name or file path
        base_dir: Directory relative paths are tried against first

    Returns:
        Scenario with its world and cost model

    Raises:
        ScenarioError: The file is malformed or describes an invalid problem
    """
    path = resolve_scenario_path(reference, base_dir)
    try:
        raw = load_config(path)
    except ConfigurationError as e:
        raise ScenarioError(str(e), problems=[str(e)]) from e

    try:
        spec = ScenarioFile.model_validate(raw)
    except ValidationError as e:
        problems = _validation_problems(e)
        logger.warning("Scenario failed validation", path=path, problems=problems)
        raise ScenarioError(f"Invalid scenario {path}", problems=problems) from e

    try:
        world = spec.build_world()
        cost = spec.build_cost_model()
        _check_cost_regions(world, cost)
    except (ConfigurationError, UsageError) as e:
        logger.warning("Scenario describes an invalid problem", path=path, error=str(e))
        raise ScenarioError(f"Invalid scenario {path}", problems=[str(e)]) from e

    name = spec.name or os.path.splitext(os.path.basename(path))[0]
    logger.debug("Scenario loaded", name=name, path=path)
    return Scenario(name=name, path=path, spec=spec, world=world, cost=cost)


def _check_cost_regions(world: WorldModel, cost: CostModel) -> None:
    for region in cost.regions:
        if region.box.dimension != world.dimension:
            raise ConfigurationError("Cost region dimension does not match the world")
        if world.bounds.intersection(region.box) is None:
            raise ConfigurationError(
                f"Cost region {region.box.to_intervals()} lies outside the bounds"
            )


def validate_scenario(reference: str) -> Dict[str, Any]:
    """Load a scenario and return its report; raises ScenarioError listing the problems."""
    return load_scenario(reference).report()


def resolve_experiment_path(reference: str) -> str:
    """Map a bundled experiment name or a file path onto an existing file."""
    candidates = [reference]
    if not reference.endswith((".json", ".yml", ".yaml")):
        directory = get_settings().experiments_dir
        candidates += [os.path.join(directory, f"{reference}{ext}") for ext in (".json", ".yaml")]
    for candidate in candidates:
        if os.path.isfile(candidate):
            return candidate
    raise ScenarioError(f"Experiment spec not found: {reference}", problems=[f"no file at {reference}"])


def load_experiment(reference: str) -> ExperimentSpec:
    """
    Load an experiment spec from JSON or YAML.

    Trial count, iteration count, stride and base seed fall back to the bench
    settings when the file leaves them out.

    Args:
        reference: Bundled experiment name or file path

    Raises:
        ScenarioError: The file is malformed or the experiment is invalid
    """
    path = resolve_experiment_path(reference)
    defaults = get_settings().get_bench_config()
    defaults.pop("oracle_resolution")
    try:
        raw = load_config(path)
        return ExperimentSpec.model_validate({**defaults, **raw})
    except ConfigurationError as e:
        raise ScenarioError(str(e), problems=[str(e)]) from e
    except ValidationError as e:
        raise ScenarioError(f"Invalid experiment spec {path}", problems=_validation_problems(e)) from e


__all__ = [
    "BUNDLED_SCENARIOS",
    "Scenario",
    "list_bundled",
    "load_experiment",
    "load_scenario",
    "resolve_experiment_path",
    "resolve_scenario_path",
    "validate_scenario",
]
