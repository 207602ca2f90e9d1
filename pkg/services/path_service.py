"""
Best-path extraction from planner graphs.
"""

from geometry.cost_model import CostModel
from geometry.primitives import Polyline
from geometry.world import WorldModel
from models import PathResult
from planners.graph import ROOT_ID, PlannerGraph


def best_tree_path(graph: PlannerGraph, world: WorldModel, cost: CostModel) -> PathResult:
    """
    Cheapest root-to-goal path along parent pointers.

    Args:
        graph: Tree-mode planner graph
        world: Problem instance, used for goal membership
        cost: Path-cost functional

    Returns:
        PathResult with found=False and cost=+inf when no vertex is in the goal
    """
    goal_ids = [v for v in range(len(graph)) if world.in_goal(graph.vertices[v])]
    if not goal_ids:
        return PathResult.not_found()

    best_id = min(goal_ids, key=lambda v: (graph.cost_to_come[v], v))
    waypoints = graph.path_to(best_id)
    return PathResult(waypoints=waypoints, cost=cost.path_cost(waypoints), found=True)


def best_graph_path(graph: PlannerGraph, world: WorldModel, cost: CostModel) -> PathResult:
    """
    Exact shortest path from x_init to the cheapest goal vertex.

    Args:
        graph: RRG or PRM* graph
        world: Problem instance, used for goal membership
        cost: Path-cost functional

    Returns:
        PathResult; ties between goal vertices go to the smallest id
    """
    dist, pred = graph.shortest_costs(cost)
    goal_ids = [v for v in dist if world.in_goal(graph.vertices[v])]
    if not goal_ids:
        return PathResult.not_found()

    best_id = min(goal_ids, key=lambda v: (dist[v], v))
    chain = [best_id]
    while chain[-1] != ROOT_ID:
        chain.append(pred[chain[-1]])
    chain.reverse()
    waypoints = Polyline(tuple(graph.vertices[v] for v in chain))
    return PathResult(waypoints=waypoints, cost=cost.path_cost(waypoints), found=True)


def best_path(graph: PlannerGraph, world: WorldModel, cost: CostModel) -> PathResult:
    """Dispatch on the graph mode."""
    if graph.is_tree:
        return best_tree_path(graph, world, cost)
    return best_graph_path(graph, world, cost)
