"""
Grid reference for the optimal path cost of planar scenarios.

Used by acceptance checks: Dijkstra over free grid cells with a 16-neighbour
stencil, each move priced by the cost of its center-to-center chord.
"""

import math
from typing import Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from configs.logging_config import get_logger
from exceptions import UsageError
from geometry.cost_model import CostModel
from geometry.world import Box, WorldModel

from .utils import PerformanceTimer

logger = get_logger(__name__)

MIN_RESOLUTION = 64

# Knight moves on top of the 8-neighbourhood keep the metric error under ~2.8%.
STENCIL: Tuple[Tuple[int, int], ...] = (
    (1, 0), (-1, 0), (0, 1), (0, -1),
    (1, 1), (1, -1), (-1, 1), (-1, -1),
    (1, 2), (2, 1), (-1, 2), (-2, 1),
    (1, -2), (2, -1), (-1, -2), (-2, -1),
)


def _goal_mask(world: WorldModel, points: np.ndarray) -> np.ndarray:
    goal = world.goal
    if isinstance(goal, Box):
        return np.all((points >= np.asarray(goal.lo)) & (points <= np.asarray(goal.hi)), axis=1)
    offsets = points - np.asarray(goal.center)
    return np.sum(offsets * offsets, axis=1) <= goal.radius * goal.radius


def free_cell_mask(world: WorldModel, resolution: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Cell centers and the free-cell mask of a resolution x resolution grid.

    A cell is free iff its center and its four corners are free points.

    Returns:
        (centers with shape (resolution, resolution, 2), boolean mask indexed [i, j])
    """
    lo = np.asarray(world.bounds.lo, dtype=float)
    hi = np.asarray(world.bounds.hi, dtype=float)
    step = (hi - lo) / resolution

    xs = lo[0] + (np.arange(resolution) + 0.5) * step[0]
    ys = lo[1] + (np.arange(resolution) + 0.5) * step[1]
    centers = np.stack(np.meshgrid(xs, ys, indexing="ij"), axis=-1)

    node_x = lo[0] + np.arange(resolution + 1) * step[0]
    node_y = lo[1] + np.arange(resolution + 1) * step[1]
    nodes = np.stack(np.meshgrid(node_x, node_y, indexing="ij"), axis=-1)
    node_free = world.points_free_batch(nodes.reshape(-1, 2)).reshape(resolution + 1, resolution + 1)
    center_free = world.points_free_batch(centers.reshape(-1, 2)).reshape(resolution, resolution)

    mask = (
        center_free
        & node_free[:-1, :-1]
        & node_free[1:, :-1]
        & node_free[:-1, 1:]
        & node_free[1:, 1:]
    )
    return centers, mask


def oracle_optimal_cost(world: WorldModel, cost: CostModel, resolution: int = 512) -> float:
    """
    Grid-optimal cost from x_init to the goal, an upper bound on the optimum.

    x_init is joined to the free cells of its 3 x 3 neighbourhood by exact
    chords; goal cells are the free cells whose center lies in the goal.

    Args:
        world: Planar problem instance
        cost: Path-cost functional
        resolution: Cells per axis, at least 64

    Returns:
        Cheapest grid path cost, +inf when the goal is unreachable on the grid
    """
    if world.dimension != 2:
        raise UsageError(f"The grid oracle is planar only, got dimension {world.dimension}")
    if resolution < MIN_RESOLUTION:
        raise UsageError(f"Oracle resolution must be at least {MIN_RESOLUTION}, got {resolution}")
    if world.in_goal(world.x_init):
        return 0.0

    with PerformanceTimer("oracle_optimal_cost", resolution=resolution):
        centers, mask = free_cell_mask(world, resolution)
        n_cells = resolution * resolution
        source = n_cells
        cell_id = np.arange(n_cells).reshape(resolution, resolution)

        rows, cols, weights = [], [], []
        for di, dj in STENCIL:
            i0, i1 = max(0, -di), resolution - max(0, di)
            j0, j1 = max(0, -dj), resolution - max(0, dj)
            both = mask[i0:i1, j0:j1] & mask[i0 + di:i1 + di, j0 + dj:j1 + dj]
            src = cell_id[i0:i1, j0:j1][both]
            dst = cell_id[i0 + di:i1 + di, j0 + dj:j1 + dj][both]
            a = centers.reshape(-1, 2)[src]
            b = centers.reshape(-1, 2)[dst]
            chord_free = world.segments_free_batch(a, b)
            rows.append(src[chord_free])
            cols.append(dst[chord_free])
            weights.append(cost.segment_costs_batch(a[chord_free], b[chord_free]))

        start_cells = _start_cells(world, centers, mask, resolution)
        if start_cells.size == 0:
            logger.warning("x_init has no free grid cell in reach", resolution=resolution)
            return math.inf
        start_points = centers.reshape(-1, 2)[start_cells]
        x_init = np.tile(np.asarray(world.x_init, dtype=float), (start_cells.size, 1))
        rows.append(np.full(start_cells.size, source))
        cols.append(start_cells)
        # csgraph drops zero weights, so a start on a cell center gets a tiny positive one.
        weights.append(np.maximum(cost.segment_costs_batch(x_init, start_points), 1e-300))

        graph = csr_matrix(
            (np.concatenate(weights), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n_cells + 1, n_cells + 1),
        )
        dist = dijkstra(graph, directed=True, indices=source)

        goal_cells = np.flatnonzero(mask.reshape(-1) & _goal_mask(world, centers.reshape(-1, 2)))
        best = float(np.min(dist[goal_cells])) if goal_cells.size else math.inf

    logger.info(
        "Grid oracle solved",
        resolution=resolution,
        free_cells=int(mask.sum()),
        goal_cells=int(goal_cells.size),
        cost=best,
    )
    return best


def _start_cells(world: WorldModel, centers: np.ndarray, mask: np.ndarray, resolution: int) -> np.ndarray:
    lo = np.asarray(world.bounds.lo, dtype=float)
    hi = np.asarray(world.bounds.hi, dtype=float)
    step = (hi - lo) / resolution
    home = np.clip(((np.asarray(world.x_init) - lo) // step).astype(int), 0, resolution - 1)

    candidates = []
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            i, j = home[0] + di, home[1] + dj
            if 0 <= i < resolution and 0 <= j < resolution and mask[i, j]:
                candidates.append(i * resolution + j)
    if not candidates:
        return np.empty(0, dtype=int)
    candidates = np.asarray(candidates)
    points = centers.reshape(-1, 2)[candidates]
    x_init = np.tile(np.asarray(world.x_init, dtype=float), (candidates.size, 1))
    return candidates[world.segments_free_batch(x_init, points)]
