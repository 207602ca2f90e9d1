"""
Test cases for RRT, RRG, RRT* and the PRM* roadmap.
"""
import math

import pytest

from conftest import make_world
from exceptions import InvariantViolation, UsageError
from geometry.cost_model import CostKind, CostModel, WeightedRegion
from geometry.primitives import Point, distance, squared_distance, steer
from geometry.world import Box, SampleStream, sample_free
from planners import (
    NearParams,
    PlannerKind,
    RRGPlanner,
    RRTPlanner,
    RRTStarPlanner,
    create_planner,
    gamma_lower_bound,
    near_radius,
    prm_radius,
    prm_star_build,
    run,
)


def undirected(graph):
    return set(graph.undirected_edges())


def test_near_radius_example():
    """d=2, gamma=6, eta=0.5, n=100 gives a radius of about 0.2966."""
    params = NearParams(d=2, eta=0.5, gamma=6.0)
    assert params.zeta_d == pytest.approx(math.pi)
    assert near_radius(params, 100) == pytest.approx(0.2966, abs=1e-4)
    assert near_radius(params, 1) == 0.5
    assert near_radius(params, 2) == 0.5
    with pytest.raises(UsageError):
        near_radius(params, 0)


def test_near_radius_is_non_increasing_once_shrinking():
    params = NearParams(d=3, eta=1.0, gamma=10.0)
    radii = [near_radius(params, n) for n in range(3, 5000)]
    assert all(a >= b for a, b in zip(radii, radii[1:]))
    assert prm_radius(params, 4000) >= near_radius(params, 4000)


def test_gamma_lower_bound_unit_square(unit_world):
    """2^d (1 + 1/d) mu = 4 * 1.5 * 1 on the empty unit square."""
    assert gamma_lower_bound(unit_world) == pytest.approx(6.0)
    params = NearParams.for_world(unit_world)
    assert params.gamma == pytest.approx(6.6)
    assert params.eta == pytest.approx(0.1 * math.sqrt(2.0))
    assert params.satisfies_optimality(unit_world)
    assert not NearParams(d=2, eta=0.1, gamma=6.0).satisfies_optimality(unit_world)


def test_near_params_validation():
    with pytest.raises(UsageError):
        NearParams(d=2, eta=0.0, gamma=1.0)
    with pytest.raises(UsageError):
        NearParams(d=2, eta=1.0, gamma=-1.0)
    with pytest.raises(UsageError):
        NearParams(d=2, eta=1.0, gamma=1.0, zeta_d=3.0)


def test_rrt_extend_example(euclidean):
    """Root (0, 0), sample (5, 0), eta = 1: the new vertex is (1, 0) with the root as parent."""
    world = make_world([[0.0, 10.0], [0.0, 10.0]], goal=[[8.0, 9.0], [8.0, 9.0]], x_init=(0.0, 0.0))
    planner = RRTPlanner(world, euclidean, NearParams(d=2, eta=1.0, gamma=10.0))
    new_id = planner.step(Point([5.0, 0.0]))
    assert new_id == 1
    assert planner.graph.vertices[1] == Point([1.0, 0.0])
    assert planner.graph.parent[1] == 0
    assert planner.graph.cost_to_come[1] == pytest.approx(1.0)
    assert planner.graph.obstacle_free_calls == [1]


def test_blocked_first_sample_leaves_only_root(euclidean):
    """A blocked extension adds nothing and the best cost stays infinite."""
    world = make_world(
        [[0.0, 10.0], [0.0, 10.0]],
        obstacles=[[[0.5, 0.7], [0.5, 1.5]]],
        goal=[[8.0, 9.0], [8.0, 9.0]],
        x_init=(0.0, 1.0),
    )
    params = NearParams(d=2, eta=1.0, gamma=10.0)
    for planner_class in (RRTPlanner, RRGPlanner, RRTStarPlanner):
        planner = planner_class(world, euclidean, params)
        assert planner.step(Point([5.0, 1.0])) is None
        planner.close()
        assert len(planner.graph) == 1
        assert planner.best_costs == [math.inf]
        assert planner.graph.vertex_counts == [1]


def test_single_iteration_run(unit_world, euclidean, unit_params):
    """N = 1 leaves at most two vertices and no goal."""
    result = run(unit_world, euclidean, PlannerKind.RRT_STAR, unit_params, 1, seed=3)
    assert len(result.graph) == 2
    assert result.best_costs == [math.inf]
    assert result.summary()["final_best_cost"] is None


def test_rrt_matches_naive_reference(scenario2):
    """The kd-backed RRT grows exactly the tree of a brute-force implementation."""
    params = scenario2.near_params()
    world = scenario2.world
    result = run(world, scenario2.cost, PlannerKind.RRT, params, 400, seed=5)

    stream = SampleStream(5)
    vertices, parents = [world.x_init], [-1]
    for _ in range(400):
        x = sample_free(world, stream)
        nearest = min(range(len(vertices)), key=lambda i: (squared_distance(vertices[i], x), i))
        x_new = steer(vertices[nearest], x, params.eta)
        if x_new == vertices[nearest] or not world.obstacle_free_segment(vertices[nearest], x_new):
            continue
        vertices.append(x_new)
        parents.append(nearest)

    assert result.graph.vertices == vertices
    assert result.graph.parent == parents
    assert result.sample_digest == stream.hexdigest()


def check_equivalence(scenario, seeds, iterations):
    params = scenario.near_params()
    config = {"rrg_query_stride": iterations}
    for seed in seeds:
        rrt = run(scenario.world, scenario.cost, PlannerKind.RRT, params, iterations, seed, config)
        rrg = run(scenario.world, scenario.cost, PlannerKind.RRG, params, iterations, seed, config)
        star = run(scenario.world, scenario.cost, PlannerKind.RRT_STAR, params, iterations, seed, config)
        assert rrt.graph.vertices == rrg.graph.vertices == star.graph.vertices
        assert rrt.sample_digest == rrg.sample_digest == star.sample_digest
        assert undirected(rrt.graph) <= undirected(rrg.graph)
        assert undirected(star.graph) <= undirected(rrg.graph)


def test_vertex_sets_coincide(scenario2):
    """On a shared stream RRT, RRG and RRT* hold identical vertices and E(RRT) is inside E(RRG)."""
    check_equivalence(scenario2, seeds=range(3), iterations=500)


@pytest.mark.slow
def test_vertex_sets_coincide_long_runs(scenario2):
    check_equivalence(scenario2, seeds=range(10), iterations=2000)


def test_cost_orderings_hold_every_iteration(scenario2, debug_config):
    """Exact per-iteration costs: Y(RRG) <= Y(RRT*) <= Y(RRT), each non-increasing."""
    params = scenario2.near_params()
    series = {}
    for kind in (PlannerKind.RRT, PlannerKind.RRG, PlannerKind.RRT_STAR):
        result = run(scenario2.world, scenario2.cost, kind, params, 600, seed=11, config=debug_config)
        series[kind] = result.best_costs
        assert len(result.best_costs) == 600
        assert all(a >= b for a, b in zip(result.best_costs, result.best_costs[1:]))
    for rrg, star, rrt in zip(series[PlannerKind.RRG], series[PlannerKind.RRT_STAR], series[PlannerKind.RRT]):
        assert rrg <= star + 1e-9
        assert star <= rrt + 1e-9


def test_tree_invariants_in_cost_field(scenario3, debug_config):
    """Debug mode re-checks |E| = |V| - 1, reachability and cost-to-come after every rewire."""
    params = scenario3.near_params()
    result = run(scenario3.world, scenario3.cost, PlannerKind.RRT_STAR, params, 400, seed=2, config=debug_config)
    assert result.metrics["rewires"] > 0
    result.graph.check_invariants(scenario3.cost)


def test_rrg_edges_are_symmetric(scenario2, debug_config):
    params = scenario2.near_params()
    result = run(scenario2.world, scenario2.cost, PlannerKind.RRG, params, 300, seed=4, config=debug_config)
    assert all((v, u) in result.graph.edges for u, v in result.graph.edges)


def test_rrg_tests_every_near_vertex(unit_world, euclidean):
    """RRG makes 1 + |Near| ObstacleFree calls, x_nearest included; RRT* skips x_nearest."""
    params = NearParams(d=2, eta=0.5, gamma=1e6)
    rrg = RRGPlanner(unit_world, euclidean, params)
    star = RRTStarPlanner(unit_world, euclidean, params)
    for planner in (rrg, star):
        planner.step(Point([0.2, 0.1]))
        planner.step(Point([0.3, 0.1]))
    assert rrg.graph.obstacle_free_calls == [1 + 1, 1 + 2]
    assert star.graph.obstacle_free_calls == [1, 1 + 1]
    assert undirected(rrg.graph) == {(0, 1), (0, 2), (1, 2)}


def test_check_invariants_detects_stale_cost(unit_world, euclidean, unit_params):
    result = run(unit_world, euclidean, PlannerKind.RRT_STAR, unit_params, 50, seed=1)
    result.graph.cost_to_come[len(result.graph) - 1] += 1.0
    with pytest.raises(InvariantViolation):
        result.graph.check_invariants(euclidean)


def test_rrt_star_parent_choice_and_rewire():
    """
    A costly straight edge through a weight-10 block is replaced by a detour
    once a vertex above the block appears.
    """
    world = make_world([[0.0, 1.0], [0.0, 1.0]], x_init=(0.1, 0.5))
    cost = CostModel(
        kind=CostKind.LINE_INTEGRAL,
        regions=(WeightedRegion(Box.from_intervals([[0.3, 0.7], [0.3, 0.7]]), 10.0),),
        default_weight=1.0,
    )
    planner = RRTStarPlanner(world, cost, NearParams(d=2, eta=1.0, gamma=1e6), config={"debug_invariants": True})

    assert planner.step(Point([0.9, 0.5])) == 1
    assert planner.graph.cost_to_come[1] == pytest.approx(4.4)

    assert planner.step(Point([0.5, 0.9])) == 2
    detour = 2 * math.sqrt(0.32)
    assert planner.graph.parent[2] == 0
    assert planner.graph.cost_to_come[2] == pytest.approx(detour / 2)
    assert planner.graph.parent[1] == 2
    assert planner.graph.cost_to_come[1] == pytest.approx(detour)
    assert planner.metrics["rewires"] == 1
    assert undirected(planner.graph) == {(0, 2), (1, 2)}


def test_runs_are_deterministic(scenario3):
    params = scenario3.near_params()
    for kind in PlannerKind:
        first = run(scenario3.world, scenario3.cost, kind, params, 300, seed=9)
        second = run(scenario3.world, scenario3.cost, kind, params, 300, seed=9)
        assert first.summary() == second.summary()
        assert first.best_costs == second.best_costs
        assert first.graph.vertices == second.graph.vertices


def test_snapshots_see_the_growing_graph(unit_world, euclidean, unit_params):
    seen = []
    run(
        unit_world,
        euclidean,
        PlannerKind.RRT,
        unit_params,
        100,
        seed=0,
        snapshots=[10, 50],
        on_snapshot=lambda i, graph: seen.append((i, len(graph))),
    )
    assert [i for i, _ in seen] == [10, 50]
    assert seen[0][1] <= seen[1][1] <= 51


def test_counters_have_one_entry_per_iteration(scenario2):
    result = run(scenario2.world, scenario2.cost, PlannerKind.RRG, scenario2.near_params(), 250, seed=6)
    graph = result.graph
    assert len(graph.vertex_counts) == len(graph.obstacle_free_calls) == len(graph.wall_time) == 250
    assert graph.vertex_counts[-1] == len(graph)
    assert all(calls >= 1 for calls in graph.obstacle_free_calls)
    assert all(a <= b for a, b in zip(graph.wall_time, graph.wall_time[1:]))


def test_unknown_planner_kind():
    with pytest.raises(UsageError):
        PlannerKind.parse("rrt_sharp")
    assert PlannerKind.parse("rrg") is PlannerKind.RRG


def test_create_planner_rejects_batch_kind(unit_world, euclidean, unit_params):
    with pytest.raises(UsageError):
        create_planner(PlannerKind.PRM_STAR, unit_world, euclidean, unit_params)
    with pytest.raises(UsageError):
        run(unit_world, euclidean, PlannerKind.RRT, unit_params, 0, seed=0)


def test_prm_star_edges_follow_radius(block_world, euclidean):
    """Every pair within the PRM* radius with a free segment is joined, and no other pair."""
    params = NearParams.for_world(block_world, eta=0.1)
    graph = prm_star_build(block_world, euclidean, params, 300, seed=8)
    radius = prm_radius(params, 300)
    expected = set()
    for u in range(len(graph)):
        for v in range(u + 1, len(graph)):
            a, b = graph.vertices[u], graph.vertices[v]
            if distance(a, b) <= radius and block_world.obstacle_free_segment(a, b):
                expected.add((u, v))
    assert len(graph) == 301
    assert undirected(graph) == expected
    assert len(graph.obstacle_free_calls) == 1


def test_prm_star_small_and_edgeless(unit_world, euclidean):
    """Two samples build; a tiny gamma leaves the roadmap without edges."""
    params = NearParams(d=2, eta=0.1, gamma=6.6)
    assert len(prm_star_build(unit_world, euclidean, params, 2, seed=0)) == 3
    with pytest.raises(UsageError):
        prm_star_build(unit_world, euclidean, params, 1, seed=0)

    sparse = NearParams(d=2, eta=0.1, gamma=1e-12)
    result = run(unit_world, euclidean, PlannerKind.PRM_STAR, sparse, 50, seed=0)
    assert result.graph.edge_count == 0
    assert result.best_costs == [math.inf]
