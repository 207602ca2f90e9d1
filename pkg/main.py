"""
Main entry point for the planning toolkit command line.

Subcommands:
    plan        run one planner on a scenario and write <prefix>.json / <prefix>.svg
    bench       run a Monte-Carlo experiment spec and write its CSV files
    scenarios   list the bundled scenarios or validate scenario files
"""

import argparse
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

from configs.logging_config import get_logger, setup_logging
from configs.settings import get_settings
from exceptions import EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, PlannerError, ScenarioError, UsageError, exit_code_for
from planners.graph import PlannerGraph
from planners.runner import PlannerKind, run
from services.bench_service import run_experiment, write_experiment
from services.path_service import best_path
from services.render_service import write_svg
from services.scenario_service import (
    list_bundled,
    load_experiment,
    load_scenario,
    resolve_experiment_path,
    validate_scenario,
)
from services.utils import FileUtils

logger = get_logger(__name__)


def _format(value: Optional[float]) -> str:
    return "inf" if value is None else f"{value:.6g}"


def parse_snapshots(text: Optional[str], iterations: int) -> List[int]:
    """Parse ``--snapshots 250,500,2500`` into sorted iteration numbers."""
    if not text:
        return []
    try:
        points = sorted({int(part) for part in text.split(",") if part.strip()})
    except ValueError:
        raise UsageError(f"--snapshots expects comma-separated integers, got '{text}'") from None
    bad = [p for p in points if not 1 <= p <= iterations]
    if bad:
        raise UsageError(f"Snapshot iterations {bad} fall outside 1..{iterations}")
    return points


def cmd_plan(args: argparse.Namespace) -> int:
    """Run one planner and write the JSON summary and the SVG drawing."""
    settings = get_settings()
    scenario = load_scenario(args.scenario)
    kind = PlannerKind.parse(args.planner)
    params = scenario.near_params(eta=args.eta, gamma_multiplier=args.gamma_mult)
    iterations = args.iterations if args.iterations is not None else scenario.spec.planner.iterations
    if iterations < 1:
        raise UsageError(f"--iterations must be at least 1, got {iterations}")
    snapshots = parse_snapshots(args.snapshots, iterations)
    if snapshots and not kind.incremental:
        logger.warning("Snapshots are ignored for the batch roadmap", planner=kind.value)
        snapshots = []
    drawable = scenario.world.dimension == 2

    def on_snapshot(iteration: int, graph: PlannerGraph) -> None:
        if drawable:
            best = best_path(graph, scenario.world, scenario.cost)
            write_svg(
                f"{args.out}_{iteration}.svg",
                graph,
                scenario.world,
                best,
                title=f"{scenario.name} {kind.value} iteration {iteration}",
            )

    config = settings.get_planner_config()
    if args.debug_invariants:
        config["debug_invariants"] = True
    result = run(
        scenario.world,
        scenario.cost,
        kind,
        params,
        iterations,
        args.seed,
        config=config,
        snapshots=snapshots,
        on_snapshot=on_snapshot,
    )
    best = best_path(result.graph, scenario.world, scenario.cost)

    document = {
        "scenario": scenario.name,
        "params": {"eta": params.eta, "gamma": params.gamma, "d": params.d},
        "run": result.summary(),
        "best_path": best.to_dict(),
    }
    FileUtils.write_json_file(f"{args.out}.json", document)
    if drawable:
        write_svg(
            f"{args.out}.svg",
            result.graph,
            scenario.world,
            best,
            title=f"{scenario.name} {kind.value} N={iterations} seed={args.seed}",
        )
    else:
        logger.warning("Only planar worlds are drawn; no SVG written", dimension=scenario.world.dimension)

    summary = result.summary()
    print(
        f"{kind.value} on {scenario.name}: vertices={summary['vertices']} "
        f"edges={summary['edges']} best_cost={_format(summary['final_best_cost'])}"
    )
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """Run an experiment spec and write aggregate, per-trial and complexity CSVs."""
    path = resolve_experiment_path(args.spec)
    spec = load_experiment(path)
    result = run_experiment(spec, workers=args.workers, base_dir=os.path.dirname(os.path.abspath(path)))
    paths = write_experiment(result, args.out)
    for written in paths:
        print(written)
    if result.oracle_cost is not None:
        print(f"oracle_cost={_format(result.oracle_cost)}")
    return EXIT_OK


def cmd_scenarios(args: argparse.Namespace) -> int:
    """List the bundled scenarios or print validation reports."""
    if args.action == "list":
        for name in list_bundled():
            print(name)
        return EXIT_OK

    references = args.paths or list_bundled()
    status = EXIT_OK
    for reference in references:
        try:
            report = validate_scenario(reference)
        except ScenarioError as e:
            status = EXIT_USAGE
            print(f"{reference}: INVALID", file=sys.stderr)
            for problem in e.problems or [str(e)]:
                print(f"  - {problem}", file=sys.stderr)
            continue
        weights = ", ".join(_format(w) for w in report["region_weights"])
        print(f"{report['name']}: OK")
        print(f"  dimension={report['dimension']}")
        print(f"  free_space_measure={_format(report['free_space_measure'])}")
        print(f"  gamma_lower_bound={_format(report['gamma_lower_bound'])}")
        print(f"  default_gamma={_format(report['default_gamma'])}")
        print(f"  default_eta={_format(report['default_eta'])}")
        print(f"  cost={report['cost_kind']} region_weights=[{weights}] default_weight={_format(report['default_weight'])}")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="optrrt", description="Sampling-based optimal motion planning toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_settings().app_version}")
    parser.add_argument(
        "--log-level",
        default=None,
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Override OPTRRT_LOG_LEVEL",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    plan = subparsers.add_parser("plan", help="Run one planner on a scenario")
    plan.add_argument("--scenario", required=True, help="Bundled scenario name or scenario file")
    plan.add_argument("--planner", default="rrt_star", choices=[k.value for k in PlannerKind])
    plan.add_argument("--iterations", type=int, default=None, help="Iterations (samples for prm_star)")
    plan.add_argument("--seed", type=int, default=0)
    plan.add_argument("--gamma-mult", type=float, default=None, help="gamma as a multiple of gamma_L")
    plan.add_argument("--eta", type=float, default=None, help="Steering bound")
    plan.add_argument("--out", required=True, help="Output prefix for .json and .svg")
    plan.add_argument("--snapshots", default=None, help="Comma-separated iterations to draw")
    plan.add_argument("--debug-invariants", action="store_true", help="Check graph invariants every iteration")
    plan.set_defaults(handler=cmd_plan)

    bench = subparsers.add_parser("bench", help="Run a Monte-Carlo experiment")
    bench.add_argument("spec", help="Experiment spec file (JSON or YAML) or bundled experiment name")
    bench.add_argument("--out", required=True, help="Output directory")
    bench.add_argument("--workers", type=int, default=None, help="Worker processes (default: OPTRRT_THREADS or CPU count)")
    bench.set_defaults(handler=cmd_bench)

    scenarios = subparsers.add_parser("scenarios", help="List or validate scenarios")
    scenarios.add_argument("action", choices=["list", "validate"])
    scenarios.add_argument("paths", nargs="*", help="Scenario files to validate (default: bundled)")
    scenarios.set_defaults(handler=cmd_scenarios)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    logging_config = get_settings().get_logging_config()
    if args.log_level:
        logging_config["level"] = args.log_level
    setup_logging(**logging_config)

    try:
        return args.handler(args)
    except ScenarioError as e:
        print(f"error: {e}", file=sys.stderr)
        for problem in e.problems:
            print(f"  - {problem}", file=sys.stderr)
        return exit_code_for(e)
    except (PlannerError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)
    except Exception:
        logger.exception("Unexpected failure", command=args.command)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
