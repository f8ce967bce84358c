import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from detour_cg.benchmark.dependency_injection.container import benchmark_container, run_benchmark
from detour_cg.benchmark.domain import (
    DEFAULT_STABILIZATIONS,
    BenchConfig,
    BenchmarkError,
    EmptySummaryError,
    ObjectiveMismatchError,
    emit_summary,
)
from detour_cg.column_generation.dependency_injection.container import cg_container, run_cg
from detour_cg.column_generation.domain import CgConfig, ColumnGenerationError, ConfigurationError
from detour_cg.columns.dependency_injection.container import column_container
from detour_cg.columns.domain import ColumnPool
from detour_cg.instances.dependency_injection.container import (
    instance_container,
    load_instance,
    save_instance,
)
from detour_cg.instances.domain import DemandRule, InstanceError
from detour_cg.logging_config import configure_logging
from detour_cg.lp.dependency_injection.container import write_lp
from detour_cg.masters.domain import Stabilization
from detour_cg.settings import get_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

STABILIZATIONS = [s.value for s in Stabilization]


def _seeds(text: str) -> List[int]:
    """'1-14' or '1,2,5'"""
    seeds = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        elif part:
            seeds.append(int(part))
    return seeds


def _demand_rule(text: str) -> DemandRule:
    try:
        return DemandRule.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _add_instance_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-items", type=int, default=40, help="Number of items (customers).")
    parser.add_argument("--grid", type=int, default=100, help="Side of the integer grid.")
    parser.add_argument("--capacity", type=int, default=10, help="Vehicle capacity D0.")
    parser.add_argument("--vehicles", type=int, default=5, help="Fleet size K.")
    parser.add_argument(
        "--demand", type=_demand_rule, default=DemandRule(), help="'unit' or 'uniform:lo:hi'."
    )


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="detour-cg", description="Column generation with detour and smooth dual optimal inequalities."
    )
    parser.add_argument("--log-level", default=settings.log_level, help="Logging level.")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="Write generated instance files.")
    gen.add_argument("--kind", choices=["cvrp", "sscflp"], default="cvrp")
    gen.add_argument("--seeds", type=_seeds, default=[1], help="Seed list, e.g. '1-14' or '3,7'.")
    _add_instance_args(gen)
    gen.add_argument("--facilities", type=int, default=10, help="SSCFLP facility count.")
    gen.add_argument("--out-dir", type=Path, default=Path(settings.output_dir) / "instances")

    run = commands.add_parser("run", help="Run CG on one instance with one stabilization.")
    run.add_argument("--instance", type=Path, required=True, help="Instance JSON file.")
    run.add_argument("--stab", choices=STABILIZATIONS, default=Stabilization.NONE.value)
    run.add_argument("--out", type=Path, help="Convergence CSV path.")
    run.add_argument("--epsilon", type=float, default=settings.epsilon)
    run.add_argument("--max-iterations", type=int, default=settings.max_iterations)
    run.add_argument("--max-seconds", type=float, default=settings.max_wall_seconds)
    run.add_argument("--dump-columns", type=Path, help="Write the final pool as JSON lines.")
    run.add_argument("--write-lp", type=Path, help="Write the final RMP as CPLEX-LP text.")

    bench = commands.add_parser("bench", help="Run the seed x stabilization matrix.")
    bench.add_argument("--seeds", type=_seeds, default=list(range(1, 15)))
    _add_instance_args(bench)
    bench.add_argument(
        "--stabs",
        type=lambda s: [x for x in s.split(",") if x],
        default=[s.value for s in DEFAULT_STABILIZATIONS],
        help="Comma separated stabilizations.",
    )
    bench.add_argument("--out-dir", type=Path, default=Path(settings.output_dir))
    bench.add_argument("--workers", type=int, default=settings.workers)
    bench.add_argument(
        "--sequential-timing", action="store_true", help="Run in-process, one run at a time."
    )

    summarize = commands.add_parser("summarize", help="Fold per-run CSVs into the summary table.")
    summarize.add_argument("directory", type=Path)
    summarize.add_argument("--format", choices=["csv", "markdown"], default="markdown")
    return parser


def cmd_gen(args: argparse.Namespace) -> int:
    service = instance_container.instance_service
    for seed in args.seeds:
        if args.kind == "cvrp":
            instance = service.generate_cvrp(
                seed,
                args.n_items,
                grid_size=args.grid,
                capacity=args.capacity,
                n_vehicles=args.vehicles,
                demand_rule=args.demand,
            )
        else:
            instance = service.generate_sscflp(seed, args.n_items, args.facilities, grid_size=args.grid)
        path = save_instance(instance, args.out_dir / f"{args.kind}_seed{seed}.json")
        print(path)
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    config = CgConfig.from_settings(
        get_settings(),
        args.stab,
        epsilon=args.epsilon,
        max_iterations=args.max_iterations,
        max_wall_seconds=args.max_seconds,
    )
    result = run_cg(instance, config)
    if args.out:
        cg_container.convergence_repo.write(result.log, args.out)
    if args.dump_columns:
        column_container.column_pool_service.dump(ColumnPool(instance, result.columns), args.dump_columns)
    if args.write_lp:
        write_lp(result.master.lp, args.write_lp)
    print(f"{result.reason.value} objective={result.objective:.6f} iterations={result.iterations}")
    return EXIT_OK if result.is_optimal else EXIT_FAILURE


def cmd_bench(args: argparse.Namespace) -> int:
    settings = get_settings()
    config = BenchConfig(
        seeds=tuple(args.seeds),
        n_items=args.n_items,
        grid_size=args.grid,
        capacity=args.capacity,
        n_vehicles=args.vehicles,
        demand_rule=args.demand,
        stabilizations=tuple(args.stabs),
        output_dir=args.out_dir,
        sequential_timing=args.sequential_timing,
        workers=args.workers,
        tolerance=settings.cg_tolerance,
        epsilon=settings.epsilon,
        max_iterations=settings.max_iterations,
        max_wall_seconds=settings.max_wall_seconds,
    )
    rows = run_benchmark(config)
    try:
        print(emit_summary(rows, "markdown"), end="")
    except EmptySummaryError as e:
        logger.error("%s", e)
        return EXIT_FAILURE
    return EXIT_OK if all(row.complete for row in rows) else EXIT_FAILURE


def cmd_summarize(args: argparse.Namespace) -> int:
    rows = benchmark_container.benchmark_service.summarize(args.directory, get_settings().cg_tolerance)
    print(emit_summary(rows, args.format), end="")
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "run": cmd_run,
    "bench": cmd_bench,
    "summarize": cmd_summarize,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except (ConfigurationError, InstanceError, ValueError, OSError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except ObjectiveMismatchError as e:
        for mismatch in e.mismatches:
            logger.error("objective mismatch: %s", mismatch)
        return EXIT_FAILURE
    except (BenchmarkError, ColumnGenerationError) as e:
        logger.error("%s", e)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
