import csv
import io
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from detour_cg.column_generation.domain import (
    CgConfig,
    ColumnGenerationService,
    IConvergenceRepository,
)
from detour_cg.instances.domain import InstanceService
from detour_cg.masters.domain import Stabilization

from .entities import BenchConfig, RunOutcome, SummaryRow
from .exceptions import EmptySummaryError, ObjectiveMismatchError

logger = logging.getLogger(__name__)

RUN_FILE = re.compile(r"^(?P<instance>.+)__(?P<stab>[a-z_]+)\.csv$")
OBJECTIVE_RTOL = 1e-6

SUMMARY_COLUMNS = (
    "instance",
    "unstab_time",
    "dtdoi_time",
    "sdoi_time",
    "dtdoi_speedup",
    "sdoi_speedup",
    "unstab_iters",
    "dtdoi_iters",
    "sdoi_iters",
    "dtdoi_iter_speedup",
    "sdoi_iter_speedup",
)


def instance_name(seed: int) -> str:
    return f"seed{seed}"


def run_file(output_dir: Path, instance: str, stabilization: Stabilization) -> Path:
    return Path(output_dir) / f"{instance}__{stabilization.value}.csv"


def _row_values(row: SummaryRow) -> Dict[str, Optional[float]]:
    detour = row.detour_key
    return {
        "unstab_time": row.time(Stabilization.NONE),
        "dtdoi_time": row.time(detour),
        "sdoi_time": row.time(Stabilization.SDOI),
        "dtdoi_speedup": row.speedup(detour, "time"),
        "sdoi_speedup": row.speedup(Stabilization.SDOI, "time"),
        "unstab_iters": row.iterations(Stabilization.NONE),
        "dtdoi_iters": row.iterations(detour),
        "sdoi_iters": row.iterations(Stabilization.SDOI),
        "dtdoi_iter_speedup": row.speedup(detour, "iterations"),
        "sdoi_iter_speedup": row.speedup(Stabilization.SDOI, "iterations"),
    }


def _format(column: str, value: Optional[float]) -> str:
    if value is None:
        return ""
    if column.endswith("_iters"):
        return str(int(value)) if float(value).is_integer() else f"{value:.1f}"
    if column.endswith("_time"):
        return f"{value:.3f}"
    return f"{value:.2f}"


def summary_table(rows: Sequence[SummaryRow]) -> List[List[str]]:
    """Per-instance rows followed by mean and median over completed instances"""
    if not rows:
        raise EmptySummaryError("no rows to summarize")
    completed = [row for row in rows if row.complete]
    if not completed:
        raise EmptySummaryError("no instance completed every run optimally")
    table = []
    for row in rows:
        values = _row_values(row)
        table.append([row.instance] + [_format(c, values[c]) for c in SUMMARY_COLUMNS[1:]])
    per_column = {c: [] for c in SUMMARY_COLUMNS[1:]}
    for row in completed:
        for column, value in _row_values(row).items():
            if value is not None:
                per_column[column].append(value)
    for label, reduce in (("mean", np.mean), ("median", np.median)):
        footer = [label]
        for column in SUMMARY_COLUMNS[1:]:
            values = per_column[column]
            footer.append(_format(column, float(reduce(values))) if values else "")
        table.append(footer)
    return table


def emit_summary(rows: Sequence[SummaryRow], fmt: str = "csv") -> str:
    """Render the summary as CSV or a Markdown table"""
    table = summary_table(rows)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        writer.writerows(table)
        return buffer.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(SUMMARY_COLUMNS) + " |"]
        lines.append("|" + "---|" * len(SUMMARY_COLUMNS))
        lines.extend("| " + " | ".join(cells) + " |" for cells in table)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown summary format '{fmt}'")


Mismatch = Tuple[str, Stabilization, Stabilization, float, float]


def check_objectives(rows: Sequence[SummaryRow]) -> List[Mismatch]:
    """Pairs of optimal runs on the same instance whose objectives differ"""
    mismatches = []
    for row in rows:
        optimal = [run for run in row.runs.values() if run.optimal]
        for first, second in zip(optimal, optimal[1:]):
            scale = max(1.0, abs(first.objective))
            if abs(first.objective - second.objective) > OBJECTIVE_RTOL * scale:
                mismatches.append(
                    (row.instance, first.stabilization, second.stabilization,
                     first.objective, second.objective)
                )
    return mismatches


class BenchmarkService:
    """Runs the seed x stabilization matrix and folds it into summary rows.

    With more than one worker the service itself is shipped to worker
    processes, so its collaborators and `cg_service_factory` must pickle.
    """

    def __init__(
        self,
        instance_service: InstanceService,
        cg_service_factory: Callable[[], ColumnGenerationService],
        convergence_repo: IConvergenceRepository,
    ):
        self.instance_service = instance_service
        self.cg_service_factory = cg_service_factory
        self.convergence_repo = convergence_repo

    def run_one(self, config: BenchConfig, seed: int, stabilization: Stabilization) -> RunOutcome:
        instance = self.instance_service.generate_cvrp(
            seed,
            config.n_items,
            grid_size=config.grid_size,
            capacity=config.capacity,
            n_vehicles=config.n_vehicles,
            demand_rule=config.demand_rule,
        )
        name = instance_name(seed)
        self.instance_service.save(instance, config.output_dir / "instances" / f"{name}.json")
        cg_config = CgConfig(
            stabilization=stabilization,
            epsilon=config.epsilon,
            tolerance=config.tolerance,
            max_iterations=config.max_iterations,
            max_wall_seconds=config.max_wall_seconds,
        )
        result = self.cg_service_factory().run(instance, cg_config)
        path = self.convergence_repo.write(result.log, run_file(config.output_dir, name, stabilization))
        return RunOutcome(
            instance=name,
            stabilization=stabilization,
            iterations=result.iterations,
            elapsed_sec=result.elapsed_sec,
            objective=result.objective,
            optimal=result.is_optimal,
            reason=result.reason.value,
            csv_path=path,
        )

    def run(self, config: BenchConfig) -> List[SummaryRow]:
        """Run every (seed, stabilization) pair, write the summary, cross-check objectives"""
        pairs = [(seed, stab) for seed in config.seeds for stab in config.stabilizations]
        if config.sequential_timing or config.workers == 1:
            outcomes = [self.run_one(config, seed, stab) for seed, stab in pairs]
        else:
            seeds, stabilizations = zip(*pairs)
            with ProcessPoolExecutor(max_workers=config.workers) as executor:
                outcomes = list(executor.map(self.run_one, repeat(config), seeds, stabilizations))

        rows = self.fold(outcomes)
        for row in rows:
            for run in row.runs.values():
                logger.info(
                    "%s %s: %s in %d iterations, %.2fs, objective %.6f",
                    row.instance, run.stabilization.value, run.reason,
                    run.iterations, run.elapsed_sec, run.objective,
                )
            if not row.complete:
                logger.warning("%s is incomplete; no speedup reported", row.instance)
        self.write_summary(rows, config.output_dir)

        mismatches = check_objectives(rows)
        if mismatches:
            raise ObjectiveMismatchError(
                f"{len(mismatches)} objective mismatches, first: {mismatches[0]}", rows, mismatches
            )
        return rows

    @staticmethod
    def fold(outcomes: Sequence[RunOutcome]) -> List[SummaryRow]:
        rows: Dict[str, SummaryRow] = {}
        for outcome in outcomes:
            row = rows.setdefault(outcome.instance, SummaryRow(outcome.instance))
            row.runs[outcome.stabilization] = outcome
        return list(rows.values())

    def summarize(self, directory: Path, tolerance: float = 1e-6) -> List[SummaryRow]:
        """Rebuild summary rows from the per-run CSVs in a directory"""
        outcomes = []
        for path in sorted(Path(directory).glob("*.csv")):
            match = RUN_FILE.match(path.name)
            if match is None:
                continue
            try:
                stabilization = Stabilization(match["stab"])
            except ValueError:
                continue
            log = self.convergence_repo.read(path)
            if not log:
                continue
            last = log[-1]
            outcomes.append(
                RunOutcome(
                    instance=match["instance"],
                    stabilization=stabilization,
                    iterations=last.iteration,
                    elapsed_sec=last.elapsed_sec,
                    objective=last.rmp_obj,
                    optimal=last.min_reduced_cost >= -tolerance,
                    reason="optimal" if last.min_reduced_cost >= -tolerance else "incomplete",
                    csv_path=path,
                )
            )
        return self.fold(outcomes)

    @staticmethod
    def write_summary(rows: Sequence[SummaryRow], output_dir: Path) -> None:
        try:
            csv_text, markdown = emit_summary(rows, "csv"), emit_summary(rows, "markdown")
        except EmptySummaryError:
            logger.warning("No completed instance; summary not written")
            return
        output_dir.mkdir(parents=True, exist_ok=True)
        (output_dir / "summary.csv").write_text(csv_text)
        (output_dir / "summary.md").write_text(markdown)
