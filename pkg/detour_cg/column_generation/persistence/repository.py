import csv
from pathlib import Path
from typing import List, Sequence

from detour_cg.column_generation.domain.entities import IterationRecord
from detour_cg.column_generation.domain.service import IConvergenceRepository


class CsvConvergenceRepository(IConvergenceRepository):
    """CSV implementation of the iteration log; raw values, no plotting transforms"""

    def write(self, log: Sequence[IterationRecord], path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(IterationRecord.FIELDS)
            for record in log:
                writer.writerow(
                    [
                        record.iteration,
                        f"{record.elapsed_sec:.6f}",
                        repr(float(record.rmp_obj)),
                        repr(float(record.min_reduced_cost)),
                        repr(float(record.lagrangian_lb)),
                        repr(float(record.best_lb)),
                        record.num_columns,
                    ]
                )
        return path

    def read(self, path: Path) -> List[IterationRecord]:
        with path.open(newline="") as handle:
            return [
                IterationRecord(
                    iteration=int(row["iteration"]),
                    elapsed_sec=float(row["elapsed_sec"]),
                    rmp_obj=float(row["rmp_obj"]),
                    min_reduced_cost=float(row["min_reduced_cost"]),
                    lagrangian_lb=float(row["lagrangian_lb"]),
                    best_lb=float(row["best_lb"]),
                    num_columns=int(row["num_columns"]),
                )
                for row in csv.DictReader(handle)
            ]
