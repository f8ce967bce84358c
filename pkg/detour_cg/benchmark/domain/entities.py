from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Tuple

from detour_cg.column_generation.domain import ConfigurationError
from detour_cg.instances.domain import DemandRule
from detour_cg.masters.domain import Stabilization

DEFAULT_SEEDS = tuple(range(1, 15))
DEFAULT_STABILIZATIONS = (Stabilization.NONE, Stabilization.DTDOI_REDUCED, Stabilization.SDOI)


@dataclass(frozen=True)
class BenchConfig:
    """Instance family, stabilizations and output location for a benchmark"""
    seeds: Tuple[int, ...] = DEFAULT_SEEDS
    n_items: int = 40
    grid_size: int = 100
    capacity: int = 10
    n_vehicles: int = 5
    demand_rule: DemandRule = DemandRule()
    stabilizations: Tuple[Stabilization, ...] = DEFAULT_STABILIZATIONS
    output_dir: Path = Path("results")
    sequential_timing: bool = False
    workers: int = 1
    tolerance: float = 1e-6
    epsilon: float = 1e-4
    max_iterations: int = 5000
    max_wall_seconds: float = 600.0

    def __post_init__(self):
        if not self.seeds:
            raise ConfigurationError("at least one seed is required")
        if any(seed < 0 for seed in self.seeds):
            raise ConfigurationError("seeds must be unsigned integers")
        try:
            stabilizations = tuple(Stabilization(s) for s in self.stabilizations)
        except ValueError as e:
            raise ConfigurationError(str(e))
        if not stabilizations:
            raise ConfigurationError("at least one stabilization is required")
        object.__setattr__(self, "seeds", tuple(self.seeds))
        object.__setattr__(self, "stabilizations", stabilizations)
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if self.workers < 1:
            raise ConfigurationError("workers must be at least 1")


@dataclass(frozen=True)
class RunOutcome:
    """What one (instance, stabilization) run produced"""
    instance: str
    stabilization: Stabilization
    iterations: int
    elapsed_sec: float
    objective: float
    optimal: bool
    reason: str
    csv_path: Optional[Path] = None


@dataclass
class SummaryRow:
    """Per-instance iterations, wall times and speedups over un-stabilized CG"""
    instance: str
    runs: Dict[Stabilization, RunOutcome] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return bool(self.runs) and all(run.optimal for run in self.runs.values())

    @property
    def detour_key(self) -> Stabilization:
        if Stabilization.DTDOI_REDUCED in self.runs:
            return Stabilization.DTDOI_REDUCED
        return Stabilization.DTDOI_FULL

    def time(self, stabilization: Stabilization) -> Optional[float]:
        run = self.runs.get(stabilization)
        return run.elapsed_sec if run is not None else None

    def iterations(self, stabilization: Stabilization) -> Optional[int]:
        run = self.runs.get(stabilization)
        return run.iterations if run is not None else None

    def speedup(self, stabilization: Stabilization, metric: str) -> Optional[float]:
        """Un-stabilized metric over method metric; None unless both runs are optimal"""
        base = self.runs.get(Stabilization.NONE)
        run = self.runs.get(stabilization)
        if base is None or run is None or not (base.optimal and run.optimal):
            return None
        if metric == "time":
            return base.elapsed_sec / run.elapsed_sec if run.elapsed_sec > 0 else None
        return base.iterations / run.iterations
