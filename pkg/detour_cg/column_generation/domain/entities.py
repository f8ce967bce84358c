from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from detour_cg.columns.domain import Column, DualSolution
from detour_cg.lp.domain import LpSolution
from detour_cg.masters.domain import MasterModel, Stabilization
from detour_cg.settings import Settings

from .exceptions import ConfigurationError


class TerminationReason(str, Enum):
    OPTIMAL = "optimal"
    ITERATION_CAP = "iteration_cap"
    TIME_CAP = "time_cap"


@dataclass(frozen=True)
class CgConfig:
    """Run configuration for one column generation run"""
    stabilization: Stabilization = Stabilization.NONE
    epsilon: float = 1e-4
    tolerance: float = 1e-6
    max_iterations: int = 5000
    max_wall_seconds: float = 600.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "stabilization", Stabilization(self.stabilization))
        except ValueError:
            raise ConfigurationError(f"unknown stabilization '{self.stabilization}'")
        if not self.tolerance > 0:
            raise ConfigurationError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be at least 1")
        if self.epsilon < 0:
            raise ConfigurationError("epsilon must be nonnegative")
        if not self.max_wall_seconds > 0:
            raise ConfigurationError("max_wall_seconds must be positive")

    @classmethod
    def from_settings(cls, settings: Settings, stabilization="none", **overrides) -> "CgConfig":
        params = dict(
            stabilization=stabilization,
            epsilon=settings.epsilon,
            tolerance=settings.cg_tolerance,
            max_iterations=settings.max_iterations,
            max_wall_seconds=settings.max_wall_seconds,
        )
        params.update(overrides)
        return cls(**params)


@dataclass(frozen=True)
class IterationRecord:
    """Telemetry for one CG iteration"""
    iteration: int
    elapsed_sec: float
    rmp_obj: float
    min_reduced_cost: float
    lagrangian_lb: float
    best_lb: float
    num_columns: int

    FIELDS = (
        "iteration",
        "elapsed_sec",
        "rmp_obj",
        "min_reduced_cost",
        "lagrangian_lb",
        "best_lb",
        "num_columns",
    )


@dataclass
class CgResult:
    """Outcome of a column generation run"""
    objective: float
    reason: TerminationReason
    stabilization: Stabilization
    log: List[IterationRecord]
    duals: DualSolution
    master: MasterModel
    solution: LpSolution
    columns: Tuple[Column, ...]
    elapsed_sec: float = 0.0

    @property
    def iterations(self) -> int:
        return len(self.log)

    @property
    def is_optimal(self) -> bool:
        return self.reason is TerminationReason.OPTIMAL

    @property
    def primal(self) -> Dict[str, float]:
        return self.solution.primal

    def omega_values(self) -> Dict[Tuple[int, int], float]:
        return {pair: self.primal[name] for pair, name in self.master.omega.items()}

    def artificial_values(self) -> Dict[int, float]:
        return {u: self.primal[name] for u, name in self.master.artificial.items()}

    def selected(self, tol: float = 1e-7) -> List[Tuple[Column, float, float]]:
        """(column, theta, psi) for every real column used by the final RMP"""
        chosen = []
        for l, column in enumerate(self.columns):
            if column.is_artificial:
                continue
            theta = self.primal.get(self.master.theta.get(l, ""), 0.0)
            psi = self.primal.get(self.master.psi.get(l, ""), 0.0)
            if theta > tol or psi > tol:
                chosen.append((column, theta, psi))
        return chosen

    def last_pricing_value(self) -> Optional[float]:
        return self.log[-1].min_reduced_cost if self.log else None

    @property
    def lower_bound(self) -> Optional[float]:
        """Best Lagrangian bound over completed iterations"""
        return self.log[-1].best_lb if self.log else None
