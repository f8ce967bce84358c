import logging
import time
from abc import ABC, abstractmethod
from itertools import combinations, permutations
from pathlib import Path
from typing import Dict, Iterable, List, Sequence

from detour_cg.columns.domain import (
    Column,
    ColumnPool,
    DuplicateColumnError,
    make_artificial,
    make_route,
)
from detour_cg.instances.domain import CvrpInstance, Instance
from detour_cg.lp.domain import LpService, LpSolveError
from detour_cg.masters.domain import MasterBuilder, Stabilization, extract_duals
from detour_cg.pricing.domain import IPricer, PricingDeadlineError, PricingError

from .entities import CgConfig, CgResult, IterationRecord, TerminationReason
from .exceptions import ColumnGenerationError, ColumnRegeneratedError

logger = logging.getLogger(__name__)


class IConvergenceRepository(ABC):
    """Interface for iteration log persistence"""

    @abstractmethod
    def write(self, log: Sequence[IterationRecord], path: Path) -> Path:
        pass

    @abstractmethod
    def read(self, path: Path) -> List[IterationRecord]:
        pass


def artificial_columns(instance: Instance) -> List[Column]:
    """One BIG_M column per item; they cover it and use no vehicle"""
    return [make_artificial(instance, u) for u in range(instance.n_items)]


def lagrangian_bound(dual_value: float, min_rc: float, n_vehicles: int) -> float:
    """Dual objective of the RMP plus K times the most negative reduced cost"""
    return float(dual_value + n_vehicles * min(min_rc, 0.0))


def lagrangian_bound_by_facility(dual_value: float, facility_minima: Dict[int, float]) -> float:
    """SSCFLP analog: each facility block contributes at most one column"""
    return float(dual_value + sum(min(value, 0.0) for value in facility_minima.values()))


def enumerate_routes(instance: CvrpInstance) -> List[Column]:
    """One cheapest ordering per capacity-feasible item subset.

    Other orderings of a subset cover the same items at no lower cost, so this
    set has the same master optimum as the full route set.
    """
    routes = []
    for size in range(1, instance.n_items + 1):
        for subset in combinations(range(instance.n_items), size):
            if sum(instance.demands[u] for u in subset) > instance.capacity:
                continue
            best = min((make_route(instance, order) for order in permutations(subset)), key=lambda c: c.cost)
            routes.append(best)
    return routes


class ColumnGenerationService:
    """Runs column generation over any master formulation and exact pricer"""

    def __init__(self, lp_service: LpService, cvrp_pricer: IPricer, sscflp_pricer: IPricer):
        self.lp_service = lp_service
        self.cvrp_pricer = cvrp_pricer
        self.sscflp_pricer = sscflp_pricer

    def run(self, instance: Instance, config: CgConfig, initial_columns: Iterable[Column] = ()) -> CgResult:
        """Column generation until no column prices out or a cap is hit.

        The wall clock is checked before pricing, inside the pricer and after
        each new column; on TIME_CAP the log ends at the last completed iteration.
        """
        is_cvrp = isinstance(instance, CvrpInstance)
        pricer = self.cvrp_pricer if is_cvrp else self.sscflp_pricer
        n_vehicles = instance.n_vehicles if is_cvrp else 0

        pool = ColumnPool(instance, artificial_columns(instance))
        for column in initial_columns:
            pool.add(column)
        builder = MasterBuilder(instance)
        log: List[IterationRecord] = []
        best_lb = float("-inf")
        start = time.perf_counter()
        deadline = start + config.max_wall_seconds
        reason = None

        for iteration in range(1, config.max_iterations + 1):
            master = builder.build(pool, config.stabilization, n_vehicles, config.epsilon)
            try:
                solution = self.lp_service.solve_optimal(master.lp)
            except LpSolveError as e:
                raise ColumnGenerationError(f"iteration {iteration}: {e}", log) from e
            duals = extract_duals(solution, master)
            if time.perf_counter() > deadline:
                reason = TerminationReason.TIME_CAP
                break
            try:
                priced = pricer.price(instance, duals, deadline)
            except PricingDeadlineError as e:
                logger.warning("iteration %d: %s", iteration, e)
                reason = TerminationReason.TIME_CAP
                break
            except PricingError as e:
                raise ColumnGenerationError(f"iteration {iteration}: {e}", log) from e

            dual_value = duals.dual_objective(n_vehicles)
            if is_cvrp:
                bound = lagrangian_bound(dual_value, priced.reduced_cost, n_vehicles)
            else:
                bound = lagrangian_bound_by_facility(dual_value, priced.block_minima)
            best_lb = max(best_lb, bound)
            elapsed = time.perf_counter() - start
            log.append(
                IterationRecord(
                    iteration=iteration,
                    elapsed_sec=elapsed,
                    rmp_obj=float(solution.objective),
                    min_reduced_cost=float(priced.reduced_cost),
                    lagrangian_lb=bound,
                    best_lb=best_lb,
                    num_columns=len(pool),
                )
            )
            logger.debug(
                "%s it=%d obj=%.6f rc=%.6f lb=%.6f cols=%d",
                config.stabilization.value, iteration, solution.objective,
                priced.reduced_cost, best_lb, len(pool),
            )

            if priced.column is None or priced.reduced_cost >= -config.tolerance:
                reason = TerminationReason.OPTIMAL
                break
            try:
                pool.add(priced.column, strict=True)
            except DuplicateColumnError as e:
                raise ColumnRegeneratedError(
                    f"iteration {iteration}: pricing regenerated a pooled column with reduced cost "
                    f"{priced.reduced_cost}: {e}",
                    log,
                ) from e
            if time.perf_counter() > deadline:
                reason = TerminationReason.TIME_CAP
                break
        else:
            reason = TerminationReason.ITERATION_CAP

        elapsed = time.perf_counter() - start
        logger.info(
            "CG %s finished: %s after %d iterations, objective %.6f, %.2fs",
            config.stabilization.value, reason.value, len(log), solution.objective, elapsed,
        )
        return CgResult(
            objective=float(solution.objective),
            reason=reason,
            stabilization=config.stabilization,
            log=log,
            duals=duals,
            master=master,
            solution=solution,
            columns=pool.snapshot(),
            elapsed_sec=elapsed,
        )

    def solve_full_master(self, instance: Instance, columns: Iterable[Column]) -> float:
        """Optimal value of the unstabilized master over an explicit column set"""
        pool = ColumnPool(instance, artificial_columns(instance))
        for column in columns:
            pool.add(column)
        builder = MasterBuilder(instance)
        n_vehicles = instance.n_vehicles if isinstance(instance, CvrpInstance) else 0
        master = builder.build(pool, Stabilization.NONE, n_vehicles)
        return self.lp_service.solve_optimal(master.lp).objective
