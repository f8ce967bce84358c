import logging
import time
from abc import ABC, abstractmethod
from bisect import bisect_right
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from detour_cg.columns.domain import (
    Column,
    ColumnKind,
    DualSolution,
    make_assignment,
    make_route,
)
from detour_cg.instances.domain import CvrpInstance, SscflpInstance

from .entities import Label, PricingResult
from .exceptions import EnumerationLimitError, MissingDualError, PricingDeadlineError, PricingError

logger = logging.getLogger(__name__)


def reduced_cost(column: Column, duals: DualSolution) -> float:
    """c_l + pi_0 - sum pi_u for routes; pi_f replaces pi_0 for assignments"""
    if column.is_artificial:
        raise PricingError("artificial columns are never priced")
    try:
        covered = sum(duals.pi_u[u] for u in column.covers)
        if column.kind is ColumnKind.FACILITY_ASSIGNMENT:
            return column.cost + duals.pi_f[column.facility] - covered
    except KeyError as e:
        raise MissingDualError(f"no dual for {e.args[0]}")
    return column.cost + duals.pi_0 - covered


def _item_duals(duals: DualSolution, n: int) -> np.ndarray:
    missing = [u for u in range(n) if u not in duals.pi_u]
    if missing:
        raise MissingDualError(f"no pi_u for items {missing[:5]}")
    return np.array([duals.pi_u[u] for u in range(n)], dtype=float)


def _is_better(
    value: float, order: Tuple[int, ...], best_value: float, best_order: Tuple[int, ...], tol: float
) -> bool:
    """Smaller reduced cost wins; within tol, fewer items then lexicographic order"""
    if value < best_value - tol:
        return True
    if value > best_value + tol:
        return False
    return (len(order), order) < (len(best_order), best_order)


class IPricer(ABC):
    """Interface for exact pricing oracles.

    `deadline` is a `time.perf_counter()` instant; pricers raise
    PricingDeadlineError once it has passed.
    """

    @abstractmethod
    def price(self, instance, duals: DualSolution, deadline: Optional[float] = None) -> PricingResult:
        pass


def _check_deadline(deadline: Optional[float], done: int) -> None:
    if deadline is not None and time.perf_counter() > deadline:
        raise PricingDeadlineError(f"pricing deadline passed after {done} steps")


class LabelingPricer(IPricer):
    """Exact elementary resource-constrained shortest path by labeling.

    Labels are extended in order of load. Each node keeps one label per
    visited set, the cheapest. When a label comes up for extension every
    label with less load at its node is final, so it is dropped if one of
    them visits a subset of its items at no more cost. A label is also
    dropped when its cost plus a completion lower bound cannot reach the
    incumbent, which starts from a greedy route. The bound is a
    capacity-indexed q-path relaxation without 2-cycles.
    """

    def __init__(self, tol: float = 1e-9, use_dominance: bool = True, use_bounds: bool = True):
        self.tol = tol
        self.use_dominance = use_dominance
        self.use_bounds = use_bounds

    def price(
        self, instance: CvrpInstance, duals: DualSolution, deadline: Optional[float] = None
    ) -> PricingResult:
        _check_deadline(deadline, 0)
        n, capacity = instance.n_items, instance.capacity
        prizes = _item_duals(duals, n)
        pi_0 = float(duals.pi_0)
        matrix = instance.distance_matrix.astype(float)
        demands = instance.demands
        depot = n
        tol = self.tol

        into = matrix[:, :n] - prizes[None, :]
        home = matrix[:n, depot] + pi_0
        bounds = self.completion_bounds(instance, prizes, pi_0) if self.use_bounds else None

        best_value, best_order = pi_0, ()
        seed_value, seed_order = self.greedy_route(into, home, demands, capacity)
        if seed_order and _is_better(seed_value, seed_order, best_value, best_order, tol):
            best_value, best_order = seed_value, seed_order

        buckets: List[List[Label]] = [[] for _ in range(capacity + 1)]
        by_set: List[Dict[int, Label]] = [{} for _ in range(n)]
        # per node and load: settled label costs in ascending order, and their visited sets
        settled_costs = [[[] for _ in range(capacity + 1)] for _ in range(n)]
        settled_sets = [[[] for _ in range(capacity + 1)] for _ in range(n)]
        expanded = 0

        def offer(label: Label) -> None:
            nonlocal best_value, best_order
            room = capacity - label.load
            if bounds is not None and label.cost + bounds[label.node, room] > best_value + tol:
                return
            if self.use_dominance:
                known = by_set[label.node].get(label.visited)
                if known is not None:
                    if not self._replaces(label, known):
                        return
                    known.alive = False
                by_set[label.node][label.visited] = label
            buckets[label.load].append(label)
            value = label.cost + home[label.node]
            if value <= best_value + tol:
                order = label.path()
                if _is_better(value, order, best_value, best_order, tol):
                    best_value, best_order = value, order

        for v in range(n):
            if demands[v] <= capacity:
                offer(Label(v, demands[v], 1 << v, into[depot, v], None, True))

        for load in range(capacity + 1):
            for label in buckets[load]:
                if not label.alive:
                    continue
                _check_deadline(deadline, expanded)
                if bounds is not None and label.cost + bounds[label.node, capacity - load] > best_value + tol:
                    continue
                if self.use_dominance:
                    costs, sets = settled_costs[label.node], settled_sets[label.node]
                    if self._dominated(label, costs, sets):
                        continue
                    at = bisect_right(costs[load], label.cost)
                    costs[load].insert(at, label.cost)
                    sets[load].insert(at, label.visited)
                expanded += 1
                row = into[label.node]
                for w in range(n):
                    if label.visited >> w & 1 or load + demands[w] > capacity:
                        continue
                    offer(
                        Label(w, load + demands[w], label.visited | 1 << w, label.cost + row[w], label, True)
                    )

        column = make_route(instance, best_order) if best_order else None
        logger.debug("Labeling priced %.6g after %d expansions", best_value, expanded)
        return PricingResult(column, float(best_value), expanded)

    def _replaces(self, new: Label, old: Label) -> bool:
        """Same node and visited set: lower cost wins, then the smaller path"""
        if new.cost < old.cost - self.tol:
            return True
        if new.cost > old.cost + self.tol:
            return False
        return new.path() < old.path()

    @staticmethod
    def _dominated(label: Label, costs: List[List[float]], sets: List[List[int]]) -> bool:
        """True if a settled label with less load visits a subset at no more cost"""
        visited = label.visited
        for load in range(label.load):
            candidates = sets[load]
            for i in range(bisect_right(costs[load], label.cost)):
                if candidates[i] & visited == candidates[i]:
                    return True
        return False

    @staticmethod
    def greedy_route(
        into: np.ndarray, home: np.ndarray, demands: Sequence[int], capacity: int
    ) -> Tuple[float, Tuple[int, ...]]:
        """Best prefix of the nearest-neighbour routes by reduced arc cost, one per first item"""
        n = len(demands)
        weights = np.asarray(demands)
        best_value, best_order = float("inf"), ()
        for first in range(n):
            if demands[first] > capacity:
                continue
            order, load, cost = [first], demands[first], float(into[n, first])
            free = np.ones(n, dtype=bool)
            free[first] = False
            while True:
                node = order[-1]
                value = cost + float(home[node])
                if value < best_value:
                    best_value, best_order = value, tuple(order)
                fits = free & (weights <= capacity - load)
                if not fits.any():
                    break
                w = int(np.argmin(np.where(fits, into[node], np.inf)))
                order.append(w)
                load += demands[w]
                cost += float(into[node, w])
                free[w] = False
        return best_value, best_order

    @staticmethod
    def completion_bounds(instance: CvrpInstance, prizes: np.ndarray, pi_0: float) -> np.ndarray:
        """bounds[v, q]: lower bound on finishing a route at v with q capacity left.

        Paths may revisit items except for immediate back-and-forth, which makes
        the value a relaxation of every elementary completion.
        """
        n, capacity = instance.n_items, instance.capacity
        matrix = instance.distance_matrix.astype(float)
        demands = np.array(instance.demands, dtype=np.int64)
        step = matrix[:n, :n] - prizes[None, :]
        np.fill_diagonal(step, np.inf)
        finish = matrix[:n, n] + pi_0

        best = np.empty((n, capacity + 1))
        second = np.empty((n, capacity + 1))
        successor = np.empty((n, capacity + 1), dtype=np.int64)
        rows = np.arange(n)
        for q in range(capacity + 1):
            candidates = np.full((n, n + 1), np.inf)
            candidates[:, n] = finish
            fits = np.flatnonzero(demands <= q)
            if fits.size:
                rest = q - demands[fits]
                first = best[fits, rest]
                alternative = second[fits, rest]
                back = successor[fits, rest]
                # continuing from w must not come straight back to v
                tail = np.where(rows[:, None] == back[None, :], alternative[None, :], first[None, :])
                candidates[:, fits] = step[:, fits] + tail
            successor[:, q] = np.argmin(candidates, axis=1)
            best[:, q] = candidates[rows, successor[:, q]]
            candidates[rows, successor[:, q]] = np.inf
            second[:, q] = candidates.min(axis=1)
        return best


def price_cvrp(
    instance: CvrpInstance, duals: DualSolution, tol: float = 1e-9, deadline: Optional[float] = None
) -> PricingResult:
    return LabelingPricer(tol).price(instance, duals, deadline)


def price_cvrp_bruteforce(
    instance: CvrpInstance, duals: DualSolution, limit: int = 9, tol: float = 1e-9
) -> PricingResult:
    """Minimum reduced cost over every elementary capacity-feasible ordered route"""
    n = instance.n_items
    if n > limit:
        raise EnumerationLimitError(f"{n} items exceed the enumeration limit {limit}")
    prizes = _item_duals(duals, n)
    matrix = instance.distance_matrix
    depot = n
    best_value, best_order = float(duals.pi_0), ()
    count = 0
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            if sum(instance.demands[u] for u in subset) > instance.capacity:
                continue
            reward = float(sum(prizes[u] for u in subset))
            for order in permutations(subset):
                count += 1
                path = (depot,) + order + (depot,)
                length = sum(int(matrix[a, b]) for a, b in zip(path, path[1:]))
                value = length + duals.pi_0 - reward
                if _is_better(value, order, best_value, best_order, tol):
                    best_value, best_order = value, order
    column = make_route(instance, best_order) if best_order else None
    return PricingResult(column, float(best_value), count)


class KnapsackPricer(IPricer):
    """Per-facility 0/1 knapsack by dynamic programming over capacity"""

    def __init__(self, tol: float = 1e-9):
        self.tol = tol

    def price(
        self, instance: SscflpInstance, duals: DualSolution, deadline: Optional[float] = None
    ) -> PricingResult:
        prizes = _item_duals(duals, instance.n_items)
        demands = np.array(instance.demands, dtype=np.int64)
        minima: Dict[int, float] = {}
        best: Optional[Tuple[float, Tuple[int, ...], int]] = None
        for f, facility in enumerate(instance.facilities):
            _check_deadline(deadline, f)
            if f not in duals.pi_f:
                raise MissingDualError(f"no pi_f for facility {f}")
            gains = prizes - instance.cost_matrix[f]
            chosen, gain = self._knapsack(gains, demands, facility.capacity)
            value = float(facility.open_cost + duals.pi_f[f] - gain)
            minima[f] = value
            if best is None or _is_better(value, chosen, best[0], best[1], self.tol):
                best = (value, chosen, f)
        value, chosen, f = best
        return PricingResult(make_assignment(instance, f, chosen), value, len(minima), minima)

    def _knapsack(
        self, gains: np.ndarray, demands: np.ndarray, capacity: int
    ) -> Tuple[Tuple[int, ...], float]:
        """Max total gain within capacity; only strictly profitable customers enter"""
        candidates = [u for u in range(len(gains)) if gains[u] > self.tol and demands[u] <= capacity]
        table = np.zeros(capacity + 1)
        taken = np.zeros((len(candidates), capacity + 1), dtype=bool)
        for i, u in enumerate(candidates):
            d = demands[u]
            options = table[:-d] + gains[u] if d else table + gains[u]
            improves = options > table[d:] + self.tol
            taken[i, d:] = improves
            table[d:] = np.where(improves, options, table[d:])
        room = capacity
        chosen = []
        for i in reversed(range(len(candidates))):
            if taken[i, room]:
                chosen.append(candidates[i])
                room -= demands[candidates[i]]
        chosen.sort()
        return tuple(chosen), float(sum(gains[u] for u in chosen))


def price_sscflp(
    instance: SscflpInstance, duals: DualSolution, tol: float = 1e-9, deadline: Optional[float] = None
) -> PricingResult:
    return KnapsackPricer(tol).price(instance, duals, deadline)


def price_sscflp_bruteforce(
    instance: SscflpInstance, duals: DualSolution, limit: int = 16, tol: float = 1e-9
) -> PricingResult:
    """Minimum reduced cost over every capacity-feasible customer subset of every facility"""
    n = instance.n_items
    if n > limit:
        raise EnumerationLimitError(f"{n} customers exceed the enumeration limit {limit}")
    prizes = _item_duals(duals, n)
    minima: Dict[int, float] = {}
    best = None
    count = 0
    for f, facility in enumerate(instance.facilities):
        gains = prizes - instance.cost_matrix[f]
        facility_best = None
        for size in range(n + 1):
            for subset in combinations(range(n), size):
                if sum(instance.demands[u] for u in subset) > facility.capacity:
                    continue
                count += 1
                value = float(facility.open_cost + duals.pi_f[f] - sum(gains[u] for u in subset))
                if facility_best is None or _is_better(value, subset, *facility_best, tol):
                    facility_best = (value, subset)
        minima[f] = facility_best[0]
        if best is None or _is_better(facility_best[0], facility_best[1], best[0], best[1], tol):
            best = (facility_best[0], facility_best[1], f)
    value, chosen, f = best
    return PricingResult(make_assignment(instance, f, chosen), value, count, minima)
