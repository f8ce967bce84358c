import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from detour_cg.instances.domain import (
    END_DEPOT,
    START_DEPOT,
    CvrpInstance,
    Instance,
    SscflpInstance,
    grid_diagonal,
)

from .entities import Column, ColumnKind
from .exceptions import ColumnInvariantError, DuplicateColumnError, SwapPairError

logger = logging.getLogger(__name__)

COST_TOL = 1e-9


def route_cost(instance: CvrpInstance, visit_order: Sequence[int]) -> int:
    """Depot -> items in order -> depot, summed over ceil-L2 legs"""
    if len(set(visit_order)) != len(visit_order):
        raise ColumnInvariantError(f"route {tuple(visit_order)} repeats an item")
    matrix = instance.distance_matrix
    path = [instance.node_index(START_DEPOT)]
    path += [instance.node_index(u) for u in visit_order]
    path.append(instance.node_index(END_DEPOT))
    return int(sum(matrix[a, b] for a, b in zip(path, path[1:])))


def big_m(instance: Instance) -> float:
    """Cost of an artificial column, above any feasible solution cost"""
    if isinstance(instance, CvrpInstance):
        return float(10 * instance.n_items * grid_diagonal(instance.grid_size))
    largest = float(instance.cost_matrix.max()) if instance.n_items else 0.0
    total_open = sum(f.open_cost for f in instance.facilities)
    return 10.0 * (total_open + instance.n_items * largest + 1.0)


def make_route(instance: CvrpInstance, visit_order: Sequence[int]) -> Column:
    visit_order = tuple(int(u) for u in visit_order)
    return Column(
        kind=ColumnKind.ROUTE,
        covers=frozenset(visit_order),
        cost=route_cost(instance, visit_order),
        visit_order=visit_order,
    )


def make_assignment(instance: SscflpInstance, facility: int, customers: Iterable[int]) -> Column:
    covers = frozenset(int(u) for u in customers)
    open_cost = instance.facilities[facility].open_cost
    service = sum(instance.service_costs[facility][u] for u in sorted(covers))
    return Column(
        kind=ColumnKind.FACILITY_ASSIGNMENT,
        covers=covers,
        cost=open_cost + service,
        facility=facility,
        open_cost=open_cost,
    )


def make_artificial(instance: Instance, item: int) -> Column:
    return Column(kind=ColumnKind.ARTIFICIAL, covers=frozenset({item}), cost=big_m(instance))


def demand_profile(instance: Instance, column: Column) -> Dict[int, int]:
    """D_dl: for each demand level d, how many covered items have demand >= d"""
    demands = instance.demands
    if column.is_artificial:
        return {d: 0 for d in instance.demand_set}
    return {d: sum(1 for u in column.covers if demands[u] >= d) for d in instance.demand_set}


def detour_cost(instance: Instance, column: Column, u: int) -> float:
    """c_ul: twice the distance from u to the nearest covered node or depot.

    For a facility assignment the detour is the facility's service cost c_fu.
    """
    if column.kind is ColumnKind.FACILITY_ASSIGNMENT:
        return instance.service_costs[column.facility][u]
    if column.kind is not ColumnKind.ROUTE:
        raise ColumnInvariantError(f"no detour cost for {column.kind.value} column")
    matrix = instance.distance_matrix
    row = instance.node_index(u)
    anchors = [instance.node_index(START_DEPOT)] + [instance.node_index(v) for v in column.covers]
    return 2 * int(min(matrix[row, v] for v in anchors))


def smooth_swap_set(instance: Instance) -> Set[Tuple[int, int]]:
    """Ordered pairs (u, v), u != v, where u can be swapped for v (d_u >= d_v)"""
    demands = instance.demands
    n = instance.n_items
    return {(u, v) for u in range(n) for v in range(n) if u != v and demands[u] >= demands[v]}


def smooth_rho(instance: Instance, u: int, v: int, epsilon: float = 1e-4) -> float:
    """rho_uv = 2 c_uv + epsilon for routes.

    For facility assignments, serving v instead of u costs at most
    max_f (c_fv - c_fu) more, and dropping u when v is already served costs nothing.
    """
    if u == v or instance.demands[u] < instance.demands[v]:
        raise SwapPairError(f"({u}, {v}) is not a swap pair")
    if isinstance(instance, SscflpInstance):
        costs = instance.cost_matrix
        return max(0.0, float((costs[:, v] - costs[:, u]).max())) + epsilon
    return 2.0 * float(instance.distance_matrix[u, v]) + epsilon


def validate_column(instance: Instance, column: Column) -> None:
    """Raise ColumnInvariantError unless the column is valid for the instance"""
    n = instance.n_items
    if any(not 0 <= u < n for u in column.covers):
        raise ColumnInvariantError(f"{column.describe()} covers an unknown item")
    if column.kind is ColumnKind.ARTIFICIAL:
        if len(column.covers) != 1:
            raise ColumnInvariantError("artificial columns cover exactly one item")
        if column.cost != big_m(instance):
            raise ColumnInvariantError("artificial columns cost BIG_M")
        return
    load = sum(instance.demands[u] for u in column.covers)
    if column.kind is ColumnKind.ROUTE:
        if not isinstance(instance, CvrpInstance):
            raise ColumnInvariantError("route column on a non-CVRP instance")
        if column.covers != frozenset(column.visit_order) or len(column.visit_order) != len(column.covers):
            raise ColumnInvariantError(f"{column.describe()} repeats an item")
        if load > instance.capacity:
            raise ColumnInvariantError(
                f"{column.describe()} carries {load} > capacity {instance.capacity}"
            )
        if column.cost != route_cost(instance, column.visit_order):
            raise ColumnInvariantError(f"{column.describe()} has inconsistent cost {column.cost}")
        return
    if not isinstance(instance, SscflpInstance):
        raise ColumnInvariantError("facility assignment on a non-SSCFLP instance")
    if column.facility is None or not 0 <= column.facility < instance.n_facilities:
        raise ColumnInvariantError("assignment references an unknown facility")
    capacity = instance.facilities[column.facility].capacity
    if load > capacity:
        raise ColumnInvariantError(f"{column.describe()} carries {load} > capacity {capacity}")
    expected = make_assignment(instance, column.facility, column.covers).cost
    if abs(column.cost - expected) > COST_TOL * max(1.0, abs(expected)):
        raise ColumnInvariantError(f"{column.describe()} has inconsistent cost {column.cost}")


class IColumnRepository(ABC):
    """Interface for column pool dumps"""

    @abstractmethod
    def dump(self, columns: Sequence[Column], path: Path) -> Path:
        pass

    @abstractmethod
    def load(self, path: Path) -> List[Column]:
        pass


class ColumnPool:
    """Restricted column set with stable ids and a dedup index.

    Single writer: only the CG loop adds columns. `snapshot()` hands out an
    immutable view for concurrent readers.
    """

    def __init__(self, instance: Instance, columns: Iterable[Column] = ()):
        self.instance = instance
        self._columns: List[Column] = []
        self._index: Dict[object, int] = {}
        for column in columns:
            self.add(column)

    def __len__(self) -> int:
        return len(self._columns)

    def __iter__(self):
        return iter(self._columns)

    def __getitem__(self, column_id: int) -> Column:
        return self._columns[column_id]

    def __contains__(self, column: Column) -> bool:
        return column.key in self._index

    def add(self, column: Column, strict: bool = False) -> int:
        """Append a column, or return the id of an identical one already pooled.

        With `strict`, a pooled duplicate raises `DuplicateColumnError` instead.
        """
        existing = self._index.get(column.key)
        if existing is not None:
            if strict:
                raise DuplicateColumnError(f"{column.describe()} is already column {existing}")
            return existing
        validate_column(self.instance, column)
        column_id = len(self._columns)
        self._columns.append(column)
        self._index[column.key] = column_id
        return column_id

    def items(self):
        return enumerate(self._columns)

    def real_items(self):
        """(id, column) pairs excluding artificial columns"""
        return [(i, col) for i, col in enumerate(self._columns) if not col.is_artificial]

    def artificial_items(self):
        return [(i, col) for i, col in enumerate(self._columns) if col.is_artificial]

    def snapshot(self) -> Tuple[Column, ...]:
        return tuple(self._columns)


def add_column(pool: ColumnPool, column: Column, strict: bool = False) -> int:
    return pool.add(column, strict)


class ColumnPoolService:
    """Domain service for pool persistence"""

    def __init__(self, column_repo: IColumnRepository):
        self.column_repo = column_repo

    def dump(self, pool: ColumnPool, path: Path) -> Path:
        logger.debug("Dumping %d columns to %s", len(pool), path)
        return self.column_repo.dump(pool.snapshot(), Path(path))

    def load(self, instance: Instance, path: Path) -> ColumnPool:
        return ColumnPool(instance, self.column_repo.load(Path(path)))
