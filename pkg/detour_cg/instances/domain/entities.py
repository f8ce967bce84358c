import math
from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Optional, Tuple

import numpy as np

from .exceptions import InfeasibleInstanceError, UnknownNodeError

START_DEPOT = -1
END_DEPOT = -2


def ceil_distances(xs: np.ndarray, ys: np.ndarray, xt: np.ndarray, yt: np.ndarray) -> np.ndarray:
    """Exact ceil of the Euclidean distance between two integer point sets"""
    squared = (xs[:, None] - xt[None, :]) ** 2 + (ys[:, None] - yt[None, :]) ** 2
    squared = squared.astype(np.int64)
    root = np.ceil(np.sqrt(squared)).astype(np.int64)
    # float sqrt can be off by one around perfect squares
    root = np.where((root - 1) ** 2 >= squared, root - 1, root)
    root = np.where(root**2 < squared, root + 1, root)
    return np.maximum(root, 0)


@dataclass(frozen=True)
class Item:
    """A CVRP item (customer) on the integer grid"""
    x: int
    y: int
    demand: int


@dataclass(frozen=True)
class CvrpInstance:
    """Capacitated vehicle routing instance; depot serves as start (-1) and end (-2)"""
    items: Tuple[Item, ...]
    depot: Tuple[int, int]
    capacity: int
    n_vehicles: int

    kind: Literal["cvrp"] = "cvrp"

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "depot", (int(self.depot[0]), int(self.depot[1])))
        if self.capacity < 1:
            raise InfeasibleInstanceError("capacity must be positive")
        if self.n_vehicles < 1:
            raise InfeasibleInstanceError("at least one vehicle is required")
        for index, item in enumerate(self.items):
            if not 1 <= item.demand <= self.capacity:
                raise InfeasibleInstanceError(
                    f"item {index} has demand {item.demand} outside [1, {self.capacity}]"
                )
        if self.total_demand > self.n_vehicles * self.capacity:
            raise InfeasibleInstanceError(
                f"total demand {self.total_demand} exceeds fleet capacity "
                f"{self.n_vehicles} x {self.capacity}"
            )

    @property
    def n_items(self) -> int:
        return len(self.items)

    @cached_property
    def demands(self) -> Tuple[int, ...]:
        return tuple(item.demand for item in self.items)

    @property
    def total_demand(self) -> int:
        return sum(item.demand for item in self.items)

    @cached_property
    def demand_set(self) -> Tuple[int, ...]:
        """Sorted distinct item demands"""
        return tuple(sorted(set(self.demands)))

    @cached_property
    def grid_size(self) -> int:
        """Smallest square grid [0, g]^2 holding every node"""
        coords = [*self.depot] + [c for item in self.items for c in (item.x, item.y)]
        return max(1, max(coords))

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """Integer (n+1)x(n+1) matrix; index n is the depot"""
        xs = np.array([item.x for item in self.items] + [self.depot[0]], dtype=np.int64)
        ys = np.array([item.y for item in self.items] + [self.depot[1]], dtype=np.int64)
        matrix = ceil_distances(xs, ys, xs, ys)
        matrix.setflags(write=False)
        return matrix

    def node_index(self, node: int) -> int:
        """Row of `distance_matrix` for an item id or depot id"""
        if node in (START_DEPOT, END_DEPOT):
            return self.n_items
        if 0 <= node < self.n_items:
            return node
        raise UnknownNodeError(f"unknown node id {node}")


@dataclass(frozen=True)
class Customer:
    """An SSCFLP customer"""
    x: int
    y: int
    demand: int


@dataclass(frozen=True)
class Facility:
    """An SSCFLP facility with a fixed opening cost"""
    x: int
    y: int
    capacity: int
    open_cost: float


@dataclass(frozen=True)
class SscflpInstance:
    """Single-source capacitated facility location instance"""
    customers: Tuple[Customer, ...]
    facilities: Tuple[Facility, ...]
    service_costs: Optional[Tuple[Tuple[float, ...], ...]] = None

    kind: Literal["sscflp"] = "sscflp"

    def __post_init__(self):
        object.__setattr__(self, "customers", tuple(self.customers))
        object.__setattr__(self, "facilities", tuple(self.facilities))
        if not self.facilities:
            raise InfeasibleInstanceError("at least one facility is required")
        if self.service_costs is None:
            xs = np.array([f.x for f in self.facilities], dtype=np.int64)
            ys = np.array([f.y for f in self.facilities], dtype=np.int64)
            xt = np.array([c.x for c in self.customers], dtype=np.int64)
            yt = np.array([c.y for c in self.customers], dtype=np.int64)
            costs = ceil_distances(xs, ys, xt, yt)
            object.__setattr__(
                self, "service_costs", tuple(tuple(int(v) for v in row) for row in costs)
            )
        else:
            object.__setattr__(
                self, "service_costs", tuple(tuple(row) for row in self.service_costs)
            )
            if len(self.service_costs) != len(self.facilities) or any(
                len(row) != len(self.customers) for row in self.service_costs
            ):
                raise InfeasibleInstanceError("service cost matrix must be facility x customer")
            if any(v < 0 for row in self.service_costs for v in row):
                raise InfeasibleInstanceError("service costs must be nonnegative")
        largest = max(f.capacity for f in self.facilities)
        for index, customer in enumerate(self.customers):
            if customer.demand < 1:
                raise InfeasibleInstanceError(f"customer {index} has nonpositive demand")
            if customer.demand > largest:
                raise InfeasibleInstanceError(
                    f"customer {index} with demand {customer.demand} fits no facility"
                )
        if sum(f.capacity for f in self.facilities) < self.total_demand:
            raise InfeasibleInstanceError("total facility capacity is below total demand")

    @property
    def n_items(self) -> int:
        return len(self.customers)

    @property
    def n_facilities(self) -> int:
        return len(self.facilities)

    @cached_property
    def demands(self) -> Tuple[int, ...]:
        return tuple(c.demand for c in self.customers)

    @property
    def total_demand(self) -> int:
        return sum(c.demand for c in self.customers)

    @cached_property
    def demand_set(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.demands)))

    @cached_property
    def cost_matrix(self) -> np.ndarray:
        matrix = np.array(self.service_costs, dtype=float).reshape(
            self.n_facilities, self.n_items
        )
        matrix.setflags(write=False)
        return matrix


@dataclass(frozen=True)
class DemandRule:
    """How item demands are drawn: all ones, or uniform integers in [lo, hi]"""
    kind: Literal["unit", "uniform"] = "unit"
    lo: int = 1
    hi: int = 1

    @classmethod
    def parse(cls, text: str) -> "DemandRule":
        """Parse 'unit' or 'uniform:lo:hi'"""
        if text == "unit":
            return cls()
        parts = text.split(":")
        if len(parts) == 3 and parts[0] == "uniform":
            return cls(kind="uniform", lo=int(parts[1]), hi=int(parts[2]))
        raise ValueError(f"invalid demand rule '{text}'")

    def __str__(self) -> str:
        return "unit" if self.kind == "unit" else f"uniform:{self.lo}:{self.hi}"


def grid_diagonal(grid_size: int) -> int:
    return math.ceil(grid_size * math.sqrt(2))
