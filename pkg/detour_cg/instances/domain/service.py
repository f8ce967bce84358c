import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Tuple, Union

import numpy as np

from .entities import (
    Customer,
    CvrpInstance,
    DemandRule,
    Facility,
    Item,
    SscflpInstance,
)
from .exceptions import InfeasibleInstanceError

logger = logging.getLogger(__name__)

Instance = Union[CvrpInstance, SscflpInstance]

MAX_DRAWS = 100


class IInstanceRepository(ABC):
    """Interface for instance persistence"""

    @abstractmethod
    def save(self, instance: Instance, path: Path) -> Path:
        pass

    @abstractmethod
    def load(self, path: Path) -> Instance:
        pass

    @abstractmethod
    def to_dict(self, instance: Instance) -> Dict[str, Any]:
        pass

    @abstractmethod
    def from_dict(self, data: Any) -> Instance:
        pass


def distance(instance: CvrpInstance, a: int, b: int) -> int:
    """Ceil-L2 distance between two nodes of N+ (items, -1, -2)"""
    return int(instance.distance_matrix[instance.node_index(a), instance.node_index(b)])


def generate_cvrp(
    seed: int,
    n_items: int,
    grid_size: int = 100,
    capacity: int = 10,
    n_vehicles: int = 5,
    demand_rule: DemandRule = DemandRule(),
) -> CvrpInstance:
    """Random CVRP instance on the integer grid [0, grid_size]^2.

    Uses numpy's PCG64 generator so the same seed yields the same instance on
    every platform. Depot coordinates are drawn first, then item coordinates,
    then demands.
    """
    if n_items < 1 or grid_size < 1 or capacity < 1 or n_vehicles < 1:
        raise InfeasibleInstanceError("n_items, grid_size, capacity and n_vehicles must be positive")
    if demand_rule.kind == "unit":
        if n_items > n_vehicles * capacity:
            raise InfeasibleInstanceError(
                f"{n_items} unit-demand items exceed fleet capacity {n_vehicles} x {capacity}"
            )
    elif not 1 <= demand_rule.lo <= demand_rule.hi <= capacity:
        raise InfeasibleInstanceError(
            f"demand range [{demand_rule.lo}, {demand_rule.hi}] must lie in [1, {capacity}]"
        )
    elif n_items * demand_rule.lo > n_vehicles * capacity:
        raise InfeasibleInstanceError("smallest possible total demand exceeds fleet capacity")

    rng = np.random.default_rng(seed)
    depot = tuple(int(v) for v in rng.integers(0, grid_size + 1, size=2))
    coords = rng.integers(0, grid_size + 1, size=(n_items, 2))

    for _ in range(MAX_DRAWS):
        if demand_rule.kind == "unit":
            demands = np.ones(n_items, dtype=np.int64)
        else:
            demands = rng.integers(demand_rule.lo, demand_rule.hi + 1, size=n_items)
        if int(demands.sum()) <= n_vehicles * capacity:
            break
        logger.debug("Re-drawing demands for seed %s: total %s too large", seed, demands.sum())
    else:
        raise InfeasibleInstanceError(
            f"no feasible demand draw in {MAX_DRAWS} attempts for seed {seed}"
        )

    items = tuple(
        Item(x=int(x), y=int(y), demand=int(d)) for (x, y), d in zip(coords, demands)
    )
    return CvrpInstance(items=items, depot=depot, capacity=capacity, n_vehicles=n_vehicles)


def generate_sscflp(
    seed: int,
    n_customers: int,
    n_facilities: int,
    grid_size: int = 100,
    capacity_range: Tuple[int, int] = (10, 20),
    demand_range: Tuple[int, int] = (1, 5),
    open_cost_range: Tuple[int, int] = (50, 150),
) -> SscflpInstance:
    """Random SSCFLP instance with ceil-L2 service costs"""
    cap_lo, cap_hi = capacity_range
    dem_lo, dem_hi = demand_range
    open_lo, open_hi = open_cost_range
    if n_customers < 1 or n_facilities < 1:
        raise InfeasibleInstanceError("need at least one customer and one facility")
    if not (1 <= cap_lo <= cap_hi and 1 <= dem_lo <= dem_hi and 0 <= open_lo <= open_hi):
        raise InfeasibleInstanceError("invalid ranges")
    if dem_lo > cap_hi or n_customers * dem_lo > n_facilities * cap_hi:
        raise InfeasibleInstanceError(
            f"{n_customers} customers of demand >= {dem_lo} cannot fit in "
            f"{n_facilities} facilities of capacity <= {cap_hi}"
        )

    rng = np.random.default_rng(seed)
    customer_xy = rng.integers(0, grid_size + 1, size=(n_customers, 2))
    facility_xy = rng.integers(0, grid_size + 1, size=(n_facilities, 2))
    open_costs = rng.integers(open_lo, open_hi + 1, size=n_facilities)

    for _ in range(MAX_DRAWS):
        capacities = rng.integers(cap_lo, cap_hi + 1, size=n_facilities)
        demands = rng.integers(dem_lo, dem_hi + 1, size=n_customers)
        if demands.sum() <= capacities.sum() and demands.max() <= capacities.max():
            break
    else:
        raise InfeasibleInstanceError(
            f"no feasible capacity/demand draw in {MAX_DRAWS} attempts for seed {seed}"
        )

    customers = tuple(
        Customer(x=int(x), y=int(y), demand=int(d)) for (x, y), d in zip(customer_xy, demands)
    )
    facilities = tuple(
        Facility(x=int(x), y=int(y), capacity=int(c), open_cost=int(o))
        for (x, y), c, o in zip(facility_xy, capacities, open_costs)
    )
    return SscflpInstance(customers=customers, facilities=facilities)


class InstanceService:
    """Domain service for generating, storing and loading instances"""

    def __init__(self, instance_repo: IInstanceRepository):
        self.instance_repo = instance_repo

    def generate_cvrp(self, seed: int, n_items: int, **params) -> CvrpInstance:
        instance = generate_cvrp(seed, n_items, **params)
        logger.debug("Generated CVRP instance seed=%s n=%s", seed, n_items)
        return instance

    def generate_sscflp(self, seed: int, n_customers: int, n_facilities: int, **params) -> SscflpInstance:
        return generate_sscflp(seed, n_customers, n_facilities, **params)

    def save(self, instance: Instance, path: Path) -> Path:
        return self.instance_repo.save(instance, Path(path))

    def load(self, path: Path) -> Instance:
        return self.instance_repo.load(Path(path))

    def to_document(self, instance: Instance) -> Dict[str, Any]:
        return self.instance_repo.to_dict(instance)

    def from_document(self, data: Any) -> Instance:
        """Build an instance from an already-decoded JSON document"""
        return self.instance_repo.from_dict(data)
