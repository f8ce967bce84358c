import pytest

from detour_cg.column_generation.domain import ColumnGenerationService
from detour_cg.instances.domain import CvrpInstance, Item, generate_cvrp
from detour_cg.lp.backends.highs_solver import HighsLpSolver
from detour_cg.lp.domain import LpService
from detour_cg.lp.persistence.lp_writer import CplexLpWriter
from detour_cg.pricing.domain import KnapsackPricer, LabelingPricer


@pytest.fixture
def lp_service():
    return LpService(HighsLpSolver(), CplexLpWriter())


@pytest.fixture
def cg_service(lp_service):
    return ColumnGenerationService(lp_service, LabelingPricer(), KnapsackPricer())


@pytest.fixture
def single_item():
    """One unit-demand item at (3, 4), depot at the origin"""
    return CvrpInstance(items=(Item(3, 4, 1),), depot=(0, 0), capacity=1, n_vehicles=1)


@pytest.fixture
def three_items():
    return CvrpInstance(
        items=(Item(0, 5, 1), Item(5, 5, 1), Item(5, 0, 1)),
        depot=(0, 0),
        capacity=2,
        n_vehicles=2,
    )


@pytest.fixture
def small_cvrp():
    """Seeded instances small enough for the enumeration oracles"""

    def make(seed: int, n_items: int = 7, capacity: int = 3, n_vehicles: int = 3, grid_size: int = 30):
        return generate_cvrp(
            seed, n_items, grid_size=grid_size, capacity=capacity, n_vehicles=n_vehicles
        )

    return make
