from .entities import Column, ColumnKind, DualSolution
from .exceptions import ColumnError, ColumnInvariantError, DuplicateColumnError, SwapPairError
from .service import (
    ColumnPool,
    ColumnPoolService,
    IColumnRepository,
    add_column,
    big_m,
    demand_profile,
    detour_cost,
    make_artificial,
    make_assignment,
    make_route,
    route_cost,
    smooth_rho,
    smooth_swap_set,
    validate_column,
)
