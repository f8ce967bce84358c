from .entities import CgConfig, CgResult, IterationRecord, TerminationReason
from .exceptions import ColumnGenerationError, ColumnRegeneratedError, ConfigurationError
from .service import (
    ColumnGenerationService,
    IConvergenceRepository,
    artificial_columns,
    enumerate_routes,
    lagrangian_bound,
    lagrangian_bound_by_facility,
)
