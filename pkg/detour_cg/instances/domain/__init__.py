from .entities import (
    END_DEPOT,
    START_DEPOT,
    Customer,
    CvrpInstance,
    DemandRule,
    Facility,
    Item,
    SscflpInstance,
    grid_diagonal,
)
from .exceptions import (
    InfeasibleInstanceError,
    InstanceError,
    InstanceFormatError,
    UnknownNodeError,
)
from .service import (
    IInstanceRepository,
    Instance,
    InstanceService,
    distance,
    generate_cvrp,
    generate_sscflp,
)
