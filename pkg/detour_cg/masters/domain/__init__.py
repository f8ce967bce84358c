from .entities import MasterModel, Stabilization
from .exceptions import (
    MasterError,
    MissingSmoothingCostError,
    MixedPoolError,
    NonOptimalSolutionError,
    UncoveredItemError,
)
from .service import (
    MasterBuilder,
    build_dtdoi_full,
    build_dtdoi_reduced,
    build_sdoi,
    build_sscflp_dtdoi,
    build_sscflp_sdoi,
    build_sscflp_unstab,
    build_unstabilized,
    extract_duals,
)
