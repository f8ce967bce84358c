class MasterError(Exception):
    """Base exception for master problem construction"""
    pass


class UncoveredItemError(MasterError):
    """Raised when no pooled column covers some item"""
    pass


class MissingSmoothingCostError(MasterError):
    """Raised when a swap pair has no rho value"""
    pass


class MixedPoolError(MasterError):
    """Raised when a pool mixes route and facility assignment columns"""
    pass


class NonOptimalSolutionError(MasterError):
    """Raised when duals are requested from a non-optimal LP solution"""
    pass
