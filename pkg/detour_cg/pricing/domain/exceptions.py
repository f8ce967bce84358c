class PricingError(Exception):
    """Base exception for pricing errors"""
    pass


class MissingDualError(PricingError):
    """Raised when the duals lack an entry pricing needs"""
    pass


class EnumerationLimitError(PricingError):
    """Raised when an enumeration oracle is asked to price a too-large instance"""
    pass


class PricingDeadlineError(PricingError):
    """Raised when pricing runs past the caller's deadline"""
    pass
