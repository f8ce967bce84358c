class InstanceError(Exception):
    """Base exception for problem instance errors"""
    pass


class InfeasibleInstanceError(InstanceError):
    """Raised when generator parameters or instance data admit no feasible cover"""
    pass


class UnknownNodeError(InstanceError):
    """Raised when a node id is neither an item nor a depot"""
    pass


class InstanceFormatError(InstanceError):
    """Raised when an instance file is malformed"""

    def __init__(self, field: str, message: str = ""):
        self.field = field
        super().__init__(f"invalid instance file, field '{field}': {message}".rstrip(": "))
