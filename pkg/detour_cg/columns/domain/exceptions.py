class ColumnError(Exception):
    """Base exception for column errors"""
    pass


class ColumnInvariantError(ColumnError):
    """Raised when a column breaks capacity, elementarity or cost invariants"""
    pass


class SwapPairError(ColumnError):
    """Raised when a smoothing cost is requested for a pair outside the swap set"""
    pass


class DuplicateColumnError(ColumnError):
    """Raised when a strict insert finds the column already pooled"""
    pass
