class ColumnGenerationError(Exception):
    """Base exception for column generation runs; carries the partial log"""

    def __init__(self, message: str, log=None):
        super().__init__(message)
        self.log = list(log or [])


class ColumnRegeneratedError(ColumnGenerationError):
    """Raised when pricing returns a column that is already pooled"""
    pass


class ConfigurationError(ValueError):
    """Raised when a run configuration is invalid"""
    pass
