class BenchmarkError(Exception):
    """Base exception for benchmark errors"""
    pass


class ObjectiveMismatchError(BenchmarkError):
    """Raised when stabilizations disagree on the final objective of an instance"""

    def __init__(self, message: str, rows=None, mismatches=None):
        super().__init__(message)
        self.rows = rows or []
        self.mismatches = mismatches or []


class EmptySummaryError(BenchmarkError):
    """Raised when no completed instance is available to summarize"""
    pass
