class LpError(Exception):
    """Base exception for linear programming errors"""
    pass


class LpModelError(LpError):
    """Raised when a model is malformed (duplicate names, unknown columns)"""
    pass


class LpSolveError(LpError):
    """Raised when a solve does not end in a verified optimum"""

    def __init__(self, message: str, solution=None):
        super().__init__(message)
        self.solution = solution
