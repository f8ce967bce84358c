from .entities import LpModel, LpRow, LpSolution, LpStatus, LpVariable, Sense
from .exceptions import LpError, LpModelError, LpSolveError
from .service import ILpSolver, ILpWriter, LpService
