import logging
from abc import ABC, abstractmethod
from pathlib import Path

from .entities import LpModel, LpSolution, LpStatus
from .exceptions import LpSolveError

logger = logging.getLogger(__name__)


class ILpSolver(ABC):
    """Interface for an LP oracle that exposes row duals"""

    @abstractmethod
    def solve(self, model: LpModel) -> LpSolution:
        pass


class ILpWriter(ABC):
    """Interface for LP text dumps"""

    @abstractmethod
    def write(self, model: LpModel, path: Path) -> Path:
        pass


class LpService:
    """Domain service wrapping the configured LP oracle"""

    def __init__(self, solver: ILpSolver, writer: ILpWriter):
        self.solver = solver
        self.writer = writer

    def solve(self, model: LpModel) -> LpSolution:
        """Solve; non-optimal outcomes are reported through the status"""
        solution = self.solver.solve(model)
        if solution.status is LpStatus.FAILED:
            logger.warning("LP '%s' failed: %s", model.name, solution.message)
        return solution

    def solve_optimal(self, model: LpModel) -> LpSolution:
        """Solve and raise unless the result is a verified optimum"""
        solution = self.solve(model)
        if not solution.is_optimal:
            raise LpSolveError(
                f"LP '{model.name}' ended with status {solution.status.value}: {solution.message}",
                solution,
            )
        return solution

    def dump(self, model: LpModel, path: Path) -> Path:
        return self.writer.write(model, Path(path))
