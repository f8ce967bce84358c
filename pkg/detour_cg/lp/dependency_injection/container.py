from detour_cg.lp.backends.highs_solver import HighsLpSolver
from detour_cg.lp.domain.service import LpService
from detour_cg.lp.persistence.lp_writer import CplexLpWriter
from detour_cg.settings import get_settings


class LpContainer:
    """Dependency injection container for lp module"""

    _instance = None
    _lp_service = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @property
    def lp_service(self) -> LpService:
        """Get LP service singleton"""
        if self._lp_service is None:
            settings = get_settings()
            solver = HighsLpSolver(
                method=settings.lp_method,
                feas_tol=settings.feas_tol,
                gap_tol=settings.gap_tol,
            )
            self._lp_service = LpService(solver, CplexLpWriter())
        return self._lp_service


# Global instance
lp_container = LpContainer()


def solve_lp(model):
    """Solve with the configured oracle"""
    return lp_container.lp_service.solve(model)


def write_lp(model, path):
    """Dump a model as CPLEX-LP text"""
    return lp_container.lp_service.dump(model, path)
