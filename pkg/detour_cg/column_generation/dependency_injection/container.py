from detour_cg.column_generation.domain.entities import CgConfig, CgResult
from detour_cg.column_generation.domain.service import ColumnGenerationService
from detour_cg.column_generation.persistence.repository import CsvConvergenceRepository
from detour_cg.lp.dependency_injection.container import lp_container
from detour_cg.pricing.domain import KnapsackPricer, LabelingPricer
from detour_cg.settings import get_settings


class ColumnGenerationContainer:
    """Dependency injection container for column generation module"""

    _instance = None
    _cg_service = None
    _convergence_repo = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @property
    def cg_service(self) -> ColumnGenerationService:
        """Get column generation service singleton"""
        if self._cg_service is None:
            tol = get_settings().pricing_tol
            self._cg_service = ColumnGenerationService(
                lp_container.lp_service, LabelingPricer(tol), KnapsackPricer(tol)
            )
        return self._cg_service

    @property
    def convergence_repo(self) -> CsvConvergenceRepository:
        if self._convergence_repo is None:
            self._convergence_repo = CsvConvergenceRepository()
        return self._convergence_repo


# Global instance
cg_container = ColumnGenerationContainer()


def run_cg(instance, config: CgConfig) -> CgResult:
    """Run column generation with the configured LP oracle and pricers"""
    return cg_container.cg_service.run(instance, config)


def configured_cg_service() -> ColumnGenerationService:
    """Module-level factory so benchmark workers can rebuild the service"""
    return cg_container.cg_service
