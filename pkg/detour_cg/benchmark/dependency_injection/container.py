from detour_cg.benchmark.domain.service import BenchmarkService
from detour_cg.column_generation.dependency_injection.container import cg_container, configured_cg_service
from detour_cg.instances.dependency_injection.container import instance_container


class BenchmarkContainer:
    """Dependency injection container for benchmark module"""

    _instance = None
    _benchmark_service = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @property
    def benchmark_service(self) -> BenchmarkService:
        """Get benchmark service singleton"""
        if self._benchmark_service is None:
            self._benchmark_service = BenchmarkService(
                instance_container.instance_service,
                configured_cg_service,
                cg_container.convergence_repo,
            )
        return self._benchmark_service


# Global instance
benchmark_container = BenchmarkContainer()


def run_benchmark(config):
    """Run the seed x stabilization matrix; returns the summary rows"""
    return benchmark_container.benchmark_service.run(config)
