from detour_cg.instances.domain.service import InstanceService
from detour_cg.instances.persistence.repository import JsonInstanceRepository


class InstanceContainer:
    """Dependency injection container for instances module"""

    _instance = None
    _instance_service = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @property
    def instance_service(self) -> InstanceService:
        """Get instance service singleton"""
        if self._instance_service is None:
            self._instance_service = InstanceService(JsonInstanceRepository())
        return self._instance_service


# Global instance
instance_container = InstanceContainer()


def save_instance(instance, path):
    return instance_container.instance_service.save(instance, path)


def load_instance(path):
    """Read a CVRP or SSCFLP instance file"""
    return instance_container.instance_service.load(path)
