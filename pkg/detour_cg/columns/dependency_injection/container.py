from detour_cg.columns.domain.service import ColumnPoolService
from detour_cg.columns.persistence.repository import JsonLinesColumnRepository


class ColumnContainer:
    """Dependency injection container for columns module"""

    _instance = None
    _column_pool_service = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @property
    def column_pool_service(self) -> ColumnPoolService:
        """Get column pool service singleton"""
        if self._column_pool_service is None:
            self._column_pool_service = ColumnPoolService(JsonLinesColumnRepository())
        return self._column_pool_service


# Global instance
column_container = ColumnContainer()
