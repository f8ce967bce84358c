import json
from pathlib import Path
from typing import Any, Dict, List

from detour_cg.instances.domain.entities import (
    Customer,
    CvrpInstance,
    Facility,
    Item,
    SscflpInstance,
)
from detour_cg.instances.domain.exceptions import InstanceError, InstanceFormatError
from detour_cg.instances.domain.service import IInstanceRepository, Instance


def _require(data: Dict[str, Any], field: str) -> Any:
    if field not in data:
        raise InstanceFormatError(field, "missing")
    return data[field]


def _int(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceFormatError(field, f"expected integer, got {value!r}")
    return value


def _int_row(row: Any, width: int, field: str) -> List[int]:
    if not isinstance(row, list) or len(row) != width:
        raise InstanceFormatError(field, f"expected a list of {width} integers, got {row!r}")
    return [_int(v, field) for v in row]


class JsonInstanceRepository(IInstanceRepository):
    """JSON file implementation of instance repository"""

    def save(self, instance: Instance, path: Path) -> Path:
        """Write an instance as JSON"""
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(instance)))
        return path

    def load(self, path: Path) -> Instance:
        """Read an instance from JSON"""
        text = path.read_text()
        if not text.strip():
            raise InstanceFormatError("document", "empty file")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InstanceFormatError("document", str(e))
        return self.from_dict(data)

    @staticmethod
    def to_dict(instance: Instance) -> Dict[str, Any]:
        if isinstance(instance, CvrpInstance):
            return {
                "type": "cvrp",
                "depot": list(instance.depot),
                "capacity": instance.capacity,
                "vehicles": instance.n_vehicles,
                "items": [[i.x, i.y, i.demand] for i in instance.items],
            }
        return {
            "type": "sscflp",
            "customers": [[c.x, c.y, c.demand] for c in instance.customers],
            "facilities": [[f.x, f.y, f.capacity, f.open_cost] for f in instance.facilities],
            "service_costs": [list(row) for row in instance.service_costs],
        }

    @staticmethod
    def from_dict(data: Any) -> Instance:
        if not isinstance(data, dict):
            raise InstanceFormatError("document", "expected a JSON object")
        kind = _require(data, "type")
        try:
            if kind == "cvrp":
                depot = _int_row(_require(data, "depot"), 2, "depot")
                capacity = _int(_require(data, "capacity"), "capacity")
                vehicles = _int(_require(data, "vehicles"), "vehicles")
                rows = _require(data, "items")
                if not isinstance(rows, list):
                    raise InstanceFormatError("items", "expected a list")
                items = tuple(Item(*_int_row(row, 3, "items")) for row in rows)
                return CvrpInstance(
                    items=items, depot=tuple(depot), capacity=capacity, n_vehicles=vehicles
                )
            if kind == "sscflp":
                customer_rows = _require(data, "customers")
                facility_rows = _require(data, "facilities")
                if not isinstance(customer_rows, list):
                    raise InstanceFormatError("customers", "expected a list")
                if not isinstance(facility_rows, list):
                    raise InstanceFormatError("facilities", "expected a list")
                customers = tuple(
                    Customer(*_int_row(row, 3, "customers")) for row in customer_rows
                )
                facilities = tuple(
                    Facility(*_int_row(row, 4, "facilities")) for row in facility_rows
                )
                service_costs = data.get("service_costs")
                if service_costs is not None:
                    if not isinstance(service_costs, list):
                        raise InstanceFormatError("service_costs", "expected a matrix")
                    service_costs = tuple(
                        tuple(_int_row(row, len(customers), "service_costs"))
                        for row in service_costs
                    )
                return SscflpInstance(
                    customers=customers, facilities=facilities, service_costs=service_costs
                )
        except InstanceFormatError:
            raise
        except InstanceError as e:
            raise InstanceFormatError(kind, str(e))
        raise InstanceFormatError("type", f"unknown instance type {kind!r}")
