from typing import Any, Dict

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel, Field

from detour_cg.instances.dependency_injection.container import instance_container
from detour_cg.instances.domain import DemandRule, InstanceError


router = APIRouter()


class GenerateCvrpRequest(BaseModel):
    seed: int = Field(ge=0)
    n_items: int = 40
    grid_size: int = 100
    capacity: int = 10
    n_vehicles: int = 5
    demand_rule: str = "unit"


@router.post("/cvrp", response_model=Dict[str, Any])
async def generate_cvrp(request: GenerateCvrpRequest):
    """Generate a seeded CVRP instance and return its JSON document"""
    service = instance_container.instance_service
    try:
        instance = service.generate_cvrp(
            request.seed,
            request.n_items,
            grid_size=request.grid_size,
            capacity=request.capacity,
            n_vehicles=request.n_vehicles,
            demand_rule=DemandRule.parse(request.demand_rule),
        )
    except (InstanceError, ValueError) as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    return service.to_document(instance)
