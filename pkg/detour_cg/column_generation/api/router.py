import logging
from typing import Any, Dict, List, Optional

from fastapi import APIRouter, HTTPException, status
from fastapi.concurrency import run_in_threadpool
from pydantic import BaseModel

from detour_cg.column_generation.dependency_injection.container import run_cg
from detour_cg.column_generation.domain import (
    CgConfig,
    CgResult,
    ColumnGenerationError,
    ConfigurationError,
)
from detour_cg.instances.dependency_injection.container import instance_container
from detour_cg.instances.domain import InstanceError
from detour_cg.masters.domain import Stabilization
from detour_cg.settings import get_settings

logger = logging.getLogger(__name__)

router = APIRouter()


class SolveRequest(BaseModel):
    instance: Dict[str, Any]
    stabilization: Stabilization = Stabilization.NONE
    epsilon: Optional[float] = None
    max_iterations: Optional[int] = None
    max_wall_seconds: Optional[float] = None


class SelectedColumn(BaseModel):
    covers: List[int]
    cost: float
    theta: float
    psi: float
    visit_order: Optional[List[int]] = None
    facility: Optional[int] = None


class SolveResponse(BaseModel):
    status: str
    stabilization: str
    objective: float
    iterations: int
    lower_bound: Optional[float] = None
    elapsed_sec: float
    columns: List[SelectedColumn]


def _solve(request: SolveRequest, kind: str) -> SolveResponse:
    try:
        instance = instance_container.instance_service.from_document(request.instance)
        if instance.kind != kind:
            raise ConfigurationError(f"expected a {kind} instance, got {instance.kind}")
        overrides = {
            key: value
            for key, value in (
                ("epsilon", request.epsilon),
                ("max_iterations", request.max_iterations),
                ("max_wall_seconds", request.max_wall_seconds),
            )
            if value is not None
        }
        config = CgConfig.from_settings(get_settings(), request.stabilization, **overrides)
    except (InstanceError, ConfigurationError) as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))

    try:
        result = run_cg(instance, config)
    except ColumnGenerationError as e:
        logger.error("CG failed after %d iterations: %s", len(e.log), e)
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e))
    return _response(result)


def _response(result: CgResult) -> SolveResponse:
    columns = [
        SelectedColumn(
            covers=sorted(column.covers),
            cost=column.cost,
            theta=theta,
            psi=psi,
            visit_order=list(column.visit_order) or None,
            facility=column.facility,
        )
        for column, theta, psi in result.selected()
    ]
    return SolveResponse(
        status=result.reason.value,
        stabilization=result.stabilization.value,
        objective=result.objective,
        iterations=result.iterations,
        lower_bound=result.lower_bound,
        elapsed_sec=result.elapsed_sec,
        columns=columns,
    )


@router.post("/cvrp/solve", response_model=SolveResponse)
async def solve_cvrp(request: SolveRequest):
    """Solve the CVRP set-cover relaxation by column generation"""
    return await run_in_threadpool(_solve, request, "cvrp")


@router.post("/sscflp/solve", response_model=SolveResponse)
async def solve_sscflp(request: SolveRequest):
    """Solve the SSCFLP relaxation by column generation"""
    return await run_in_threadpool(_solve, request, "sscflp")
