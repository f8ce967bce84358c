from fastapi import FastAPI

from detour_cg.column_generation.api.router import router as router_cg
from detour_cg.instances.api.router import router as router_instances
from detour_cg.logging_config import configure_logging
from detour_cg.settings import get_settings

app = FastAPI(title="detour-cg")


@app.on_event("startup")
async def startup_event():
    configure_logging(get_settings().log_level)


@app.get("/healthcheck")
async def healthcheck() -> dict[str, str]:
    return {"status": "ok"}


app.include_router(router_cg, prefix="")
app.include_router(router_instances, prefix="/instances")
