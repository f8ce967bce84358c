import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv

load_dotenv()


def _env(name: str, default: str) -> str:
    return os.getenv(f"DETOUR_CG_{name}", default)


@dataclass(frozen=True)
class Settings:
    """Runtime configuration read from the environment (and .env)"""
    epsilon: float
    cg_tolerance: float
    max_iterations: int
    max_wall_seconds: float
    lp_method: str
    feas_tol: float
    gap_tol: float
    pricing_tol: float
    bruteforce_limit: int
    workers: int
    log_level: str
    output_dir: str

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            epsilon=float(_env("EPSILON", "1e-4")),
            cg_tolerance=float(_env("CG_TOLERANCE", "1e-6")),
            max_iterations=int(_env("MAX_ITERATIONS", "5000")),
            max_wall_seconds=float(_env("MAX_WALL_SECONDS", "600")),
            lp_method=_env("LP_METHOD", "highs-ds"),
            feas_tol=float(_env("FEAS_TOL", "1e-7")),
            gap_tol=float(_env("GAP_TOL", "1e-7")),
            pricing_tol=float(_env("PRICING_TOL", "1e-9")),
            bruteforce_limit=int(_env("BRUTEFORCE_LIMIT", "9")),
            workers=int(_env("WORKERS", str(os.cpu_count() or 1))),
            log_level=_env("LOG_LEVEL", "INFO"),
            output_dir=_env("OUTPUT_DIR", "results"),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get settings singleton"""
    return Settings.from_env()
