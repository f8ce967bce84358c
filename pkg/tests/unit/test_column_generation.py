import numpy as np
import pytest

from detour_cg.column_generation.domain import (
    CgConfig,
    ConfigurationError,
    IterationRecord,
    artificial_columns,
    enumerate_routes,
    lagrangian_bound,
    lagrangian_bound_by_facility,
)
from detour_cg.column_generation.persistence.repository import CsvConvergenceRepository
from detour_cg.columns.domain import big_m
from detour_cg.masters.domain import Stabilization
from detour_cg.settings import Settings


def test_lagrangian_bound_examples():
    assert lagrangian_bound(100.0, -4.0, 5) == 80.0
    assert lagrangian_bound(100.0, 0.0, 5) == 100.0
    assert lagrangian_bound(100.0, 3.0, 5) == 100.0


def test_lagrangian_bound_by_facility():
    assert lagrangian_bound_by_facility(50.0, {0: -2.0, 1: 3.0, 2: -0.5}) == pytest.approx(47.5)
    assert lagrangian_bound_by_facility(50.0, {}) == 50.0


def test_artificial_columns(three_items):
    columns = artificial_columns(three_items)
    assert len(columns) == 3
    assert [sorted(c.covers) for c in columns] == [[0], [1], [2]]
    assert all(c.cost == big_m(three_items) and c.is_artificial for c in columns)


def test_enumerate_routes_one_per_subset(three_items):
    routes = enumerate_routes(three_items)
    assert sorted(tuple(sorted(r.covers)) for r in routes) == [(0,), (0, 1), (0, 2), (1,), (1, 2), (2,)]
    by_cover = {tuple(sorted(r.covers)): r.cost for r in routes}
    assert by_cover[(0, 2)] == 18


def test_config_validation():
    assert CgConfig("dtdoi_reduced").stabilization is Stabilization.DTDOI_REDUCED
    with pytest.raises(ConfigurationError):
        CgConfig("trust_region")
    with pytest.raises(ConfigurationError):
        CgConfig(tolerance=0.0)
    with pytest.raises(ConfigurationError):
        CgConfig(max_iterations=0)
    with pytest.raises(ConfigurationError):
        CgConfig(epsilon=-1.0)


def test_config_from_settings():
    settings = Settings(
        epsilon=1e-3,
        cg_tolerance=1e-5,
        max_iterations=50,
        max_wall_seconds=10.0,
        lp_method="highs-ds",
        feas_tol=1e-7,
        gap_tol=1e-7,
        pricing_tol=1e-9,
        bruteforce_limit=9,
        workers=1,
        log_level="INFO",
        output_dir="results",
    )
    config = CgConfig.from_settings(settings, "sdoi", max_iterations=7)
    assert config.stabilization is Stabilization.SDOI
    assert config.epsilon == 1e-3
    assert config.tolerance == 1e-5
    assert config.max_iterations == 7


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("DETOUR_CG_EPSILON", "0.5")
    monkeypatch.setenv("DETOUR_CG_WORKERS", "3")
    settings = Settings.from_env()
    assert settings.epsilon == 0.5
    assert settings.workers == 3
    assert settings.lp_method == "highs-ds"


def test_convergence_csv(tmp_path):
    log = [
        IterationRecord(1, 0.01, 300.0, -12.5, 237.5, 237.5, 4),
        IterationRecord(2, 0.02, 280.0, 0.0, 280.0, 280.0, 5),
    ]
    repo = CsvConvergenceRepository()
    path = repo.write(log, tmp_path / "run" / "seed1__none.csv")
    header = path.read_text().splitlines()[0]
    assert header == "iteration,elapsed_sec,rmp_obj,min_reduced_cost,lagrangian_lb,best_lb,num_columns"
    assert repo.read(path) == log


def test_convergence_csv_with_numpy_values(tmp_path):
    record = IterationRecord(
        1, 0.005, np.float64(20580.0), np.float64(-8784.0), np.float64(-5772.0), np.float64(-5772.0), 7
    )
    repo = CsvConvergenceRepository()
    path = repo.write([record], tmp_path / "seed1__none.csv")
    assert path.read_text().splitlines()[1] == "1,0.005000,20580.0,-8784.0,-5772.0,-5772.0,7"
    (again,) = repo.read(path)
    assert again.min_reduced_cost == -8784.0
    assert type(again.best_lb) is float


def test_lagrangian_bound_returns_plain_floats():
    assert type(lagrangian_bound(np.float64(100.0), np.float64(-4.0), 5)) is float
    assert type(lagrangian_bound_by_facility(np.float64(50.0), {0: np.float64(-2.0)})) is float
