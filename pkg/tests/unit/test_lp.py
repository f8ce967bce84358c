import numpy as np
import pytest

from detour_cg.lp.backends.highs_solver import HighsLpSolver
from detour_cg.lp.dependency_injection.container import solve_lp
from detour_cg.lp.domain import (
    ILpSolver,
    LpModel,
    LpModelError,
    LpService,
    LpSolution,
    LpSolveError,
    LpStatus,
    Sense,
)
from detour_cg.lp.persistence.lp_writer import CplexLpWriter


def one_variable(objective=1.0):
    model = LpModel("one")
    model.add_variable("x", objective)
    return model


def test_single_variable_optimum(lp_service):
    model = one_variable()
    model.add_row("r", [("x", 1.0)], Sense.GE, 1.0)
    solution = lp_service.solve(model)
    assert solution.is_optimal
    assert solution.objective == pytest.approx(1.0)
    assert solution.primal["x"] == pytest.approx(1.0)
    assert solution.duals["r"] == pytest.approx(1.0)


def test_configured_oracle_solves():
    model = one_variable(2.0)
    model.add_row("r", [("x", 1.0)], Sense.GE, 3.0)
    solution = solve_lp(model)
    assert solution.objective == pytest.approx(6.0)
    assert solution.duals["r"] == pytest.approx(2.0)


def test_infeasible(lp_service):
    model = one_variable()
    model.add_row("lo", [("x", 1.0)], Sense.GE, 1.0)
    model.add_row("hi", [("x", 1.0)], Sense.LE, 0.0)
    assert lp_service.solve(model).status is LpStatus.INFEASIBLE
    with pytest.raises(LpSolveError) as error:
        lp_service.solve_optimal(model)
    assert error.value.solution.status is LpStatus.INFEASIBLE


def test_unbounded(lp_service):
    model = one_variable(-1.0)
    model.add_row("r", [("x", 1.0)], Sense.GE, 0.0)
    assert lp_service.solve(model).status is LpStatus.UNBOUNDED


def test_le_row_dual_is_nonpositive(lp_service):
    model = one_variable(-1.0)
    model.add_row("cap", [("x", 1.0)], Sense.LE, 2.0)
    solution = lp_service.solve_optimal(model)
    assert solution.objective == pytest.approx(-2.0)
    assert solution.duals["cap"] == pytest.approx(-1.0)


def test_equality_row(lp_service):
    model = LpModel()
    model.add_variable("x", 1.0)
    model.add_variable("y", 2.0)
    model.add_row("sum", [("x", 1.0), ("y", 1.0)], Sense.EQ, 3.0)
    solution = lp_service.solve_optimal(model)
    assert solution.objective == pytest.approx(3.0)
    assert solution.duals["sum"] == pytest.approx(1.0)


def test_variable_upper_bound(lp_service):
    model = LpModel()
    model.add_variable("x", -1.0, upper=4.0)
    model.add_row("r", [("x", 1.0)], Sense.GE, 0.0)
    solution = lp_service.solve_optimal(model)
    assert solution.objective == pytest.approx(-4.0)


def test_strong_duality_on_small_cover():
    model = LpModel()
    for name, cost in (("a", 3.0), ("b", 4.0), ("c", 6.0)):
        model.add_variable(name, cost)
    model.add_row("u1", [("a", 1.0), ("c", 1.0)], Sense.GE, 1.0)
    model.add_row("u2", [("b", 1.0), ("c", 1.0)], Sense.GE, 1.0)
    model.add_row("fleet", [("a", 1.0), ("b", 1.0), ("c", 1.0)], Sense.LE, 1.0)
    solution = HighsLpSolver().solve(model)
    assert solution.is_optimal
    assert solution.objective == pytest.approx(6.0)
    dual_objective = solution.duals["u1"] + solution.duals["u2"] + solution.duals["fleet"]
    assert dual_objective == pytest.approx(solution.objective, abs=1e-7)


def test_model_errors():
    model = one_variable()
    with pytest.raises(LpModelError):
        model.add_variable("x", 2.0)
    with pytest.raises(LpModelError):
        model.add_row("r", [("z", 1.0)], Sense.GE, 1.0)
    model.add_row("r", [("x", 1.0)], Sense.GE, 1.0)
    with pytest.raises(LpModelError):
        model.add_row("r", [("x", 1.0)], Sense.GE, 2.0)


def test_empty_model_fails(lp_service):
    assert lp_service.solve(LpModel()).status is LpStatus.FAILED


def test_verification_catches_bad_duals():
    model = one_variable()
    model.add_row("r", [("x", 1.0)], Sense.GE, 1.0)
    solver = HighsLpSolver()
    gap = LpSolution(LpStatus.OPTIMAL, 1.0, {"x": 1.0}, {"r": 0.5})
    assert "duality gap" in solver._verify(model, gap, np.zeros(1))
    sign = LpSolution(LpStatus.OPTIMAL, 1.0, {"x": 1.0}, {"r": -1.0})
    assert "wrong sign" in solver._verify(model, sign, np.zeros(1))
    infeasible = LpSolution(LpStatus.OPTIMAL, 0.5, {"x": 0.5}, {"r": 1.0})
    assert "violated" in solver._verify(model, infeasible, np.zeros(1))


class FailingSolver(ILpSolver):
    def solve(self, model):
        return LpSolution(LpStatus.FAILED, message="numerical trouble")


def test_service_raises_on_failed_solve():
    service = LpService(FailingSolver(), CplexLpWriter())
    with pytest.raises(LpSolveError) as error:
        service.solve_optimal(one_variable())
    assert "numerical trouble" in str(error.value)


def test_lp_text(tmp_path, lp_service):
    model = LpModel("demo")
    model.add_variable("x", 1.0, upper=4.0)
    model.add_variable("y", -2.5)
    model.add_row("r", [("x", 1.0), ("y", -1.0)], Sense.GE, 1.0)
    text = CplexLpWriter.to_text(model)
    assert text.splitlines() == [
        "\\ demo",
        "Minimize",
        " obj: 1 x - 2.5 y",
        "Subject To",
        " r: 1 x - 1 y >= 1",
        "Bounds",
        " 0 <= x <= 4",
        "End",
    ]
    path = lp_service.dump(model, tmp_path / "out" / "demo.lp")
    assert path.read_text() == text
