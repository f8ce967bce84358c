import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from detour_cg.lp.domain.entities import LpModel, LpSolution, LpStatus, Sense
from detour_cg.lp.domain.service import ILpSolver

logger = logging.getLogger(__name__)

_OPTIMAL, _ITERATION_LIMIT, _INFEASIBLE, _UNBOUNDED, _NUMERICAL = 0, 1, 2, 3, 4


class HighsLpSolver(ILpSolver):
    """scipy/HiGHS implementation of the LP oracle.

    >= rows are negated into A_ub, so their duals are the negated
    `ineqlin.marginals`; <= rows and = rows use the marginals as reported.
    """

    def __init__(
        self,
        method: str = "highs-ds",
        feas_tol: float = 1e-7,
        gap_tol: float = 1e-7,
        solver_tol: float = 1e-9,
    ):
        self.method = method
        self.feas_tol = feas_tol
        self.gap_tol = gap_tol
        self.solver_tol = solver_tol

    def solve(self, model: LpModel) -> LpSolution:
        names = model.variable_names()
        if not names:
            return LpSolution(LpStatus.FAILED, message="model has no columns")
        index = {name: j for j, name in enumerate(names)}
        c = np.array([model.variables[n].objective for n in names])
        bounds = [(0, model.variables[n].upper) for n in names]

        ub_rows, eq_rows = [], []
        for row in model.rows.values():
            (eq_rows if row.sense is Sense.EQ else ub_rows).append(row)
        A_ub, b_ub = self._stack(ub_rows, index, len(names), flip_ge=True)
        A_eq, b_eq = self._stack(eq_rows, index, len(names), flip_ge=False)

        res = self._linprog(c, A_ub, b_ub, A_eq, b_eq, bounds)
        if res.status == _OPTIMAL:
            primal = dict(zip(names, (float(v) for v in res.x)))
            duals: Dict[str, float] = {}
            if ub_rows:
                for row, marginal in zip(ub_rows, res.ineqlin.marginals):
                    duals[row.name] = -float(marginal) if row.sense is Sense.GE else float(marginal)
            if eq_rows:
                for row, marginal in zip(eq_rows, res.eqlin.marginals):
                    duals[row.name] = float(marginal)
            solution = LpSolution(LpStatus.OPTIMAL, float(res.fun), primal, duals)
            upper_marginals = np.asarray(res.upper.marginals, dtype=float)
            problem = self._verify(model, solution, upper_marginals)
            if problem:
                logger.warning("Rejecting HiGHS optimum for '%s': %s", model.name, problem)
                return LpSolution(LpStatus.FAILED, solution.objective, primal, duals, problem)
            return solution
        if res.status == _INFEASIBLE and "unbounded" not in res.message.lower():
            return LpSolution(LpStatus.INFEASIBLE, message=res.message)
        if res.status == _UNBOUNDED:
            return LpSolution(LpStatus.UNBOUNDED, message=res.message)
        if res.status in (_INFEASIBLE, _NUMERICAL) and "unbounded" in res.message.lower():
            # "infeasible or unbounded": a zero objective decides between the two
            feasibility = self._linprog(np.zeros_like(c), A_ub, b_ub, A_eq, b_eq, bounds)
            if feasibility.status == _OPTIMAL:
                return LpSolution(LpStatus.UNBOUNDED, message=res.message)
            if feasibility.status == _INFEASIBLE:
                return LpSolution(LpStatus.INFEASIBLE, message=res.message)
        return LpSolution(LpStatus.FAILED, message=f"HiGHS status {res.status}: {res.message}")

    def _linprog(self, c, A_ub, b_ub, A_eq, b_eq, bounds):
        return linprog(
            c,
            A_ub=A_ub,
            b_ub=b_ub,
            A_eq=A_eq,
            b_eq=b_eq,
            bounds=bounds,
            method=self.method,
            options={
                "primal_feasibility_tolerance": self.solver_tol,
                "dual_feasibility_tolerance": self.solver_tol,
            },
        )

    @staticmethod
    def _stack(rows, index, n_cols: int, flip_ge: bool) -> Tuple[Optional[csr_matrix], Optional[np.ndarray]]:
        if not rows:
            return None, None
        data: List[float] = []
        row_ids: List[int] = []
        col_ids: List[int] = []
        rhs = np.empty(len(rows))
        for i, row in enumerate(rows):
            sign = -1.0 if flip_ge and row.sense is Sense.GE else 1.0
            for var, coef in row.coefficients:
                data.append(sign * coef)
                row_ids.append(i)
                col_ids.append(index[var])
            rhs[i] = sign * row.rhs
        matrix = csr_matrix((data, (row_ids, col_ids)), shape=(len(rows), n_cols))
        return matrix, rhs

    def _verify(self, model: LpModel, solution: LpSolution, upper_marginals: np.ndarray) -> str:
        """Return a description of the first violated optimality check, or ''"""
        tol = self.feas_tol
        x = solution.primal
        for name, var in model.variables.items():
            if x[name] < -tol or (var.upper is not None and x[name] > var.upper + tol):
                return f"column {name} = {x[name]} violates its bounds"

        reduced = {name: var.objective for name, var in model.variables.items()}
        dual_objective = 0.0
        max_dual = max((abs(y) for y in solution.duals.values()), default=0.0)
        for row in model.rows.values():
            y = solution.duals[row.name]
            activity = sum(coef * x[var] for var, coef in row.coefficients)
            scale = max(1.0, abs(row.rhs))
            if row.sense is Sense.GE:
                violation, slack, sign_ok = row.rhs - activity, activity - row.rhs, y >= -tol
            elif row.sense is Sense.LE:
                violation, slack, sign_ok = activity - row.rhs, row.rhs - activity, y <= tol
            else:
                violation, slack, sign_ok = abs(activity - row.rhs), 0.0, True
            if violation > tol * scale:
                return f"row {row.name} violated by {violation}"
            if not sign_ok:
                return f"row {row.name} has dual {y} of the wrong sign"
            if abs(y) * max(slack, 0.0) > tol * max(1.0, abs(y)) * scale:
                return f"row {row.name} breaks complementary slackness"
            dual_objective += row.rhs * y
            for var, coef in row.coefficients:
                reduced[var] -= coef * y

        for j, (name, var) in enumerate(model.variables.items()):
            if var.upper is not None:
                dual_objective += var.upper * upper_marginals[j]
                reduced[name] -= upper_marginals[j]
            if reduced[name] < -tol * max(1.0, max_dual):
                return f"column {name} has reduced cost {reduced[name]}"

        gap = abs(solution.objective - dual_objective)
        if gap > self.gap_tol * max(1.0, abs(solution.objective)):
            return f"duality gap {gap} between {solution.objective} and {dual_objective}"
        return ""
