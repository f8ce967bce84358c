from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from .exceptions import LpModelError


class Sense(str, Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    FAILED = "failed"


@dataclass(frozen=True)
class LpVariable:
    """A nonnegative column with an optional upper bound"""
    name: str
    objective: float
    upper: Optional[float] = None


@dataclass(frozen=True)
class LpRow:
    """A sparse row: sum(coef * var) <sense> rhs"""
    name: str
    coefficients: Tuple[Tuple[str, float], ...]
    sense: Sense
    rhs: float


@dataclass
class LpModel:
    """Minimization LP with named columns and rows"""
    name: str = "model"
    variables: Dict[str, LpVariable] = field(default_factory=dict)
    rows: Dict[str, LpRow] = field(default_factory=dict)

    def add_variable(self, name: str, objective: float, upper: Optional[float] = None) -> str:
        if name in self.variables:
            raise LpModelError(f"duplicate column name '{name}'")
        self.variables[name] = LpVariable(name, float(objective), upper)
        return name

    def add_row(
        self,
        name: str,
        coefficients: Iterable[Tuple[str, float]],
        sense: Sense,
        rhs: float,
    ) -> str:
        if name in self.rows:
            raise LpModelError(f"duplicate row name '{name}'")
        coefficients = tuple((var, float(coef)) for var, coef in coefficients)
        for var, _ in coefficients:
            if var not in self.variables:
                raise LpModelError(f"row '{name}' references unknown column '{var}'")
        self.rows[name] = LpRow(name, coefficients, Sense(sense), float(rhs))
        return name

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def variable_names(self) -> List[str]:
        return list(self.variables)


@dataclass
class LpSolution:
    """Primal values per column and duals (d objective / d rhs) per row.

    With a minimization objective, >= rows carry nonnegative duals and <= rows
    nonpositive ones.
    """
    status: LpStatus
    objective: Optional[float] = None
    primal: Dict[str, float] = field(default_factory=dict)
    duals: Dict[str, float] = field(default_factory=dict)
    message: str = ""

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL
