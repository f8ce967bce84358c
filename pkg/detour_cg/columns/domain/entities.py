from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Hashable, Optional, Tuple


class ColumnKind(str, Enum):
    ROUTE = "route"
    FACILITY_ASSIGNMENT = "facility_assignment"
    ARTIFICIAL = "artificial"


@dataclass(frozen=True)
class Column:
    """A route, a facility assignment, or a per-item artificial slack column"""
    kind: ColumnKind
    covers: FrozenSet[int]
    cost: float
    visit_order: Tuple[int, ...] = ()
    facility: Optional[int] = None
    open_cost: Optional[float] = None

    @property
    def key(self) -> Hashable:
        """Identity used for deduplication; routes match up to reversal"""
        if self.kind is ColumnKind.ROUTE:
            return (self.kind, min(self.visit_order, self.visit_order[::-1]))
        if self.kind is ColumnKind.FACILITY_ASSIGNMENT:
            return (self.kind, self.facility, tuple(sorted(self.covers)))
        return (self.kind, tuple(sorted(self.covers)))

    @property
    def is_artificial(self) -> bool:
        return self.kind is ColumnKind.ARTIFICIAL

    def describe(self) -> str:
        if self.kind is ColumnKind.ROUTE:
            return "route " + "-".join(map(str, self.visit_order))
        if self.kind is ColumnKind.FACILITY_ASSIGNMENT:
            return f"facility {self.facility} <- {sorted(self.covers)}"
        return f"artificial {sorted(self.covers)}"


@dataclass
class DualSolution:
    """Sign-normalized duals; every value is nonnegative up to tolerance.

    pi_ul and pi_dl are keyed by (item, column id) and (demand level, column id).
    """
    pi_u: Dict[int, float]
    pi_0: float = 0.0
    pi_ul: Dict[Tuple[int, int], float] = field(default_factory=dict)
    pi_dl: Dict[Tuple[int, int], float] = field(default_factory=dict)
    pi_f: Dict[int, float] = field(default_factory=dict)

    def values(self):
        yield from self.pi_u.values()
        yield self.pi_0
        yield from self.pi_ul.values()
        yield from self.pi_dl.values()
        yield from self.pi_f.values()

    def dual_objective(self, n_vehicles: int = 0) -> float:
        """sum(pi_u) - K pi_0 - sum(pi_f): the RMP objective at an optimum"""
        return sum(self.pi_u.values()) - n_vehicles * self.pi_0 - sum(self.pi_f.values())
