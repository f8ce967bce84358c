from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from detour_cg.lp.domain import LpModel


class Stabilization(str, Enum):
    NONE = "none"
    SDOI = "sdoi"
    DTDOI_FULL = "dtdoi_full"
    DTDOI_REDUCED = "dtdoi_reduced"

    @property
    def is_detour(self) -> bool:
        return self in (Stabilization.DTDOI_FULL, Stabilization.DTDOI_REDUCED)


@dataclass
class MasterModel:
    """An LP master plus the index mapping rows/variables back to the pool.

    Keys: cover_rows and artificial by item; theta and psi by column id;
    link_rows and y by (item, column id); demand_rows by (demand, column id);
    omega by swap pair; facility_rows by facility.
    """
    stabilization: Stabilization
    lp: LpModel
    n_vehicles: int = 0
    cover_rows: Dict[int, str] = field(default_factory=dict)
    fleet_row: Optional[str] = None
    facility_rows: Dict[int, str] = field(default_factory=dict)
    link_rows: Dict[Tuple[int, int], str] = field(default_factory=dict)
    demand_rows: Dict[Tuple[int, int], str] = field(default_factory=dict)
    theta: Dict[int, str] = field(default_factory=dict)
    psi: Dict[int, str] = field(default_factory=dict)
    y: Dict[Tuple[int, int], str] = field(default_factory=dict)
    omega: Dict[Tuple[int, int], str] = field(default_factory=dict)
    artificial: Dict[int, str] = field(default_factory=dict)
