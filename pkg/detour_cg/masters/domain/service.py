import logging
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

import numpy as np

from detour_cg.columns.domain import (
    Column,
    ColumnKind,
    ColumnPool,
    DualSolution,
    demand_profile,
    smooth_rho,
    smooth_swap_set,
)
from detour_cg.instances.domain import CvrpInstance, Instance, SscflpInstance
from detour_cg.lp.domain import LpModel, LpSolution, Sense

from .entities import MasterModel, Stabilization
from .exceptions import (
    MissingSmoothingCostError,
    MixedPoolError,
    NonOptimalSolutionError,
    UncoveredItemError,
)

logger = logging.getLogger(__name__)


class MasterBuilder:
    """Builds LP masters over a column pool.

    Per-column detour costs and demand profiles are cached by column key, so
    one builder should live as long as the pool it serves.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self._detours: Dict[object, np.ndarray] = {}
        self._profiles: Dict[object, Dict[int, int]] = {}
        self._swaps: Dict[float, Tuple] = {}

    # cached per-column quantities

    def detour_costs(self, column: Column) -> np.ndarray:
        """c_ul for every item u, as a vector"""
        cached = self._detours.get(column.key)
        if cached is None:
            if column.kind is ColumnKind.FACILITY_ASSIGNMENT:
                cached = self.instance.cost_matrix[column.facility].copy()
            else:
                matrix = self.instance.distance_matrix
                n = self.instance.n_items
                anchors = [n] + sorted(column.covers)
                cached = 2 * matrix[:n, anchors].min(axis=1)
            self._detours[column.key] = cached
        return cached

    def profile(self, column: Column) -> Dict[int, int]:
        cached = self._profiles.get(column.key)
        if cached is None:
            cached = demand_profile(self.instance, column)
            self._profiles[column.key] = cached
        return cached

    def swaps(self, epsilon: float) -> Tuple[Set[Tuple[int, int]], Dict[Tuple[int, int], float]]:
        """Swap set S and rho_uv; computed once per epsilon"""
        cached = self._swaps.get(epsilon)
        if cached is None:
            swaps = smooth_swap_set(self.instance)
            cached = (swaps, {(u, v): smooth_rho(self.instance, u, v, epsilon) for u, v in swaps})
            self._swaps[epsilon] = cached
        return cached

    # formulations

    def build(
        self,
        pool: ColumnPool,
        stabilization: Stabilization,
        n_vehicles: int = 0,
        epsilon: float = 1e-4,
    ) -> MasterModel:
        if isinstance(self.instance, SscflpInstance):
            if stabilization is Stabilization.NONE:
                return self.build_sscflp_unstab(pool)
            if stabilization is Stabilization.SDOI:
                swaps, rho = self.swaps(epsilon)
                return self.build_sscflp_sdoi(pool, swaps, rho)
            return self.build_sscflp_dtdoi(pool, reduced=stabilization is Stabilization.DTDOI_REDUCED)
        if stabilization is Stabilization.NONE:
            return self.build_unstabilized(pool, n_vehicles)
        if stabilization is Stabilization.SDOI:
            swaps, rho = self.swaps(epsilon)
            return self.build_sdoi(pool, n_vehicles, swaps, rho)
        if stabilization is Stabilization.DTDOI_FULL:
            return self.build_dtdoi_full(pool, n_vehicles)
        return self.build_dtdoi_reduced(pool, n_vehicles)

    def build_unstabilized(self, pool: ColumnPool, n_vehicles: int) -> MasterModel:
        """Set-cover master: cover rows >= 1 and one fleet row <= K"""
        self._require_kind(pool, ColumnKind.ROUTE)
        master = MasterModel(Stabilization.NONE, LpModel("unstabilized"), n_vehicles)
        cover = self._theta_block(pool, master)
        self._finish_cover(master, cover)
        self._fleet_row(master, [master.theta[l] for l, _ in pool.real_items()])
        return master

    def build_sdoi(
        self,
        pool: ColumnPool,
        n_vehicles: int,
        swaps: Iterable[Tuple[int, int]],
        rho: Mapping[Tuple[int, int], float],
    ) -> MasterModel:
        """Set-cover master with swap variables omega_uv priced at rho_uv"""
        self._require_kind(pool, ColumnKind.ROUTE)
        master = MasterModel(Stabilization.SDOI, LpModel("sdoi"), n_vehicles)
        cover = self._theta_block(pool, master)
        self._omega_block(master, cover, swaps, rho)
        self._finish_cover(master, cover)
        self._fleet_row(master, [master.theta[l] for l, _ in pool.real_items()])
        return master

    def build_dtdoi_full(self, pool: ColumnPool, n_vehicles: int) -> MasterModel:
        """Detour master with theta, psi and y variables"""
        self._require_kind(pool, ColumnKind.ROUTE)
        master = MasterModel(Stabilization.DTDOI_FULL, LpModel("dtdoi_full"), n_vehicles)
        cover = self._theta_block(pool, master)
        self._detour_block(pool, master, cover, psi_cost=lambda col: col.cost)
        self._finish_cover(master, cover)
        fleet = [master.theta[l] for l, _ in pool.real_items()] + list(master.psi.values())
        self._fleet_row(master, fleet)
        return master

    def build_dtdoi_reduced(self, pool: ColumnPool, n_vehicles: int) -> MasterModel:
        """Detour master without theta; artificial columns become BIG_M slacks"""
        self._require_kind(pool, ColumnKind.ROUTE)
        master = MasterModel(Stabilization.DTDOI_REDUCED, LpModel("dtdoi_reduced"), n_vehicles)
        cover = self._slack_block(pool, master)
        self._detour_block(pool, master, cover, psi_cost=lambda col: col.cost)
        self._finish_cover(master, cover)
        self._fleet_row(master, list(master.psi.values()))
        return master

    def build_sscflp_unstab(self, pool: ColumnPool) -> MasterModel:
        """Assignment master: cover rows >= 1, each facility used at most once"""
        self._require_kind(pool, ColumnKind.FACILITY_ASSIGNMENT)
        master = MasterModel(Stabilization.NONE, LpModel("sscflp_unstabilized"))
        cover = self._theta_block(pool, master)
        self._finish_cover(master, cover)
        per_facility = self._per_facility(pool, master, with_psi=False)
        self._facility_rows(master, per_facility)
        return master

    def build_sscflp_sdoi(
        self,
        pool: ColumnPool,
        swaps: Iterable[Tuple[int, int]],
        rho: Mapping[Tuple[int, int], float],
    ) -> MasterModel:
        """Assignment master with customer swap variables omega_uv"""
        self._require_kind(pool, ColumnKind.FACILITY_ASSIGNMENT)
        master = MasterModel(Stabilization.SDOI, LpModel("sscflp_sdoi"))
        cover = self._theta_block(pool, master)
        self._omega_block(master, cover, swaps, rho)
        self._finish_cover(master, cover)
        self._facility_rows(master, self._per_facility(pool, master, with_psi=False))
        return master

    def build_sscflp_dtdoi(self, pool: ColumnPool, reduced: bool = False) -> MasterModel:
        """Detour master for SSCFLP: psi costs only the opening cost, y costs c_fu"""
        self._require_kind(pool, ColumnKind.FACILITY_ASSIGNMENT)
        stabilization = Stabilization.DTDOI_REDUCED if reduced else Stabilization.DTDOI_FULL
        master = MasterModel(stabilization, LpModel(f"sscflp_{stabilization.value}"))
        cover = self._slack_block(pool, master) if reduced else self._theta_block(pool, master)
        self._detour_block(pool, master, cover, psi_cost=lambda col: col.open_cost)
        self._finish_cover(master, cover)
        per_facility = self._per_facility(pool, master, with_psi=True)
        self._facility_rows(master, per_facility)
        return master

    # building blocks

    def _require_kind(self, pool: ColumnPool, kind: ColumnKind) -> None:
        expected = CvrpInstance if kind is ColumnKind.ROUTE else SscflpInstance
        if not isinstance(self.instance, expected):
            raise MixedPoolError(f"{kind.value} masters need a {expected.__name__}")
        for _, column in pool.real_items():
            if column.kind is not kind:
                raise MixedPoolError(f"pool mixes {column.kind.value} into a {kind.value} master")

    def _theta_block(self, pool: ColumnPool, master: MasterModel) -> Dict[int, List]:
        cover: Dict[int, List] = {u: [] for u in range(self.instance.n_items)}
        for l, column in pool.items():
            if column.is_artificial:
                (u,) = column.covers
                name = master.lp.add_variable(f"art_{u}", column.cost)
                master.artificial[u] = name
            else:
                name = master.lp.add_variable(f"theta_{l}", column.cost)
            master.theta[l] = name
            for u in sorted(column.covers):
                cover[u].append((name, 1.0))
        return cover

    def _slack_block(self, pool: ColumnPool, master: MasterModel) -> Dict[int, List]:
        cover: Dict[int, List] = {u: [] for u in range(self.instance.n_items)}
        for _, column in pool.artificial_items():
            (u,) = column.covers
            name = master.lp.add_variable(f"art_{u}", column.cost)
            master.artificial[u] = name
            cover[u].append((name, 1.0))
        return cover

    def _omega_block(self, master: MasterModel, cover, swaps, rho) -> None:
        for u, v in sorted(swaps):
            if (u, v) not in rho:
                raise MissingSmoothingCostError(f"no rho for swap pair ({u}, {v})")
            name = master.lp.add_variable(f"omega_{u}_{v}", rho[(u, v)])
            master.omega[(u, v)] = name
            cover[u].append((name, -1.0))
            cover[v].append((name, 1.0))

    def _detour_block(self, pool: ColumnPool, master: MasterModel, cover, psi_cost) -> None:
        n = self.instance.n_items
        demands = self.instance.demands
        lp = master.lp
        for l, column in pool.real_items():
            psi = lp.add_variable(f"psi_{l}", psi_cost(column))
            master.psi[l] = psi
            detours = self.detour_costs(column)
            for u in range(n):
                y = lp.add_variable(f"y_{u}_{l}", float(detours[u]))
                master.y[(u, l)] = y
                cover[u].append((y, 1.0))
                master.link_rows[(u, l)] = lp.add_row(
                    f"link_{u}_{l}", [(y, 1.0), (psi, -1.0)], Sense.LE, 0.0
                )
            for d, count in self.profile(column).items():
                terms = [(master.y[(u, l)], 1.0) for u in range(n) if demands[u] >= d]
                terms.append((psi, -float(count)))
                master.demand_rows[(d, l)] = lp.add_row(f"demand_{d}_{l}", terms, Sense.LE, 0.0)

    def _finish_cover(self, master: MasterModel, cover: Dict[int, List]) -> None:
        for u, terms in cover.items():
            if not terms:
                raise UncoveredItemError(f"item {u} is covered by no column")
            master.cover_rows[u] = master.lp.add_row(f"cover_{u}", terms, Sense.GE, 1.0)

    def _fleet_row(self, master: MasterModel, names: List[str]) -> None:
        master.fleet_row = master.lp.add_row(
            "fleet", [(name, 1.0) for name in names], Sense.LE, float(master.n_vehicles)
        )

    def _per_facility(self, pool: ColumnPool, master: MasterModel, with_psi: bool) -> Dict[int, List[str]]:
        groups: Dict[int, List[str]] = {f: [] for f in range(self.instance.n_facilities)}
        for l, column in pool.real_items():
            if l in master.theta:
                groups[column.facility].append(master.theta[l])
            if with_psi:
                groups[column.facility].append(master.psi[l])
        return groups

    def _facility_rows(self, master: MasterModel, groups: Dict[int, List[str]]) -> None:
        for f, names in groups.items():
            master.facility_rows[f] = master.lp.add_row(
                f"facility_{f}", [(name, 1.0) for name in names], Sense.LE, 1.0
            )


def build_unstabilized(pool: ColumnPool, n_vehicles: int) -> MasterModel:
    return MasterBuilder(pool.instance).build_unstabilized(pool, n_vehicles)


def build_sdoi(
    pool: ColumnPool,
    n_vehicles: int,
    swaps: Optional[Set[Tuple[int, int]]] = None,
    rho: Optional[Mapping[Tuple[int, int], float]] = None,
    epsilon: float = 1e-4,
) -> MasterModel:
    instance = pool.instance
    if swaps is None:
        swaps = smooth_swap_set(instance)
    if rho is None:
        rho = {(u, v): smooth_rho(instance, u, v, epsilon) for u, v in swaps}
    return MasterBuilder(instance).build_sdoi(pool, n_vehicles, swaps, rho)


def build_dtdoi_full(pool: ColumnPool, n_vehicles: int) -> MasterModel:
    return MasterBuilder(pool.instance).build_dtdoi_full(pool, n_vehicles)


def build_dtdoi_reduced(pool: ColumnPool, n_vehicles: int) -> MasterModel:
    return MasterBuilder(pool.instance).build_dtdoi_reduced(pool, n_vehicles)


def build_sscflp_unstab(pool: ColumnPool) -> MasterModel:
    return MasterBuilder(pool.instance).build_sscflp_unstab(pool)


def build_sscflp_sdoi(
    pool: ColumnPool,
    swaps: Optional[Set[Tuple[int, int]]] = None,
    rho: Optional[Mapping[Tuple[int, int], float]] = None,
    epsilon: float = 1e-4,
) -> MasterModel:
    instance = pool.instance
    if swaps is None:
        swaps = smooth_swap_set(instance)
    if rho is None:
        rho = {(u, v): smooth_rho(instance, u, v, epsilon) for u, v in swaps}
    return MasterBuilder(instance).build_sscflp_sdoi(pool, swaps, rho)


def build_sscflp_dtdoi(pool: ColumnPool, reduced: bool = False) -> MasterModel:
    return MasterBuilder(pool.instance).build_sscflp_dtdoi(pool, reduced)


def extract_duals(solution: LpSolution, master: MasterModel) -> DualSolution:
    """Read row duals into the nonnegative convention of the dual masters"""
    if not solution.is_optimal:
        raise NonOptimalSolutionError(f"cannot read duals from a {solution.status.value} solve")
    duals = solution.duals
    return DualSolution(
        pi_u={u: duals[row] for u, row in master.cover_rows.items()},
        pi_0=-duals[master.fleet_row] if master.fleet_row else 0.0,
        pi_ul={key: -duals[row] for key, row in master.link_rows.items()},
        pi_dl={key: -duals[row] for key, row in master.demand_rows.items()},
        pi_f={f: -duals[row] for f, row in master.facility_rows.items()},
    )
