import numpy as np
import pytest

from detour_cg.column_generation.domain import artificial_columns
from detour_cg.columns.domain import ColumnPool, big_m, demand_profile, make_assignment, make_route
from detour_cg.instances.domain import (
    Customer,
    CvrpInstance,
    DemandRule,
    Facility,
    Item,
    SscflpInstance,
    generate_cvrp,
    generate_sscflp,
)
from detour_cg.lp.domain import LpSolution, LpStatus, Sense
from detour_cg.masters.domain import (
    MasterBuilder,
    MissingSmoothingCostError,
    MixedPoolError,
    NonOptimalSolutionError,
    Stabilization,
    UncoveredItemError,
    build_dtdoi_full,
    build_dtdoi_reduced,
    build_sdoi,
    build_sscflp_dtdoi,
    build_sscflp_sdoi,
    build_sscflp_unstab,
    build_unstabilized,
    extract_duals,
)
from detour_cg.pricing.domain import reduced_cost


@pytest.fixture
def triangle():
    return CvrpInstance(
        items=(Item(0, 5, 1), Item(5, 5, 1), Item(5, 0, 1)),
        depot=(0, 0),
        capacity=3,
        n_vehicles=1,
    )


@pytest.fixture
def pair():
    """Two unit items one apart, far from the depot"""
    return CvrpInstance(items=(Item(10, 0, 1), Item(11, 0, 1)), depot=(0, 0), capacity=2, n_vehicles=2)


@pytest.fixture
def one_facility():
    return SscflpInstance(
        customers=(Customer(3, 4, 1), Customer(6, 8, 1)),
        facilities=(Facility(0, 0, 5, 7),),
    )


def seeded_pool(instance, n_routes=12, seed=0):
    """Artificial columns plus random capacity-feasible routes"""
    rng = np.random.default_rng(seed)
    pool = ColumnPool(instance, artificial_columns(instance))
    while len(pool) < instance.n_items + n_routes:
        size = int(rng.integers(1, instance.capacity + 1))
        order = rng.permutation(instance.n_items)[:size]
        if sum(instance.demands[u] for u in order) <= instance.capacity:
            pool.add(make_route(instance, order))
    return pool


def test_artificial_only_pool(triangle, lp_service):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    master = build_unstabilized(pool, triangle.n_vehicles)
    solution = lp_service.solve_optimal(master.lp)
    assert solution.objective == pytest.approx(3 * big_m(triangle))
    assert all(solution.primal[name] == pytest.approx(1.0) for name in master.artificial.values())
    duals = extract_duals(solution, master)
    assert all(value == pytest.approx(big_m(triangle)) for value in duals.pi_u.values())
    assert duals.pi_0 == pytest.approx(0.0)


def test_artificial_columns_use_no_vehicle(triangle):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    master = build_unstabilized(pool, 1)
    fleet = master.lp.rows[master.fleet_row]
    assert fleet.coefficients == ()


def test_full_route_dominates_artificials(triangle, lp_service):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    route = pool.add(make_route(triangle, (0, 1, 2)))
    master = build_unstabilized(pool, 1)
    solution = lp_service.solve_optimal(master.lp)
    assert solution.objective == pytest.approx(20.0)
    assert solution.primal[master.theta[route]] == pytest.approx(1.0)


def test_empty_fleet_is_infeasible(triangle, lp_service):
    pool = ColumnPool(triangle, [make_route(triangle, (0, 1, 2))])
    master = build_unstabilized(pool, 0)
    assert lp_service.solve(master.lp).status is LpStatus.INFEASIBLE


def test_uncovered_item(triangle):
    pool = ColumnPool(triangle, [make_route(triangle, (0, 1))])
    with pytest.raises(UncoveredItemError):
        build_unstabilized(pool, 1)


def test_swap_covers_neighbour(pair, lp_service):
    pool = ColumnPool(pair, artificial_columns(pair))
    pool.add(make_route(pair, (0,)))
    master = build_sdoi(pool, 2)
    solution = lp_service.solve_optimal(master.lp)
    assert solution.objective == pytest.approx(2 * 20 + 2.0001)
    assert solution.primal[master.omega[(0, 1)]] == pytest.approx(1.0)
    assert all(solution.primal[name] == pytest.approx(0.0) for name in master.artificial.values())


def test_empty_swap_set_matches_unstabilized(triangle):
    pool = seeded_pool(triangle, n_routes=4)
    smooth = build_sdoi(pool, 1, swaps=set(), rho={})
    plain = build_unstabilized(pool, 1)
    assert smooth.lp.variables == plain.lp.variables
    assert smooth.lp.rows == plain.lp.rows


def test_missing_rho(triangle):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    with pytest.raises(MissingSmoothingCostError):
        build_sdoi(pool, 1, swaps={(0, 1)}, rho={})


def test_swaps_idle_when_exact_cover_exists(triangle, lp_service):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    pool.add(make_route(triangle, (0, 1, 2)))
    master = build_sdoi(pool, 1)
    solution = lp_service.solve_optimal(master.lp)
    assert solution.objective == pytest.approx(20.0)
    assert all(solution.primal[name] == pytest.approx(0.0, abs=1e-9) for name in master.omega.values())


def test_dtdoi_full_model_size():
    rule = DemandRule.parse("uniform:1:2")
    instance = generate_cvrp(5, 8, grid_size=40, capacity=4, n_vehicles=3, demand_rule=rule)
    pool = seeded_pool(instance, n_routes=6)
    master = build_dtdoi_full(pool, instance.n_vehicles)
    n, routes, levels = instance.n_items, len(pool.real_items()), len(instance.demand_set)
    assert len(master.theta) == len(pool)
    assert len(master.psi) == routes
    assert len(master.y) == n * routes
    assert master.lp.n_variables == len(pool) + routes + n * routes
    assert master.lp.n_rows == n + n * routes + levels * routes + 1


def test_dtdoi_full_reproduces_theta_solution(triangle, lp_service):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    route = pool.add(make_route(triangle, (0, 1, 2)))
    plain = lp_service.solve_optimal(build_unstabilized(pool, 1).lp).objective
    master = build_dtdoi_full(pool, 1)
    master.lp.add_row("fix_theta", [(master.theta[route], 1.0)], Sense.LE, 0.0)
    detour = lp_service.solve_optimal(master.lp)
    assert detour.objective == pytest.approx(plain)
    assert detour.primal[master.psi[route]] == pytest.approx(1.0)


def test_detour_needs_its_route(triangle, lp_service):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    route = pool.add(make_route(triangle, (0, 1)))
    master = build_dtdoi_full(pool, 1)
    master.lp.add_row("force_y", [(master.y[(2, route)], 1.0)], Sense.GE, 1.0)
    master.lp.add_row("no_psi", [(master.psi[route], 1.0)], Sense.LE, 0.0)
    assert lp_service.solve(master.lp).status is LpStatus.INFEASIBLE


def test_dtdoi_reduced_artificial_only(triangle, lp_service):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    master = build_dtdoi_reduced(pool, 1)
    assert master.theta == {}
    assert lp_service.solve_optimal(master.lp).objective == pytest.approx(3 * big_m(triangle))


def test_dtdoi_reduced_maps_selected_route(triangle, lp_service):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    route = pool.add(make_route(triangle, (0, 1, 2)))
    master = build_dtdoi_reduced(pool, 1)
    solution = lp_service.solve_optimal(master.lp)
    assert solution.objective == pytest.approx(20.0)
    assert solution.primal[master.psi[route]] == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(5))
def test_master_objectives_are_nested(seed, lp_service):
    instance = generate_cvrp(seed, 9, grid_size=40, capacity=4, n_vehicles=3)
    pool = seeded_pool(instance, n_routes=10, seed=seed)
    plain = lp_service.solve_optimal(build_unstabilized(pool, 3).lp).objective
    full = lp_service.solve_optimal(build_dtdoi_full(pool, 3).lp).objective
    reduced = lp_service.solve_optimal(build_dtdoi_reduced(pool, 3).lp).objective
    smooth = lp_service.solve_optimal(build_sdoi(pool, 3).lp).objective
    assert full <= plain + 1e-6
    assert reduced <= full + 1e-6
    assert smooth <= plain + 1e-6


@pytest.mark.parametrize("stabilization", [Stabilization.DTDOI_FULL, Stabilization.DTDOI_REDUCED])
def test_detour_duals_satisfy_psi_and_y_constraints(stabilization, lp_service):
    rule = DemandRule.parse("uniform:1:3")
    instance = generate_cvrp(6, 8, grid_size=40, capacity=5, n_vehicles=3, demand_rule=rule)
    pool = seeded_pool(instance, n_routes=8, seed=6)
    builder = MasterBuilder(instance)
    master = builder.build(pool, stabilization, instance.n_vehicles)
    duals = extract_duals(lp_service.solve_optimal(master.lp), master)
    demands = instance.demands
    for l, column in pool.real_items():
        profile = demand_profile(instance, column)
        # psi_l: c_l + pi_0 >= sum_u pi_ul + sum_d D_dl pi_dl
        psi_price = sum(duals.pi_ul[(u, l)] for u in range(instance.n_items))
        psi_price += sum(count * duals.pi_dl[(d, l)] for d, count in profile.items())
        assert column.cost + duals.pi_0 - psi_price >= -1e-5
        # y_ul: c_ul + pi_ul + sum_{d <= d_u} pi_dl >= pi_u
        detours = builder.detour_costs(column)
        for u in range(instance.n_items):
            relief = duals.pi_ul[(u, l)] + sum(duals.pi_dl[(d, l)] for d in profile if d <= demands[u])
            assert detours[u] + relief - duals.pi_u[u] >= -1e-5


@pytest.mark.parametrize("stabilization", list(Stabilization))
def test_duals_are_sign_normalized(stabilization, lp_service):
    instance = generate_cvrp(3, 8, grid_size=40, capacity=3, n_vehicles=3)
    pool = seeded_pool(instance, n_routes=8, seed=3)
    master = MasterBuilder(instance).build(pool, stabilization, instance.n_vehicles)
    duals = extract_duals(lp_service.solve_optimal(master.lp), master)
    assert all(value >= -1e-7 for value in duals.values())


@pytest.mark.parametrize("stabilization", list(Stabilization))
def test_pooled_columns_price_out(stabilization, lp_service):
    instance = generate_cvrp(4, 8, grid_size=40, capacity=3, n_vehicles=3)
    pool = seeded_pool(instance, n_routes=8, seed=4)
    master = MasterBuilder(instance).build(pool, stabilization, instance.n_vehicles)
    duals = extract_duals(lp_service.solve_optimal(master.lp), master)
    for _, column in pool.real_items():
        assert reduced_cost(column, duals) >= -1e-6


def test_fleet_slack_gives_zero_pi_0(triangle, lp_service):
    roomy = CvrpInstance(items=triangle.items, depot=triangle.depot, capacity=3, n_vehicles=3)
    pool = ColumnPool(roomy, artificial_columns(roomy))
    pool.add(make_route(roomy, (0, 1, 2)))
    master = build_unstabilized(pool, 3)
    duals = extract_duals(lp_service.solve_optimal(master.lp), master)
    assert duals.pi_0 == pytest.approx(0.0)
    assert duals.dual_objective(3) == pytest.approx(20.0)


def test_extract_duals_needs_optimum(triangle):
    pool = ColumnPool(triangle, artificial_columns(triangle))
    master = build_unstabilized(pool, 1)
    with pytest.raises(NonOptimalSolutionError):
        extract_duals(LpSolution(LpStatus.INFEASIBLE), master)


def test_sscflp_single_assignment(one_facility, lp_service):
    pool = ColumnPool(one_facility, artificial_columns(one_facility))
    column = make_assignment(one_facility, 0, [0, 1])
    l = pool.add(column)
    assert column.cost == 22
    plain = build_sscflp_unstab(pool)
    solution = lp_service.solve_optimal(plain.lp)
    assert solution.objective == pytest.approx(22.0)
    assert solution.primal[plain.theta[l]] == pytest.approx(1.0)
    for reduced in (False, True):
        detour = build_sscflp_dtdoi(pool, reduced=reduced)
        assert lp_service.solve_optimal(detour.lp).objective == pytest.approx(22.0)
        assert detour.lp.variables[detour.psi[l]].objective == 7.0


def test_sscflp_facility_used_once(one_facility, lp_service):
    pool = ColumnPool(one_facility, artificial_columns(one_facility))
    first = pool.add(make_assignment(one_facility, 0, [0]))
    second = pool.add(make_assignment(one_facility, 0, [1]))
    master = build_sscflp_unstab(pool)
    master.lp.add_row("use_first", [(master.theta[first], 1.0)], Sense.GE, 1.0)
    master.lp.add_row("use_second", [(master.theta[second], 1.0)], Sense.GE, 1.0)
    assert lp_service.solve(master.lp).status is LpStatus.INFEASIBLE


def test_sscflp_rejects_route_masters(one_facility, triangle):
    pool = ColumnPool(one_facility, artificial_columns(one_facility))
    with pytest.raises(MixedPoolError):
        MasterBuilder(one_facility).build_unstabilized(pool, 1)
    with pytest.raises(MixedPoolError):
        MasterBuilder(triangle).build_sscflp_unstab(ColumnPool(triangle, artificial_columns(triangle)))
    with pytest.raises(MixedPoolError):
        MasterBuilder(triangle).build_sscflp_sdoi(
            ColumnPool(triangle, artificial_columns(triangle)), set(), {}
        )


def test_sscflp_swaps_priced_by_service_cost_gap(one_facility, lp_service):
    pool = ColumnPool(one_facility, artificial_columns(one_facility))
    pool.add(make_assignment(one_facility, 0, [0, 1]))
    master = build_sscflp_sdoi(pool)
    assert master.stabilization is Stabilization.SDOI
    # service costs are 5 and 10
    assert master.lp.variables[master.omega[(0, 1)]].objective == pytest.approx(5.0001)
    assert master.lp.variables[master.omega[(1, 0)]].objective == pytest.approx(1e-4)
    solution = lp_service.solve_optimal(master.lp)
    assert solution.objective == pytest.approx(22.0)
    assert all(solution.primal[name] == pytest.approx(0.0, abs=1e-9) for name in master.omega.values())


@pytest.mark.parametrize("seed", range(3))
def test_sscflp_smoothing_never_exceeds_unstabilized(seed, lp_service):
    instance = generate_sscflp(seed, 8, 3, grid_size=30, capacity_range=(6, 12), demand_range=(1, 3))
    rng = np.random.default_rng(seed)
    pool = ColumnPool(instance, artificial_columns(instance))
    for _ in range(6):
        f = int(rng.integers(instance.n_facilities))
        customers, load = [], 0
        for u in rng.permutation(instance.n_items):
            if load + instance.demands[u] <= instance.facilities[f].capacity:
                customers.append(int(u))
                load += instance.demands[u]
        pool.add(make_assignment(instance, f, customers[: int(rng.integers(1, len(customers) + 1))]))
    plain = lp_service.solve_optimal(build_sscflp_unstab(pool).lp).objective
    master = MasterBuilder(instance).build(pool, Stabilization.SDOI)
    assert master.lp.name == "sscflp_sdoi"
    assert lp_service.solve_optimal(master.lp).objective <= plain + 1e-6
