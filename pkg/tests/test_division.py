import math

import pytest
from hypothesis import given, settings, strategies as st

from rdivision.division import (
    ClampLog, Constants, Division, RefinementInfo, ScheduleConfig, ScheduleDomainError,
    ScheduleMode, WorkLog, boundary_stats, build_regions, compare_schedules, compute_division,
    gamma_eps_for, gamma_for, max_epsilon, p_for, refine_division, validate_division,
    weak_division,
)
from rdivision.graph import (
    generate_grid, generate_path, generate_random_connected, make_undirected, undirected_support,
)
from tests.oracles import region_memberships

TOL = 1e-12


def clause_names(report):
    return {f.split(":")[0] for f in report.failures}


# --- schedule -------------------------------------------------------------

def test_gamma_direct_evaluation():
    assert gamma_for(2**24, 4096, 64) == pytest.approx(0.25, abs=TOL)


def test_gamma_vanishes_at_two_thirds():
    r = 1000
    for N in (1001, 10**5, 10**9):
        assert gamma_for(N, r, p_for(r, 0.0)) == pytest.approx(0.0, abs=TOL)


def test_gamma_limit_at_region_size_r():
    for gt in (0.0, 0.25, 0.5):
        r = 2**40
        assert gamma_for(r + 1, r, p_for(r, gt)) == pytest.approx(gt, abs=1e-9)


def test_gamma_eps_examples():
    assert gamma_eps_for(2**24, 4096, 64, 0.0, 2**24) == gamma_for(2**24, 4096, 64)
    assert gamma_eps_for(2**24, 4096, 64, 1 / 24, 2**24) == pytest.approx(0.1875, abs=TOL)
    r = 2**40
    below = gamma_eps_for(r + 1, r, p_for(r, 0.5), 1 / 24, 2**41)
    assert below <= gamma_for(r + 1, r, p_for(r, 0.5))
    assert below == pytest.approx(0.5, abs=1e-9)


def test_gamma_satisfies_boundary_budget_identity():
    # p (N/r)^(2/3) = N^((2 - gamma)/3)
    r, gt = 512, 0.3
    p = p_for(r, gt)
    for N in (600, 5000, 10**6):
        g = gamma_for(N, r, p)
        lhs = math.log(p) + (2 / 3) * math.log(N / r)
        assert lhs == pytest.approx((2 - g) / 3 * math.log(N), abs=TOL * math.log(N))


@pytest.mark.parametrize("args", [
    (100, 100, 31.6),          # N = r
    (1000, 100, 5.0),          # p < sqrt(r)
    (1000, 100, 30.0),         # p > r^(2/3)
    (1000, 1, 1.0),            # r < 2
])
def test_gamma_domain_errors(args):
    with pytest.raises(ScheduleDomainError):
        gamma_for(*args)


@pytest.mark.parametrize("kwargs", [
    dict(N=5000, r=100, p=p_for(100, 0.5), epsilon=0.1, n=10**4),           # eps >= 1/12
    dict(N=5000, r=100, p=p_for(100, 0.0), epsilon=0.01, n=10**4),          # gamma_target = 0
    dict(N=5000, r=100, p=p_for(100, 0.5), epsilon=0.05, n=10**4, r_exponent=0.1),  # c too small
    dict(N=5000, r=100, p=p_for(100, 0.5), epsilon=0.01, n=1000),           # N > n
])
def test_gamma_eps_domain_errors(kwargs):
    with pytest.raises(ScheduleDomainError):
        gamma_eps_for(**kwargs)


def test_adaptive_eps_requires_polynomial_r():
    with pytest.raises(ScheduleDomainError):
        ScheduleConfig(ScheduleMode.ADAPTIVE_EPS, 0.5, 0.01)


@given(st.integers(2, 10**6), st.floats(0, 0.5), st.floats(1.0001, 100))
def test_gamma_range(r, gt, factor):
    N = max(r + 1, int(r * factor))
    log = ClampLog()
    g = gamma_for(N, r, p_for(r, gt), log)
    assert 0 <= g <= 0.5 and g <= gt + TOL
    assert log.count == 0


# --- weak division ----------------------------------------------------------

def test_small_graph_is_one_region():
    g = generate_path(5)
    d, stats, work = weak_division(g, 10)
    assert len(d.regions) == 1 and stats.B == 0 and work.separations == 0
    full = compute_division(g, 10)
    assert len(full.regions) == 1 and full.kind == "full"


def test_path8_brute():
    g = generate_path(8)
    d, stats, _ = weak_division(g, 4, sep="brute")
    assert len(d.regions) in (2, 3)
    assert all(len(reg.vertices) <= 4 for reg in d.regions)
    assert all(b <= 1 for b in stats.b.values())
    assert validate_division(g, d).passed


def test_grid_32_weak_and_full():
    g = generate_grid(32, 32)
    d, stats, work = weak_division(g, 64)
    rep = validate_division(g, d)
    assert rep.passed, rep.failures
    assert all(rec.gamma_prime <= 0.5 for rec in work.records)
    full = compute_division(g, 64)
    rep = validate_division(g, full)
    assert rep.passed, rep.failures
    assert full.kind == "full"


def test_full_division_deterministic():
    g = generate_grid(20, 20)
    a = compute_division(g, 40, ScheduleConfig(gamma_target=0.25))
    b = compute_division(g, 40, ScheduleConfig(gamma_target=0.25))
    assert a.to_json() == b.to_json()


def test_division_json_round_trip():
    g = generate_grid(12, 12)
    d = compute_division(g, 30)
    back = Division.from_json(d.to_json())
    assert back.to_json() == d.to_json()
    assert validate_division(g, back).passed


def test_r_one_with_edges_rejected():
    with pytest.raises(ValueError):
        weak_division(generate_path(3), 1)


@settings(max_examples=40)
@given(st.integers(2, 120), st.integers(0, 60), st.integers(0, 10**6), st.integers(2, 40),
       st.sampled_from(["fixed", "adaptive"]), st.sampled_from([0.0, 0.25, 0.5]))
def test_weak_division_invariants(n, extra, seed, r, mode, gt):
    g = generate_random_connected(n, min(extra, 2 * n), seed)
    d, stats, work = weak_division(g, r, ScheduleConfig(mode, gt))
    owners = sorted(e for reg in d.regions for e in reg.edge_ids)
    assert owners == list(range(g.m))
    assert all(len(reg.vertices) <= r for reg in d.regions)
    assert all(0 <= rec.gamma_prime <= gt + TOL for rec in work.records)
    assert work.clamps == 0
    assert math.isclose(work.total_cost, sum(rec.cost for rec in work.records))
    mem = region_memberships([reg.vertices for reg in d.regions])
    assert stats.B == sum(c - 1 for c in mem.values())
    assert sum(len(reg.vertices) for reg in d.regions) == g.n + stats.B


@settings(max_examples=25)
@given(st.integers(10, 120), st.integers(0, 40), st.integers(0, 10**6), st.integers(4, 30))
def test_refinement_preserves_partition(n, extra, seed, r):
    g = generate_random_connected(n, min(extra, n), seed)
    weak, _, _ = weak_division(g, r)
    full = refine_division(g, weak, c_bnd=2.0)
    assert sorted(e for reg in full.regions for e in reg.edge_ids) == list(range(g.m))
    assert max(len(reg.vertices) for reg in full.regions) <= max(len(reg.vertices) for reg in weak.regions)
    assert max(boundary_stats(full).per_region_boundary) <= 2.0 * weak.p


# --- boundary stats ---------------------------------------------------------

def test_boundary_stats_examples():
    g = generate_path(5)
    one = Division(build_regions(g, [[0, 1, 2, 3]]), 5, 2.0, 0.5)
    assert boundary_stats(one).B == 0
    two = Division(build_regions(g, [[0, 1], [2, 3]]), 3, 2.0, 0.5)
    st_ = boundary_stats(two)
    assert st_.B == 1 and st_.b == {2: 1}
    assert st_.total_region_size == g.n + st_.B


# --- refinement ---------------------------------------------------------------

def pendant_path9():
    # P9 on 0..8 plus pendant edge i -- 9+i, so every path vertex is shared
    pairs = [(i, i + 1) for i in range(8)] + [(i, 9 + i) for i in range(9)]
    g = make_undirected(18, pairs)
    idx = {(u, v): k for k, (u, v, _) in enumerate(g.edges)}
    path = [idx[(i, i + 1)] for i in range(8)]
    pend = [[idx[(i, 9 + i)]] for i in range(9)]
    return g, Division(build_regions(g, [path] + pend), 9, 1.0, 0.5)


def test_refine_p9_all_boundary():
    g, weak = pendant_path9()
    assert len(weak.regions[0].boundary) == 9
    full = refine_division(g, weak, c_bnd=4.0, sep="brute")
    assert max(len(reg.boundary) for reg in full.regions) <= 4
    bad = clause_names(validate_division(g, full))
    assert not bad & {"partition", "size", "vertices", "boundary", "full-boundary"}


def test_refine_noop_when_bound_holds():
    g = generate_grid(16, 16)
    weak, _, _ = weak_division(g, 32)
    full = refine_division(g, weak, c_bnd=100.0)
    assert [reg.edge_ids for reg in full.regions] == [reg.edge_ids for reg in weak.regions]
    assert full.kind == "full"


@pytest.mark.parametrize("n,r", [(1024, 32), (4096, 64), (4096, 256)])
def test_refinement_new_boundary_is_linear(n, r):
    side = int(math.isqrt(n))
    g = generate_grid(side, side)
    info = RefinementInfo([], 0)
    full = compute_division(g, r, c_bnd=2.0, info=info)
    assert validate_division(g, full, constants=Constants(c_bnd=2.0)).passed
    p = full.p
    assert info.new_boundary <= Constants().c_B * p * n / r
    for initial, splits in info.splits:
        assert splits <= 1 + 4 * initial / (2.0 * p)


# --- validator ---------------------------------------------------------------

def test_validate_examples():
    g = generate_path(5)
    ok = Division(build_regions(g, [[0, 1], [2, 3]]), 3, 2.0, 0.5)
    assert validate_division(g, ok).passed
    dup = Division(build_regions(g, [[0, 1, 2], [2, 3]]), 4, 2.0, 0.5)
    assert "partition" in clause_names(validate_division(g, dup))
    big = Division(build_regions(g, [[0, 1, 2, 3]]), 4, 2.0, 0.5)
    assert "size" in clause_names(validate_division(g, big))


# --- schedule comparison -----------------------------------------------------

def test_compare_small_graph_zero_work():
    rep = compare_schedules(generate_path(10), 20, 0.5)
    assert all(row["work"]["cost"] == 0 for row in rep["schedules"].values())


def test_compare_grid_4096():
    g = generate_grid(64, 64)
    rep = compare_schedules(g, 256, 0.5, r_polynomial=True)
    rows = rep["schedules"]
    assert set(rows) == {"fixed", "adaptive", "adaptive_eps"}
    assert rows["adaptive"]["work"]["cost"] <= rows["fixed"]["work"]["cost"]
    assert rows["adaptive_eps"]["work"]["cost"] <= rows["adaptive"]["work"]["cost"]
    for row in rows.values():
        assert row["valid"]
        assert all(rec["gamma_prime"] <= 0.5 for rec in row["records"])


def test_worklog_merge_is_order_independent():
    g = generate_grid(16, 16)
    _, _, a = weak_division(g, 20)
    _, _, b = weak_division(g, 50)
    assert a.merge(b).totals() == pytest.approx(b.merge(a).totals())
    assert WorkLog.from_json(a.to_json()).totals() == a.totals()
