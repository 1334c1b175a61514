from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from buffershop.extend import build_extension
from buffershop.johnson import johnson
from buffershop.model import AuxId, Instance, buffer_profile, makespan, validate_schedule
from buffershop.solver import (
    ConditionNotMet,
    classify,
    condition5_holds,
    condition5_rhs,
    corollary_holds,
    extract_real,
    r_bound,
    run_aggregated,
    run_reference,
    solve,
    solve_detailed,
)

from conftest import cond5_instance, pairs_strategy

FIXTURE = [(1, 2), (2, 2), (2, 1), (1, 1)]


def runs(pairs, omega=None):
    inst = cond5_instance(pairs) if omega is None else Instance.from_pairs(pairs, omega)
    ext = build_extension(inst)
    part = classify(ext)
    return inst, ext, part, run_reference(ext, part), run_aggregated(ext, part)


# worked fixture


def test_fixture_trace():
    inst, ext, part, ref, agg = runs(FIXTURE, 9)
    assert ref.order == (AuxId("x", 1), 1, 2, 3, 4, AuxId("y", 1))
    assert [ref.schedule.s1(i) for i in ref.order] == [0, 0, 1, 3, 5, 6]
    assert [ref.schedule.s2(i) for i in ref.order] == [0, 1, 3, 5, 6, 7]
    assert ref.r_trace == (0, 1, 2, 2, 1, 1, 0)
    assert part.mu == (2, 1, 0)
    assert extract_real(ext, agg).starts == extract_real(ext, ref).starts


def test_fixture_solution():
    inst = Instance.from_pairs(FIXTURE, 9)
    sol = solve_detailed(inst)
    assert sol.johnson_bound == 7 and not sol.degenerate
    assert makespan(inst, sol.schedule) == 7
    assert validate_schedule(inst, sol.schedule).feasible


# conditions


@pytest.mark.parametrize(
    "a_max, b_max, omega, expected",
    [
        (2, 1, 9, True),       # 7 + 1 = 8
        (2, 1, 7, False),
        (2, 0.5, 8, True),     # 7 + max(1, 0.5)
        (2, 0.5, Fraction(79, 10), False),
        (1, 5, Fraction(17, 2), True),
        (1, 5, 8, False),
    ],
)
def test_condition5(a_max, b_max, omega, expected):
    assert condition5_holds(Fraction(a_max), Fraction(b_max), omega) is expected


def test_condition5_boundary_is_inclusive():
    assert condition5_rhs(2, 3) == 10
    assert condition5_holds(2, 3, 10) and not condition5_holds(2, 3, Fraction(99, 10))


def test_corollary_examples():
    assert corollary_holds(2, 1, 9) and not corollary_holds(2, 1, Fraction(89, 10))
    assert corollary_holds(1, 4, 18) and condition5_holds(1, 4, 18)


def test_r_bound():
    assert r_bound(2, 1) == 4 and r_bound(2, 5) == 8


# classification


def test_classes():
    inst = Instance.from_pairs([(1, 5), (3, 4), (2, 9), (4, 4), (4, 1)], 100)
    part = classify(build_extension(inst))
    # a_max = 4: a <= 2 goes to the small class
    assert part.l0_real == (1, 3)
    assert part.l1 == (2,)
    assert part.l2_real == (4, 5)
    assert part.mu_real == (11, 7, 0)


def test_x_jobs_lead_small_class():
    part = classify(build_extension(Instance.from_pairs([(3, 1), (3, 1)], 11)))
    assert part.l0 == [AuxId("x", k) for k in range(1, 6)]
    assert part.l2 == [1, 2, AuxId("y", 1)]
    assert part.mu == (5, 4, 3, 2, 1, 0)


def test_x_runs_are_merged():
    inst, ext, part, ref, agg = runs([(3, 1), (3, 1)])
    assert ext.x_count == 5
    assert agg.x_batches <= len(part.l2_real) + 1
    assert extract_real(ext, agg).starts == extract_real(ext, ref).starts


# properties


@given(pairs_strategy(max_size=10, a_high=10, b_high=10))
def test_reference_and_aggregated_agree(pairs):
    inst, ext, part, ref, agg = runs(pairs) if max(b for _, b in pairs) else (None,) * 5
    if inst is None:
        return
    assert extract_real(ext, agg).starts == extract_real(ext, ref).starts


@given(pairs_strategy(max_size=10, a_high=5, b_high=100))
def test_wide_ratio_agreement(pairs):
    if max(b for _, b in pairs) == 0:
        return
    inst, ext, part, ref, agg = runs(pairs)
    assert extract_real(ext, agg).starts == extract_real(ext, ref).starts


@given(pairs_strategy(max_size=10, a_high=20, b_high=20))
def test_extended_run_invariants(pairs):
    if max(b for _, b in pairs) == 0:
        return
    inst, ext, part, ref, _ = runs(pairs)
    n_prime = ext.as_instance()
    report = validate_schedule(n_prime, ref.schedule)
    assert report.feasible
    assert report.peak_occupancy <= condition5_rhs(inst.a_max, inst.b_max)
    bound = r_bound(inst.a_max, inst.b_max)
    assert all(0 <= r <= bound for r in ref.r_trace)
    assert ref.r_trace[-1] == 0
    # no idle on either machine: starts are the running sums
    assert makespan(n_prime, ref.schedule) == ext.johnson.cmax
    # each job starts on M2 after finishing on M1
    for i in ref.order:
        assert ref.schedule.s2(i) >= ref.schedule.s1(i) + ref.jobs[i].a


@given(pairs_strategy(max_size=12, a_high=30, b_high=30), st.integers(0, 20))
def test_solution_is_optimal_and_feasible(pairs, slack):
    base = cond5_instance(pairs)
    inst = base.with_omega(base.omega + slack)
    sol = solve_detailed(inst)
    report = validate_schedule(inst, sol.schedule)
    assert report.feasible
    assert report.peak_occupancy <= inst.omega
    assert makespan(inst, sol.schedule) == johnson(inst).cmax == sol.johnson_bound
    assert set(sol.schedule.ids()) == {j.id for j in inst.jobs}


@given(pairs_strategy(max_size=8, a_high=6, b_high=6))
def test_fractional_data(pairs):
    halves = [(Fraction(a, 2), Fraction(b, 3)) for a, b in pairs]
    a_max = max(a for a, _ in halves)
    b_max = max(b for _, b in halves)
    inst = Instance.from_pairs(halves, condition5_rhs(a_max, b_max))
    sched = solve(inst)
    assert validate_schedule(inst, sched).feasible
    assert makespan(inst, sched) == johnson(inst).cmax


# edge cases


@pytest.mark.parametrize("pairs, omega, span", [
    ([(2, 0), (3, 0)], 9, 5),
    ([(0, 2), (0, 3)], 0, 5),
    ([(0, 0)], 0, 0),
])
def test_degenerate_instances(pairs, omega, span):
    inst = Instance.from_pairs(pairs, omega)
    sol = solve_detailed(inst)
    assert sol.degenerate
    assert makespan(inst, sol.schedule) == span
    assert validate_schedule(inst, sol.schedule).feasible


def test_empty_instance():
    sol = solve_detailed(Instance((), 0))
    assert sol.schedule.starts == {} and sol.johnson_bound == 0


def test_condition_not_met_reports_bound():
    with pytest.raises(ConditionNotMet) as info:
        solve(Instance.from_pairs(FIXTURE, 8))
    assert info.value.johnson_bound == 7


def test_unknown_method():
    with pytest.raises(ValueError):
        solve(Instance.from_pairs(FIXTURE, 9), method="fast")


def test_reference_method_matches():
    inst = Instance.from_pairs([(5, 1), (1, 30), (4, 4), (2, 7)], 200)
    assert solve(inst, "reference").starts == solve(inst).starts
    profile = buffer_profile(inst, solve(inst))
    assert profile.peak <= inst.omega
