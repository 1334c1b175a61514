import random
from fractions import Fraction

import pytest

from buffershop.hardness import (
    ReductionError,
    ReductionSpec,
    any_three_fit,
    brute_force_triples,
    build_reduction,
    build_yes_schedule,
    check_premises,
    four_regular_exceed,
    sample_values,
    yes_sequence,
)
from buffershop.model import buffer_profile, makespan, validate_schedule
from buffershop.oracle import subset_sum_exists

E_VALUES = (11, 11, 12, 12, 12, 12, 12, 12, 13, 13)
WITNESS = (0, 1, 2, 8, 9)  # 11 + 11 + 12 + 13 + 13 = 60


@pytest.fixture
def spec():
    return ReductionSpec.from_values(E_VALUES)


def test_fixture_instance(spec):
    inst, target = build_reduction(spec)
    assert (spec.m, spec.E) == (5, 60)
    assert len(inst) == 14
    assert inst.omega == 180 and target == 780
    assert inst.by_id[0].a == 0 and inst.by_id[0].b == 60
    assert [inst.by_id[k].b for k in range(1, 11)] == [60 + v for v in E_VALUES]
    assert all(inst.by_id[i].a == 60 and inst.by_id[i].b == 0 for i in spec.special_ids)


def test_fixture_yes_schedule(spec):
    inst, target = build_reduction(spec)
    sched = build_yes_schedule(spec, WITNESS)
    report = validate_schedule(inst, sched)
    assert report.feasible
    assert makespan(inst, sched) == target == 780
    assert report.peak_occupancy == 180 == buffer_profile(inst, sched).peak
    order = yes_sequence(spec, WITNESS)
    completions = [sched.s2(i) + inst.by_id[i].b for i in order]
    assert completions == [60, 131, 202, 274, 347, 420, 420, 492, 564, 636, 708, 780, 780, 780]
    first_special = spec.special_ids[0]
    assert sched.s2(first_special) == 420
    pred = order[order.index(first_special) - 1]
    assert sched.s2(pred) + inst.by_id[pred].b - (sched.s1(pred) + inst.by_id[pred].a) == 120


def test_fixture_structure(spec):
    inst, _ = build_reduction(spec)
    assert sum(j.a for j in inst.jobs) == sum(j.b for j in inst.jobs) == 780
    assert any_three_fit(inst) and brute_force_triples(inst)
    assert four_regular_exceed(inst) and 4 * spec.E > inst.omega
    assert 3 * spec.E <= inst.omega < 4 * spec.E


def test_fixture_premises(spec):
    report = check_premises(spec)
    assert not report.checks["m_large"]
    assert not report.all_pass
    for name in ("sum", "bounds", "three_fit", "four_exceed", "balanced_loads"):
        assert report.checks[name], name


def test_m8_premises_hold():
    spec = ReductionSpec.from_values((9,) * 16, delta=Fraction(1, 3))
    assert (spec.m, spec.E) == (8, 72)
    report = check_premises(spec)
    assert report.checks["m_large"] and report.checks["size_ratio"]
    assert report.all_pass
    inst, _ = build_reduction(spec)
    largest = max(max(j.a, j.b) for j in inst.jobs)
    assert largest <= inst.omega / 4 * (1 + spec.delta)


def test_boundary_value_rejected():
    # E = 60, m = 5: 15 = E/(m-1) is outside the open interval
    with pytest.raises(ReductionError):
        build_reduction(ReductionSpec(5, (15, 11, 11, 11, 12, 12, 12, 12, 12, 12), 60))
    with pytest.raises(ReductionError):
        ReductionSpec.from_values((11, 12, 13))


def test_bad_witness(spec):
    with pytest.raises(ReductionError):
        yes_sequence(spec, (0, 1, 2))


def test_sample_values_respects_bounds():
    rng = random.Random(1)
    e = sample_values(6, 210, rng)
    spec = ReductionSpec(6, e, 210)
    assert sum(e) == 420 and all(spec.lower < v < spec.upper for v in e)
    with pytest.raises(ReductionError):
        sample_values(5, 6, rng)  # nothing strictly between 1 and 3/2


def test_random_yes_instances():
    rng = random.Random(11)
    checked = 0
    for _ in range(100):
        m = rng.randint(5, 9)
        E = rng.choice([m * m * 4, m * m * 6])
        spec = ReductionSpec(m, sample_values(m, E, rng), E)
        ok, witness = subset_sum_exists(spec.e, E)
        inst, target = build_reduction(spec)
        assert 3 * E <= inst.omega < 4 * E
        assert sum(j.a for j in inst.jobs) == sum(j.b for j in inst.jobs) == target
        assert brute_force_triples(inst) == any_three_fit(inst) is True
        if not ok:
            continue
        assert len(witness) == m
        sched = build_yes_schedule(spec, witness)
        report = validate_schedule(inst, sched)
        assert report.feasible and report.peak_occupancy == 3 * E
        assert makespan(inst, sched) == target
        checked += 1
    assert checked >= 50
