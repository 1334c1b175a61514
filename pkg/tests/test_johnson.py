import itertools
from fractions import Fraction

from hypothesis import given

from buffershop.johnson import cmax_scan, johnson, johnson_schedule, left_shifted
from buffershop.model import Instance, makespan

from conftest import pairs_strategy


def unbounded(pairs):
    return Instance.from_pairs(pairs, max(sum(a for a, _ in pairs), 1))


def simulate(pairs):
    """Makespan of a same-order schedule without storage limit, by direct recurrence."""
    c1 = c2 = 0
    for a, b in pairs:
        c1 += a
        c2 = max(c1, c2) + b
    return c2


def test_three_job_example():
    jr = johnson(unbounded([(3, 4), (5, 2), (1, 6)]))
    assert jr.order == (3, 1, 2)
    assert jr.l1_set == (3, 1) and jr.l2_set == (2,)
    assert jr.cmax == 13


def test_four_job_fixture():
    jr = johnson(Instance.from_pairs([(1, 2), (2, 2), (2, 1), (1, 1)], 9))
    assert jr.order == (1, 2, 3, 4)
    assert jr.cmax == 7
    assert (jr.idle1, jr.idle2) == (1, 1)


def test_single_job():
    jr = johnson(Instance.from_pairs([(4, 7)], 4))
    assert jr.cmax == 11 and jr.idle1 == 7 and jr.idle2 == 4


def test_ties_follow_ids():
    jr = johnson(unbounded([(2, 2), (1, 1), (2, 2), (1, 1)]))
    # all in the a >= b part, descending b, equal b kept in id order
    assert jr.order == (1, 3, 2, 4)


def test_fractional_times():
    inst = Instance.from_pairs([("1/2", "3/4"), ("1/3", 0)], 1)
    jr = johnson(inst)
    assert jr.order == (1, 2)
    # M1 busy until 1/2, M2 runs job 1 on [1/2, 5/4) then job 2 for zero time
    assert jr.cmax == Fraction(5, 4)


def test_scan_empty():
    assert cmax_scan([], []) == (0, -1)


@given(pairs_strategy(max_size=7))
def test_johnson_is_best_permutation_without_storage_limit(pairs):
    best = min(simulate(p) for p in itertools.permutations(pairs))
    assert johnson(unbounded(pairs)).cmax == best


@given(pairs_strategy(max_size=12, a_high=20, b_high=20))
def test_cmax_formula_matches_timing(pairs):
    inst = unbounded(pairs)
    jr = johnson(inst)
    assert makespan(inst, johnson_schedule(inst)) == jr.cmax
    ordered = [(inst.by_id[i].a, inst.by_id[i].b) for i in jr.order]
    assert makespan(inst, left_shifted(inst, jr.order)) == simulate(ordered)
    assert jr.cmax >= max(inst.total_a, inst.total_b)
    assert jr.idle1 >= 0 and jr.idle2 >= 0
    assert jr.idle1 - jr.idle2 == inst.total_b - inst.total_a
    k = jr.critical_index
    assert sum(a for a, _ in ordered[: k + 1]) + sum(b for _, b in ordered[k:]) == jr.cmax
