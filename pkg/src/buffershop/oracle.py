"""Exhaustive ground truth for small instances.

Only permutation schedules (same order on both machines) are searched.  Some
instances have no optimal permutation schedule at all, so the result is the
best permutation makespan, which is what the large-capacity solver is checked
against: there the permutation optimum already reaches the Johnson bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Hashable, Sequence

from .model import CapacityError, Instance, Schedule, earliest_start_timing, greedy_times, id_key

DEFAULT_LIMIT = 8
SEARCH_SCOPE = "permutation schedules only"


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    best_order: tuple[Hashable, ...]
    best_schedule: Schedule
    best_makespan: Fraction
    explored: int
    scope: str = SEARCH_SCOPE


def best_permutation(instance: Instance, limit: int = DEFAULT_LIMIT) -> OracleResult:
    """Try every order with greedy earliest-start timing; ties go to the lexicographically smallest order."""
    n = len(instance)
    if n > limit:
        raise InstanceTooLarge(f"{n} jobs exceeds the oracle limit of {limit}")
    if any(j.a > instance.omega for j in instance.jobs):
        raise CapacityError("some job can never fit in the buffer")
    jobs = sorted(instance.jobs, key=lambda j: id_key(j.id))
    scale, _, _ = instance.scaled
    a = [int(j.a * scale) for j in jobs]
    b = [int(j.b * scale) for j in jobs]
    omega = instance.omega * scale  # may stay fractional; comparisons remain exact

    best, best_perm, explored = None, tuple(range(n)), 0
    for perm in permutations(range(n)):
        explored += 1
        _, s2 = greedy_times(a, b, omega, perm)
        value = max((s2[k] + b[j] for k, j in enumerate(perm)), default=0)
        if best is None or value < best:
            best, best_perm = value, perm
    order = tuple(jobs[j].id for j in best_perm)
    schedule = earliest_start_timing(instance, order)
    return OracleResult(order, schedule, Fraction(best or 0, scale), explored)


def subset_sum_exists(values: Sequence[int], target: int) -> tuple[bool, list[int] | None]:
    """Decide whether some sub-multiset of ``values`` sums to ``target``.

    Returns the witness as a sorted list of indices into ``values``.
    """
    if target < 0:
        return False, None
    # came_from[s] = index of the value that first reached sum s
    came_from: list[int | None] = [None] * (target + 1)
    reached = [False] * (target + 1)
    reached[0] = True
    for idx, v in enumerate(values):
        if v <= 0:
            raise ValueError("values must be positive integers")
        for s in range(target, v - 1, -1):
            if not reached[s] and reached[s - v]:
                reached[s] = True
                came_from[s] = idx
    if not reached[target]:
        return False, None
    witness, s = [], target
    while s:
        idx = came_from[s]
        witness.append(idx)
        s -= values[idx]
    return True, sorted(witness)
