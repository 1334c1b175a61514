"""Johnson's two-machine order, its makespan (a lower bound here) and idle times."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate, repeat
from operator import add, lt, sub
from typing import Hashable

from .model import Instance, Schedule, id_key


@dataclass(frozen=True)
class JohnsonResult:
    order: tuple[Hashable, ...]
    l1_set: tuple[Hashable, ...]  # a < b, in order
    l2_set: tuple[Hashable, ...]  # a >= b, in order
    cmax: Fraction
    idle1: Fraction
    idle2: Fraction
    critical_index: int  # 0-based position attaining the max in the makespan scan
    positions: tuple[int, ...] = ()  # order as indices into instance.jobs
    # integer-scaled times in this order (scale of Instance.scaled), for sequential reuse
    a_scaled: tuple[int, ...] = field(default=(), repr=False)
    b_scaled: tuple[int, ...] = field(default=(), repr=False)


def johnson_positions(a: list[int], b: list[int], ids: list[Hashable]) -> tuple[list[int], int]:
    """Johnson order over integer data as indices, plus the size of the ``a < b`` part."""
    n = len(ids)
    if all(type(i) is int for i in ids):
        if all(map(lt, ids, ids[1:])):
            by_id = list(range(n))  # already in id order, the common case
        else:
            by_id = sorted(range(n), key=ids.__getitem__)
    else:
        by_id = sorted(range(n), key=lambda i: id_key(ids[i]))
    first = [i for i in by_id if a[i] < b[i]]
    second = [i for i in by_id if a[i] >= b[i]]
    first.sort(key=a.__getitem__)  # stable: equal keys stay in id order
    second.sort(key=b.__getitem__, reverse=True)  # reverse keeps the sort stable
    return first + second, len(first)


def cmax_scan(a_seq, b_seq) -> tuple[object, int]:
    """``max_k (sum a[:k+1] + sum b[k:])`` with the first maximising ``k``."""
    if not a_seq:
        return 0, -1
    total_b = sum(b_seq)
    prefix_a = accumulate(a_seq)
    before_b = accumulate(b_seq, initial=0)  # sum b[:k]; one extra value at the end is ignored by map
    values = list(map(sub, map(add, prefix_a, repeat(total_b)), before_b))
    best = max(values)
    return best, values.index(best)


def johnson(instance: Instance) -> JohnsonResult:
    jobs = instance.jobs
    scale, a, b = instance.scaled
    ids = [j.id for j in jobs]
    pos, split = johnson_positions(a, b, ids)
    a_ord = tuple([a[i] for i in pos])
    b_ord = tuple([b[i] for i in pos])
    cmax, k = cmax_scan(a_ord, b_ord)
    cmax = Fraction(cmax, scale)
    order = tuple(ids[i] for i in pos)
    return JohnsonResult(
        order=order,
        l1_set=order[:split],
        l2_set=order[split:],
        cmax=cmax,
        idle1=cmax - instance.total_a,
        idle2=cmax - instance.total_b,
        critical_index=k,
        positions=tuple(pos),
        a_scaled=a_ord,
        b_scaled=b_ord,
    )


def left_shifted(instance: Instance, order) -> Schedule:
    """Same-order timing with no storage limit."""
    jobs = instance.by_id
    starts = {}
    c1 = c2 = Fraction(0)
    for job_id in order:
        job = jobs[job_id]
        s1 = c1
        c1 = s1 + job.a
        s2 = max(c1, c2)
        c2 = s2 + job.b
        starts[job_id] = (s1, s2)
    return Schedule(starts)


def johnson_schedule(instance: Instance) -> Schedule:
    """Johnson's schedule ignoring the buffer; its makespan is the lower bound."""
    return left_shifted(instance, johnson(instance).order)
