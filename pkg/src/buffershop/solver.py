"""Optimal schedules when the storage capacity is large relative to job sizes.

The jobs of the balanced extended set (see :mod:`buffershop.extend`) are split
into three classes, all kept in extended Johnson order:

* ``l0`` -- the X jobs and the ``a < b`` jobs with ``a <= a_max / 2``,
* ``l1`` -- the remaining ``a < b`` jobs,
* ``l2`` -- the ``a >= b`` jobs followed by the Y jobs.

A single sequence is then built by interleaving ``l0``/``l1`` jobs (which grow
the backlog ``R = sum b - sum a`` of placed jobs) with ``l2`` jobs (which shrink
it), keeping ``R`` inside a band that guarantees stage precedence and the
storage limit while both machines run without idle time.  Every job starts at
the running sums ``(sum a, sum b)`` of the jobs placed before it.

:func:`run_reference` places one job per step.  :func:`run_aggregated` makes
identical decisions but places whole runs of X jobs or Y jobs in O(1), which
keeps the total work O(n log n) however many auxiliary jobs the extension has.
"""

from __future__ import annotations

from collections import ChainMap
from dataclasses import dataclass, field
from functools import cached_property
from itertools import accumulate
from fractions import Fraction
from typing import Hashable, Mapping

from .extend import ExtendedInstance, build_extension
from .johnson import johnson, johnson_schedule
from .model import AuxId, Instance, Job, Schedule, scale_factor


class ConditionNotMet(ValueError):
    """The capacity is below ``3.5 a_max + max(0.5 a_max, b_max)``."""

    def __init__(self, message: str, johnson_bound: Fraction):
        super().__init__(message)
        self.johnson_bound = johnson_bound


class AlgorithmDefect(RuntimeError):
    """The interleaving ran out of ``l2`` jobs when it needed one (provably unreachable)."""


def condition5_rhs(a_max, b_max) -> Fraction:
    a_max, b_max = Fraction(a_max), Fraction(b_max)
    return Fraction(7, 2) * a_max + max(a_max / 2, b_max)


def condition5_holds(a_max, b_max, omega) -> bool:
    return condition5_rhs(a_max, b_max) <= Fraction(omega)


def corollary_holds(a_max, b_max, omega) -> bool:
    return Fraction(omega) >= Fraction(9, 2) * max(Fraction(a_max), Fraction(b_max))


def check_condition5(instance: Instance) -> bool:
    return condition5_holds(instance.a_max, instance.b_max, instance.omega)


def check_corollary(instance: Instance) -> bool:
    return corollary_holds(instance.a_max, instance.b_max, instance.omega)


def r_bound(a_max, b_max) -> Fraction:
    """Upper bound on every backlog value ``R`` the interleaving produces."""
    a_max, b_max = Fraction(a_max), Fraction(b_max)
    return Fraction(3, 2) * a_max + max(a_max / 2, b_max)


@dataclass(frozen=True)
class ClassPartition:
    """Class lists of the extended set; X and Y are stored as counts."""

    x_count: int
    x_b: Fraction
    l0_real: tuple[Hashable, ...]
    l1: tuple[Hashable, ...]
    l2_real: tuple[Hashable, ...]
    y_count: int
    y_a: Fraction
    mu_scaled: tuple[int, ...]  # suffix sums of b - a over l0_real, trailing 0
    scale: int
    # the three real-job lists as ranks in the Johnson order
    positions: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]] = ((), (), ())

    @property
    def l0(self) -> list[Hashable]:
        return [AuxId("x", k) for k in range(1, self.x_count + 1)] + list(self.l0_real)

    @property
    def l2(self) -> list[Hashable]:
        return list(self.l2_real) + [AuxId("y", k) for k in range(1, self.y_count + 1)]

    @cached_property
    def mu_real(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.scale) for v in self.mu_scaled)

    @property
    def mu(self) -> tuple[Fraction, ...]:
        """Suffix sums of ``b - a`` along ``l0``; one entry per position plus a final 0."""
        head = self.mu_real[0]
        return tuple((self.x_count - k) * self.x_b + head for k in range(self.x_count)) + self.mu_real


def classify(extended: ExtendedInstance) -> ClassPartition:
    original = extended.original
    scale = original.scaled[0]
    jr = extended.johnson
    a, b = jr.a_scaled, jr.b_scaled
    a_max = max(a)
    split = len(jr.l1_set)
    small, large, deltas = [], [], []
    # a <= a_max / 2 compared without division
    for rank in range(split):
        ak = a[rank]
        if 2 * ak <= a_max:
            small.append(rank)
            deltas.append(b[rank] - ak)
        else:
            large.append(rank)
    mu = list(accumulate(reversed(deltas), initial=0))
    mu.reverse()
    return ClassPartition(
        x_count=extended.x_count,
        x_b=extended.x_b,
        l0_real=tuple(jr.order[r] for r in small),
        l1=tuple(jr.order[r] for r in large),
        l2_real=jr.l2_set,
        y_count=extended.y_count,
        y_a=extended.y_a,
        mu_scaled=tuple(mu),
        scale=scale,
        positions=(tuple(small), tuple(large), tuple(range(split, len(jr.order)))),
    )


@dataclass(frozen=True)
class Run:
    """Result of one interleaving pass.

    ``schedule`` covers every job in ``order``; for the aggregated pass that is
    the real jobs plus one ``AuxId("xb", k)`` entry per merged run of X jobs
    (Y runs only advance the running sums and get no entry).  The backlog
    trace is kept as ``trace_scaled / trace_scale`` and converted on access.
    """

    order: tuple[Hashable, ...]
    schedule: Schedule
    jobs: Mapping[Hashable, Job]
    trace_scaled: tuple
    trace_scale: int = 1
    x_batches: int = 0
    y_batches: int = 0

    @cached_property
    def r_trace(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v) / self.trace_scale for v in self.trace_scaled)


@dataclass
class BuilderState:
    """Cursors (0-based) into the placed sequence and the class lists, plus running sums."""

    i: int = 0
    i0: int = 0
    i1: int = 0
    i2: int = 0
    l1_sum: Fraction = Fraction(0)
    l2_sum: Fraction = Fraction(0)
    r_trace: list = field(default_factory=lambda: [Fraction(0)])

    @property
    def r(self) -> Fraction:
        return self.l2_sum - self.l1_sum


def run_reference(extended: ExtendedInstance, partition: ClassPartition) -> Run:
    """One job per step, every auxiliary job materialised."""
    jobs = {j.id: j for j in extended.jobs()}
    pi0, pi1, pi2 = partition.l0, list(partition.l1), partition.l2
    mu = partition.mu
    a_max = extended.a_max
    st = BuilderState()
    order: list[Hashable] = []
    starts: dict[Hashable, tuple[Fraction, Fraction]] = {}

    def place(job_id):
        job = jobs[job_id]
        starts[job_id] = (st.l1_sum, st.l2_sum)
        order.append(job_id)
        st.l1_sum += job.a
        st.l2_sum += job.b
        st.i += 1
        st.r_trace.append(st.r)

    def place_from_l2():
        if st.i2 >= len(pi2):
            raise AlgorithmDefect(f"no l2 job left at position {st.i + 1}")
        place(pi2[st.i2])
        st.i2 += 1

    while st.i0 < len(pi0):
        r = st.r
        if r < Fraction(3, 2) * a_max:
            take_l0 = True
        elif r < 2 * a_max:
            if st.i2 >= len(pi2):
                raise AlgorithmDefect(f"no l2 job left at position {st.i + 1}")
            nxt = jobs[pi2[st.i2]]
            take_l0 = r + (nxt.b - nxt.a) + mu[st.i0] < a_max
        else:
            take_l0 = False
        if take_l0:
            place(pi0[st.i0])
            st.i0 += 1
        else:
            place_from_l2()

    while st.i < extended.n_prime:
        if st.r < 2 * a_max and st.i1 < len(pi1):
            place(pi1[st.i1])
            st.i1 += 1
        else:
            place_from_l2()

    return Run(tuple(order), Schedule(starts), jobs, tuple(st.r_trace))  # trace already exact


class _Aggregator:
    """Integer-scaled replay of the reference decisions with X and Y runs merged.

    All durations are multiplied by an even common denominator so that every
    comparison, including against ``1.5 a_max``, is between integers.  Jobs
    are referred to by their rank in the Johnson order, and the durations are
    gathered into that order once so later passes read memory sequentially.
    Merged X runs get negative ranks ``-1, -2, ...``.
    """

    def __init__(self, extended: ExtendedInstance, partition: ClassPartition):
        original = extended.original
        base = original.scaled[0]
        self.scale = s = 2 * scale_factor([Fraction(1, base), partition.x_b, partition.y_a])
        factor = s // base

        def up(v: Fraction) -> int:
            return v.numerator * (s // v.denominator)

        self.original = original
        jr = extended.johnson
        self.ids = jr.order
        self.a = jr.a_scaled if factor == 1 else [v * factor for v in jr.a_scaled]
        self.b = jr.b_scaled if factor == 1 else [v * factor for v in jr.b_scaled]
        self.A = up(extended.a_max)
        self.A15 = self.A * 3 // 2
        self.bx = up(partition.x_b)
        self.ay = up(partition.y_a)
        self.l0, self.l1, self.l2 = partition.positions
        self.mu0 = [v * factor for v in partition.mu_scaled]
        self.x_left = partition.x_count
        self.y_left = partition.y_count
        self.p0 = self.p1 = self.p2 = 0
        self.sa = self.sb = 0
        self.placed: list[int] = []
        self.s1: list[int] = []
        self.s2: list[int] = []
        self.x_runs: list[int] = []  # length of each merged X run
        self.trace = [0]
        self.y_batches = 0

    # The two loops below keep their state in locals and write it back at the
    # end; attribute access per placement dominated the running time otherwise.

    def first_phase(self):
        A, A15, A2 = self.A, self.A15, 2 * self.A
        a, b, l0, l2, mu0 = self.a, self.b, self.l0, self.l2, self.mu0
        bx, ay = self.bx, self.ay
        placed, s1, s2, trace, x_runs = self.placed, self.s1, self.s2, self.trace, self.x_runs
        n0, n2 = len(l0), len(l2)
        p0, p2, sa, sb = self.p0, self.p2, self.sa, self.sb
        x_left, y_left, y_batches = self.x_left, self.y_left, self.y_batches
        while x_left or p0 < n0:
            r = sb - sa
            mu = x_left * bx + mu0[p0]
            # b - a of the next l2 job: real ones first, then Y
            if p2 < n2:
                k = l2[p2]
                d2 = b[k] - a[k]
            else:
                d2 = -ay if y_left else None
            if x_left:
                # R + mu is unchanged by X placements, so the gate is fixed for the run
                target = A2 if d2 is not None and r + d2 + mu < A else A15
                count = -((r - target) // bx) if r < target else 0
                if count:
                    count = min(count, x_left)
                    x_runs.append(count)
                    placed.append(-len(x_runs))
                    s1.append(sa)
                    s2.append(sb)
                    sb += count * bx
                    x_left -= count
                    trace.append(sb - sa)
                    continue
                take_l0 = False
            elif r < A15:
                take_l0 = True
            elif r < A2:
                if d2 is None:
                    raise AlgorithmDefect(f"no l2 job left after {len(placed)} placements")
                take_l0 = r + d2 + mu < A
            else:
                take_l0 = False
            if take_l0:
                k = l0[p0]
                p0 += 1
            elif p2 < n2:
                k = l2[p2]
                p2 += 1
            elif y_left:
                # Y keeps being chosen while R >= 1.5A and (R >= 2A or R - ay + mu >= A)
                floor = max(A15, min(A2, A + ay - mu))
                count = min(y_left, (r - floor) // ay + 1)
                y_batches += 1
                sa += count * ay
                y_left -= count
                trace.append(sb - sa)
                continue
            else:
                raise AlgorithmDefect(f"no l2 job left after {len(placed)} placements")
            placed.append(k)
            s1.append(sa)
            s2.append(sb)
            sa += a[k]
            sb += b[k]
            trace.append(sb - sa)
        self.p0, self.p2, self.sa, self.sb = p0, p2, sa, sb
        self.x_left, self.y_left, self.y_batches = x_left, y_left, y_batches

    def second_phase(self):
        A2 = 2 * self.A
        a, b, l1, l2, ay = self.a, self.b, self.l1, self.l2, self.ay
        placed, s1, s2, trace = self.placed, self.s1, self.s2, self.trace
        n1, n2 = len(l1), len(l2)
        p1, p2, sa, sb = self.p1, self.p2, self.sa, self.sb
        y_left, y_batches = self.y_left, self.y_batches
        while p1 < n1 or p2 < n2 or y_left:
            if p1 < n1 and sb - sa < A2:
                k = l1[p1]
                p1 += 1
            elif p2 < n2:
                k = l2[p2]
                p2 += 1
            elif y_left:
                # while l1 jobs remain, Y runs stop once R drops below 2A
                count = y_left if p1 == n1 else min(y_left, (sb - sa - A2) // ay + 1)
                y_batches += 1
                sa += count * ay
                y_left -= count
                trace.append(sb - sa)
                continue
            else:
                raise AlgorithmDefect(f"no l2 job left after {len(placed)} placements")
            placed.append(k)
            s1.append(sa)
            s2.append(sb)
            sa += a[k]
            sb += b[k]
            trace.append(sb - sa)
        self.p1, self.p2, self.sa, self.sb = p1, p2, sa, sb
        self.y_left, self.y_batches = y_left, y_batches

    def result(self) -> Run:
        s = self.scale
        ids = self.ids
        order, starts, batches = [], {}, {}
        for k, x, y in zip(self.placed, self.s1, self.s2):
            if k >= 0:
                job_id = ids[k]
            else:
                job_id = AuxId("xb", -k)
                batches[job_id] = Job(job_id, 0, Fraction(self.x_runs[-k - 1] * self.bx, s))
            order.append(job_id)
            starts[job_id] = (Fraction(x, s), Fraction(y, s))
        jobs = ChainMap(batches, self.original.by_id)
        return Run(tuple(order), Schedule(starts), jobs, tuple(self.trace), s,
                   len(self.x_runs), self.y_batches)


def run_aggregated(extended: ExtendedInstance, partition: ClassPartition) -> Run:
    agg = _Aggregator(extended, partition)
    agg.first_phase()
    agg.second_phase()
    return agg.result()


def extract_real(extended: ExtendedInstance, run: Run) -> Schedule:
    """Drop auxiliary and merged entries; real start times are kept as they are."""
    return Schedule({i: v for i, v in run.schedule.starts.items() if not isinstance(i, AuxId)})


@dataclass(frozen=True)
class Solution:
    schedule: Schedule
    johnson_bound: Fraction
    extended: ExtendedInstance | None
    run: Run | None
    degenerate: bool


def solve_detailed(instance: Instance, method: str = "aggregated") -> Solution:
    if method not in ("aggregated", "reference"):
        raise ValueError(f"unknown method {method!r}")
    if not instance.jobs or instance.a_max == 0 or instance.b_max == 0:
        # all a = 0: no storage is ever used; all b = 0: each job holds storage
        # only while on M1, so at most a_max <= omega at a time.  Either way the
        # Johnson schedule is feasible for every admissible capacity.
        return Solution(johnson_schedule(instance), johnson(instance).cmax, None, None, True)
    if not check_condition5(instance):
        bound = johnson(instance).cmax
        raise ConditionNotMet(
            f"capacity {instance.omega} < {condition5_rhs(instance.a_max, instance.b_max)} "
            f"required for guaranteed optimality (Johnson bound {bound})",
            bound,
        )
    extended = build_extension(instance)
    partition = classify(extended)
    run = (run_aggregated if method == "aggregated" else run_reference)(extended, partition)
    return Solution(extract_real(extended, run), extended.johnson.cmax, extended, run, False)


def solve(instance: Instance, method: str = "aggregated") -> Schedule:
    """Optimal schedule (makespan equals the Johnson bound) for instances meeting the capacity condition."""
    return solve_detailed(instance, method).schedule
