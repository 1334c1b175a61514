"""Instances, schedules, buffer occupancy and feasibility checking.

All time and storage quantities are :class:`fractions.Fraction` values so that
every comparison in the package is exact.  A job seizes ``a`` units of storage
when it starts on the first machine and holds them on the half-open interval
``[s1, c2)``; at a shared instant releases take effect before seizures.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, Sequence, Union

Number = Union[int, Fraction, str]

__all__ = [
    "AuxId",
    "BufferProfile",
    "CapacityError",
    "Instance",
    "Job",
    "Schedule",
    "ScheduleError",
    "ValidationReport",
    "Violation",
    "buffer_profile",
    "earliest_start_timing",
    "greedy_times",
    "id_key",
    "makespan",
    "scale_factor",
    "to_time",
    "validate_schedule",
]


class ScheduleError(ValueError):
    """A schedule does not match its instance (unknown/missing ids, negative starts)."""


class CapacityError(ValueError):
    """Some job needs more storage than the capacity allows; no schedule exists."""


def to_time(value: Number) -> Fraction:
    """Convert an int, Fraction or ``"p/q"``/decimal string into an exact time value."""
    if isinstance(value, bool):
        raise TypeError("booleans are not time values")
    if isinstance(value, float):
        # repr gives the shortest decimal that round-trips, which is what the user typed
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True, order=True)
class AuxId:
    """Identifier of a job that exists only inside the solver.

    ``kind`` is ``"x"`` (zero first stage), ``"y"`` (zero second stage) or
    ``"xb"`` (a batch of consecutive ``x`` jobs merged into one).
    """

    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


_AUX_RANK = {"x": 0, "xb": 1, "y": 2}


def id_key(job_id: Hashable) -> tuple:
    """Total order on job ids: ints, then strings, then solver-internal ids."""
    if isinstance(job_id, AuxId):
        return (2, _AUX_RANK.get(job_id.kind, 3), job_id.index)
    if isinstance(job_id, int) and not isinstance(job_id, bool):
        return (0, job_id, "")
    return (1, 0, str(job_id))


@dataclass(frozen=True)
class Job:
    """A job with first-stage time ``a`` (also its storage need) and second-stage time ``b``."""

    id: Hashable
    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", to_time(self.a))
        object.__setattr__(self, "b", to_time(self.b))
        if self.a < 0 or self.b < 0:
            raise ValueError(f"job {self.id!r}: processing times must be non-negative")

    @property
    def storage(self) -> Fraction:
        return self.a

    @property
    def is_auxiliary(self) -> bool:
        return isinstance(self.id, AuxId)


@dataclass(frozen=True)
class Instance:
    jobs: tuple[Job, ...]
    omega: Fraction

    def __post_init__(self) -> None:
        jobs = tuple(j if isinstance(j, Job) else Job(*j) for j in self.jobs)
        object.__setattr__(self, "jobs", jobs)
        object.__setattr__(self, "omega", to_time(self.omega))
        seen = set()
        for j in jobs:
            if j.id in seen:
                raise ValueError(f"duplicate job id {j.id!r}")
            seen.add(j.id)
        for j in jobs:
            if j.a > self.omega:
                raise CapacityError(
                    f"job {j.id!r} needs {j.a} storage units but capacity is {self.omega}"
                )

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Number, Number]], omega: Number) -> "Instance":
        """Build an instance with ids ``1..n`` from ``(a, b)`` pairs."""
        return cls(tuple(Job(i, a, b) for i, (a, b) in enumerate(pairs, start=1)), omega)

    def __len__(self) -> int:
        return len(self.jobs)

    def __iter__(self) -> Iterator[Job]:
        return iter(self.jobs)

    @cached_property
    def by_id(self) -> dict[Hashable, Job]:
        return {j.id: j for j in self.jobs}

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {j.id: k for k, j in enumerate(self.jobs)}

    @cached_property
    def scaled(self) -> tuple[int, list[int], list[int]]:
        """``(scale, a, b)`` with every time multiplied by the common denominator."""
        scale = scale_factor([j.a for j in self.jobs] + [j.b for j in self.jobs])
        a = [j.a.numerator * (scale // j.a.denominator) for j in self.jobs]
        b = [j.b.numerator * (scale // j.b.denominator) for j in self.jobs]
        return scale, a, b

    @cached_property
    def a_max(self) -> Fraction:
        scale, a, _ = self.scaled
        return Fraction(max(a, default=0), scale)

    @cached_property
    def b_max(self) -> Fraction:
        scale, _, b = self.scaled
        return Fraction(max(b, default=0), scale)

    @cached_property
    def total_a(self) -> Fraction:
        scale, a, _ = self.scaled
        return Fraction(sum(a), scale)

    @cached_property
    def total_b(self) -> Fraction:
        scale, _, b = self.scaled
        return Fraction(sum(b), scale)

    def with_omega(self, omega: Number) -> "Instance":
        return Instance(self.jobs, omega)


@dataclass(frozen=True)
class Schedule:
    """Start times ``(s1, s2)`` per job id.  Iteration follows insertion order."""

    starts: Mapping[Hashable, tuple[Fraction, Fraction]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.starts)

    def __contains__(self, job_id: Hashable) -> bool:
        return job_id in self.starts

    def __getitem__(self, job_id: Hashable) -> tuple[Fraction, Fraction]:
        return self.starts[job_id]

    def s1(self, job_id: Hashable) -> Fraction:
        return self.starts[job_id][0]

    def s2(self, job_id: Hashable) -> Fraction:
        return self.starts[job_id][1]

    def ids(self) -> list[Hashable]:
        return list(self.starts)

    def order_on(self, machine: int) -> list[Hashable]:
        """Job ids sorted by start time on machine 1 or 2 (ties by id)."""
        pos = machine - 1
        return sorted(self.starts, key=lambda i: (self.starts[i][pos], id_key(i)))

    def restricted(self, keep: Iterable[Hashable]) -> "Schedule":
        keep = set(keep)
        return Schedule({i: v for i, v in self.starts.items() if i in keep})


@dataclass(frozen=True)
class Violation:
    kind: str  # "machine-overlap" | "precedence" | "buffer-capacity"
    jobs: tuple[Hashable, ...]
    time: Fraction
    amount: Fraction
    machine: int | None = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    peak_occupancy: Fraction

    @property
    def feasible(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


@dataclass(frozen=True)
class BufferProfile:
    """Right-continuous step function: occupancy ``breakpoints[k][1]`` holds on
    ``[breakpoints[k][0], breakpoints[k+1][0])`` and 0 after the last breakpoint."""

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    @property
    def peak(self) -> Fraction:
        return max((occ for _, occ in self.breakpoints), default=Fraction(0))

    def at(self, t: Number) -> Fraction:
        t = to_time(t)
        occ = Fraction(0)
        for time, value in self.breakpoints:
            if time > t:
                break
            occ = value
        return occ

    def integral(self) -> Fraction:
        total = Fraction(0)
        for (t0, occ), (t1, _) in zip(self.breakpoints, self.breakpoints[1:]):
            total += occ * (t1 - t0)
        return total


def _check_schedule(instance: Instance, schedule: Schedule) -> dict[Hashable, Job]:
    jobs = instance.by_id
    for job_id, (s1, s2) in schedule.starts.items():
        if job_id not in jobs:
            raise ScheduleError(f"schedule mentions unknown job {job_id!r}")
        if s1 < 0 or s2 < 0:
            raise ScheduleError(f"job {job_id!r} has a negative start time")
    missing = [i for i in jobs if i not in schedule.starts]
    if missing:
        raise ScheduleError(f"schedule has no start times for jobs {missing!r}")
    return jobs


def _holding_interval(job: Job, s1: Fraction, s2: Fraction) -> tuple[Fraction, Fraction]:
    # if precedence is broken the job still holds its storage while on M1
    return s1, max(s2 + job.b, s1 + job.a)


def _occupancy_events(jobs: Mapping[Hashable, Job], schedule: Schedule):
    """``(time, rank, job_id, delta)`` tuples sorted so releases (rank 0) precede seizures."""
    events = []
    for job_id, (s1, s2) in schedule.starts.items():
        job = jobs[job_id]
        if job.a == 0:
            continue
        start, end = _holding_interval(job, s1, s2)
        if end <= start:
            continue
        events.append((start, 1, job_id, job.a))
        events.append((end, 0, job_id, -job.a))
    events.sort(key=lambda e: (e[0], e[1]))
    return events


def _sweep(jobs, schedule):
    """Group occupancy events by instant; yields ``(time, occupancy after, active ids)``."""
    events = _occupancy_events(jobs, schedule)
    occ = Fraction(0)
    active: dict[Hashable, None] = {}
    k = 0
    while k < len(events):
        t = events[k][0]
        while k < len(events) and events[k][0] == t:
            _, _, job_id, delta = events[k]
            occ += delta
            if delta > 0:
                active[job_id] = None
            else:
                active.pop(job_id, None)
            k += 1
        yield t, occ, active


def buffer_profile(instance: Instance, schedule: Schedule) -> BufferProfile:
    jobs = _check_schedule(instance, schedule)
    points: list[tuple[Fraction, Fraction]] = []
    for t, occ, _ in _sweep(jobs, schedule):
        if points and points[-1][1] == occ:
            continue
        points.append((t, occ))
    return BufferProfile(tuple(points))


def _machine_overlaps(jobs, schedule, machine: int) -> list[Violation]:
    pos = machine - 1
    ops = []
    for job_id, starts in schedule.starts.items():
        dur = jobs[job_id].a if machine == 1 else jobs[job_id].b
        if dur > 0:
            ops.append((starts[pos], starts[pos] + dur, job_id))
    ops.sort(key=lambda o: (o[0], o[1], id_key(o[2])))
    found = []
    busy_until, holder = None, None
    for start, end, job_id in ops:
        if busy_until is not None and start < busy_until:
            found.append(
                Violation("machine-overlap", (holder, job_id), start,
                          min(busy_until, end) - start, machine)
            )
        if busy_until is None or end > busy_until:
            busy_until, holder = end, job_id
    return found


def validate_schedule(instance: Instance, schedule: Schedule) -> ValidationReport:
    """Check machine exclusivity, per-job stage precedence and the storage limit."""
    jobs = _check_schedule(instance, schedule)
    violations: list[Violation] = []
    violations += _machine_overlaps(jobs, schedule, 1)
    violations += _machine_overlaps(jobs, schedule, 2)
    for job_id, (s1, s2) in schedule.starts.items():
        c1 = s1 + jobs[job_id].a
        if c1 > s2:
            violations.append(Violation("precedence", (job_id,), s2, c1 - s2))

    peak = Fraction(0)
    excess_open = False
    for t, occ, active in _sweep(jobs, schedule):
        peak = max(peak, occ)
        over = occ - instance.omega
        if over > 0:
            if not excess_open:
                violations.append(Violation("buffer-capacity", tuple(active), t, over))
            elif over > violations[-1].amount:
                prev = violations[-1]
                violations[-1] = Violation(prev.kind, prev.jobs, prev.time, over)
            excess_open = True
        else:
            excess_open = False
    return ValidationReport(tuple(violations), peak)


def makespan(instance: Instance, schedule: Schedule) -> Fraction:
    jobs = _check_schedule(instance, schedule)
    return max((s2 + jobs[i].b for i, (_, s2) in schedule.starts.items()), default=Fraction(0))


def greedy_times(a: Sequence, b: Sequence, omega, order: Sequence[int]):
    """Left-shifted same-order timing with the storage limit.

    Works on any exact numeric type (ints for the oracle's hot loop, Fractions
    otherwise).  Returns parallel lists ``s1, s2`` indexed like ``order``.
    Earlier jobs finish on M2 in sequence order, so the jobs still holding
    storage form a queue that only ever shrinks from the front.
    """
    s1_out, s2_out = [], []
    holders: deque = deque()  # (c2, a) of earlier jobs, c2 non-decreasing
    held = 0
    c1_prev = 0
    c2_prev = 0
    for j in order:
        aj, bj = a[j], b[j]
        t = c1_prev
        while holders and holders[0][0] <= t:
            held -= holders.popleft()[1]
        while held + aj > omega:
            t = holders[0][0]
            while holders and holders[0][0] <= t:
                held -= holders.popleft()[1]
        c1 = t + aj
        s2 = c1 if c1 > c2_prev else c2_prev
        c2 = s2 + bj
        s1_out.append(t)
        s2_out.append(s2)
        holders.append((c2, aj))
        held += aj
        c1_prev, c2_prev = c1, c2
    return s1_out, s2_out


def earliest_start_timing(instance: Instance, order: Sequence[Hashable]) -> Schedule:
    """Time a permutation schedule as early as machines and storage allow."""
    jobs = instance.by_id
    if sorted(map(id_key, order)) != sorted(map(id_key, jobs)) or len(set(order)) != len(order):
        raise ScheduleError("order must be a permutation of the instance's job ids")
    seq = [jobs[i] for i in order]
    if any(j.a > instance.omega for j in seq):
        raise CapacityError("some job can never fit in the buffer")
    s1, s2 = greedy_times([j.a for j in seq], [j.b for j in seq], instance.omega, range(len(seq)))
    return Schedule({j.id: (Fraction(x), Fraction(y)) for j, x, y in zip(seq, s1, s2)})


def scale_factor(values: Iterable[Fraction]) -> int:
    """Smallest positive integer turning every value into an integer."""
    return math.lcm(1, *{v.denominator for v in values})
