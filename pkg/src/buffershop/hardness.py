"""Scheduling instances built from partition inputs.

From ``2m`` integers ``e_k`` with ``sum e = 2E`` and ``E/(m+1) < e_k < E/(m-1)``
we build ``2m + 4`` jobs whose storage capacity is below ``4E`` but whose
processing times stay within a ``4/(1+delta)`` fraction of it.  A schedule of
makespan ``(2m+3)E`` exists exactly when some index set of the ``e_k`` sums
to ``E``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .model import Instance, Job, Schedule


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionSpec:
    m: int
    e: tuple[int, ...]
    E: int
    delta: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "e", tuple(int(v) for v in self.e))
        object.__setattr__(self, "delta", Fraction(self.delta))

    @classmethod
    def from_values(cls, e: Sequence[int], delta=Fraction(1)) -> "ReductionSpec":
        if len(e) % 2:
            raise ReductionError("need an even number of values")
        total = sum(e)
        if total % 2:
            raise ReductionError("values must sum to an even number 2E")
        return cls(len(e) // 2, tuple(e), total // 2, Fraction(delta))

    @property
    def lower(self) -> Fraction:
        return Fraction(self.E, self.m + 1)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.E, self.m - 1)

    @property
    def omega(self) -> Fraction:
        return 4 * self.E * (1 - Fraction(1, self.m - 1))

    @property
    def target(self) -> int:
        return (2 * self.m + 3) * self.E

    def regular_id(self, k: int) -> int:
        """Job id of the regular job carrying ``e[k]`` (``k`` 0-based)."""
        return k + 1

    @property
    def special_ids(self) -> tuple[int, int, int]:
        n = 2 * self.m
        return (n + 1, n + 2, n + 3)


def _structural_errors(spec: ReductionSpec) -> list[str]:
    errors = []
    if spec.m < 2:
        errors.append("m must be at least 2")
        return errors
    if len(spec.e) != 2 * spec.m:
        errors.append(f"expected {2 * spec.m} values, got {len(spec.e)}")
    if sum(spec.e) != 2 * spec.E:
        errors.append(f"values sum to {sum(spec.e)}, not 2E = {2 * spec.E}")
    bad = [v for v in spec.e if not spec.lower < v < spec.upper]
    if bad:
        errors.append(f"values {bad} outside the open interval ({spec.lower}, {spec.upper})")
    return errors


def build_reduction(spec: ReductionSpec) -> tuple[Instance, int]:
    """Return the instance and the makespan threshold ``(2m+3)E``."""
    errors = _structural_errors(spec)
    if errors:
        raise ReductionError("; ".join(errors))
    E = spec.E
    jobs = [Job(0, 0, E)]
    jobs += [Job(spec.regular_id(k), E, E + v) for k, v in enumerate(spec.e)]
    jobs += [Job(i, E, 0) for i in spec.special_ids]
    return Instance(tuple(jobs), spec.omega), spec.target


def yes_sequence(spec: ReductionSpec, witness: Sequence[int]) -> list[int]:
    """Job order ``0, K, first special, rest, two specials`` for a witness ``K`` (0-based indices)."""
    inside = sorted(set(witness))
    if sum(spec.e[k] for k in inside) != spec.E or len(inside) != len(witness):
        raise ReductionError("witness does not sum to E")
    outside = [k for k in range(len(spec.e)) if k not in set(inside)]
    first, second, third = spec.special_ids
    return (
        [0]
        + [spec.regular_id(k) for k in inside]
        + [first]
        + [spec.regular_id(k) for k in outside]
        + [second, third]
    )


def build_yes_schedule(spec: ReductionSpec, witness: Sequence[int]) -> Schedule:
    """Zero-idle schedule reaching the threshold when ``witness`` sums to ``E``."""
    instance, _ = build_reduction(spec)
    jobs = instance.by_id
    starts = {}
    load1 = load2 = Fraction(0)
    for job_id in yes_sequence(spec, witness):
        starts[job_id] = (load1, load2)
        load1 += jobs[job_id].a
        load2 += jobs[job_id].b
    return Schedule(starts)


@dataclass(frozen=True)
class PremiseReport:
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(self.checks.values())


def check_premises(spec: ReductionSpec) -> PremiseReport:
    E, m = spec.E, spec.m
    checks = {
        "sum": sum(spec.e) == 2 * E and len(spec.e) == 2 * m,
        "bounds": bool(spec.e) and m >= 2 and all(spec.lower < v < spec.upper for v in spec.e),
    }
    checks["m_large"] = m >= max(2 * (1 + 1 / spec.delta), 8)
    if m >= 2:
        omega = spec.omega
        largest = max([E] + [E + v for v in spec.e])
        checks["size_ratio"] = Fraction(4) / (1 + spec.delta) * largest <= omega
        checks["three_fit"] = 3 * E <= omega
        checks["four_exceed"] = 4 * E > omega
        loads_equal = (2 * m + 3) * E == E + sum(E + v for v in spec.e)
        checks["balanced_loads"] = loads_equal
    return PremiseReport(checks)


def any_three_fit(instance: Instance) -> bool:
    """Every triple of jobs fits in storage together (checked on the three largest)."""
    top = sorted((j.a for j in instance.jobs), reverse=True)[:3]
    return sum(top) <= instance.omega


def four_regular_exceed(instance: Instance) -> bool:
    """No four jobs with positive storage fit together."""
    positive = sorted((j.a for j in instance.jobs if j.a > 0))[:4]
    return len(positive) < 4 or sum(positive) > instance.omega


def brute_force_triples(instance: Instance) -> bool:
    return all(x.a + y.a + z.a <= instance.omega for x, y, z in combinations(instance.jobs, 3))


def sample_values(m: int, E: int, rng: random.Random, max_tries: int = 100_000) -> tuple[int, ...]:
    """Draw ``2m`` integers uniformly inside the open bounds, resampling until they sum to ``2E``."""
    lo = E // (m + 1) + 1
    hi = -(-E // (m - 1)) - 1
    if lo > hi:
        raise ReductionError(f"no integer strictly between {E}/{m + 1} and {E}/{m - 1}")
    for _ in range(max_tries):
        e = tuple(rng.randint(lo, hi) for _ in range(2 * m))
        if sum(e) == 2 * E:
            return e
    raise ReductionError(f"no valid sample after {max_tries} tries; try a larger E")
