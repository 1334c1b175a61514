"""Auxiliary jobs that balance both machine loads to the Johnson makespan.

Zero-``a`` jobs (set X) fill the second machine's idle time and are placed
first; zero-``b`` jobs (set Y) fill the first machine's idle time and go last.
Both sets can be far larger than the instance when ``a_max`` and ``b_max``
differ a lot, so they are kept as a count plus a common duration and only
materialised on request.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable

from .johnson import JohnsonResult, johnson
from .model import AuxId, Instance, Job


class DegenerateInstance(ValueError):
    """All first-stage or all second-stage times are zero; no extension is needed."""


@dataclass(frozen=True)
class ExtendedInstance:
    original: Instance
    johnson: JohnsonResult
    x_count: int
    x_b: Fraction  # second-stage time of every X job
    y_count: int
    y_a: Fraction  # first-stage time of every Y job
    a_max: Fraction
    b_max: Fraction

    @property
    def n_prime(self) -> int:
        return len(self.original) + self.x_count + self.y_count

    @property
    def x_jobs(self) -> list[Job]:
        return [Job(AuxId("x", k), 0, self.x_b) for k in range(1, self.x_count + 1)]

    @property
    def y_jobs(self) -> list[Job]:
        return [Job(AuxId("y", k), self.y_a, 0) for k in range(1, self.y_count + 1)]

    @property
    def sigma_prime_order(self) -> list[Hashable]:
        return (
            [AuxId("x", k) for k in range(1, self.x_count + 1)]
            + list(self.johnson.order)
            + [AuxId("y", k) for k in range(1, self.y_count + 1)]
        )

    def jobs(self) -> list[Job]:
        """All jobs of the extended set in the extended Johnson order."""
        real = self.original.by_id
        return self.x_jobs + [real[i] for i in self.johnson.order] + self.y_jobs

    def as_instance(self) -> Instance:
        return Instance(tuple(self.jobs()), self.original.omega)


def build_extension(instance: Instance) -> ExtendedInstance:
    if not instance.jobs:
        raise DegenerateInstance("empty instance")
    a_max, b_max = instance.a_max, instance.b_max
    if a_max == 0 or b_max == 0:
        raise DegenerateInstance("a_max or b_max is zero")
    jr = johnson(instance)
    x_count = math.ceil(jr.idle2 / b_max)
    y_count = math.ceil(jr.idle1 / a_max)
    x_b = jr.idle2 / x_count if x_count else Fraction(0)
    y_a = jr.idle1 / y_count if y_count else Fraction(0)
    return ExtendedInstance(instance, jr, x_count, x_b, y_count, y_a, a_max, b_max)
