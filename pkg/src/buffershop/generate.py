"""Seeded random instances."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .model import Instance
from .solver import condition5_rhs


@dataclass(frozen=True)
class RandomInstanceConfig:
    """Integer ``a`` uniform on ``[0, a_high]`` and ``b`` on ``[0, b_high]``.

    ``omega`` is either ``"condition5"`` (smallest integer meeting the
    large-capacity condition), ``"total"`` (every job fits at once) or an
    explicit value.
    """

    n: int
    a_high: int = 100
    b_high: int | None = None
    omega: str | int | Fraction = "condition5"
    seed: int = 0


def random_pairs(n: int, a_high: int, b_high: int, rng: random.Random) -> list[tuple[int, int]]:
    pairs = [(rng.randint(0, a_high), rng.randint(0, b_high)) for _ in range(n)]
    if n and a_high > 0 and all(a == 0 for a, _ in pairs):
        k = rng.randrange(n)
        pairs[k] = (rng.randint(1, a_high), pairs[k][1])
    return pairs


def omega_for(pairs, mode) -> Fraction:
    a_max = max((a for a, _ in pairs), default=0)
    b_max = max((b for _, b in pairs), default=0)
    if mode == "condition5":
        return Fraction(math.ceil(condition5_rhs(a_max, b_max)))
    if mode == "total":
        return Fraction(max(sum(a for a, _ in pairs), a_max))
    return Fraction(mode)


def random_instance(config: RandomInstanceConfig) -> Instance:
    rng = random.Random(config.seed)
    b_high = config.a_high if config.b_high is None else config.b_high
    pairs = random_pairs(config.n, config.a_high, b_high, rng)
    return Instance.from_pairs(pairs, omega_for(pairs, config.omega))
