"""Wall-time scaling of the aggregated solver."""

from __future__ import annotations

import gc
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .generate import RandomInstanceConfig, random_instance
from .solver import solve_detailed


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple[int, ...] = (25_000, 50_000, 100_000, 200_000)
    trials: int = 5
    a_high: int = 100
    ratio: int = 50  # b_high = ratio * a_high
    seed: int = 0
    workers: int = 1


@dataclass(frozen=True)
class BenchRow:
    n: int
    median_seconds: float
    times: tuple[float, ...]
    x_count: int
    y_count: int
    x_batches: int
    y_batches: int


def time_solve(instance) -> tuple[float, object]:
    # collector paused as timeit does, so collection passes over unrelated
    # heap objects do not distort the scaling measurement
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        start = time.perf_counter()
        solution = solve_detailed(instance)
        elapsed = time.perf_counter() - start
    finally:
        if was_enabled:
            gc.enable()
    return elapsed, solution


def paired_medians(sizes: tuple[int, ...], trials: int, cfg: BenchConfig) -> dict[int, float]:
    """Median solve time over ``trials`` fresh instances per size.

    Sizes alternate trial by trial, in reversed order every other trial, so
    drift in machine speed hits every size alike.  One untimed warm-up solve
    at the largest size comes first, so the allocator already holds enough
    memory for every size and no size pays for fresh page faults that the
    others avoid.
    """
    def make(n, trial):
        return random_instance(RandomInstanceConfig(
            n=n, a_high=cfg.a_high, b_high=cfg.ratio * cfg.a_high, seed=cfg.seed * 1_000_003 + n + trial,
        ))

    time_solve(make(max(sizes), -1))
    times: dict[int, list[float]] = {n: [] for n in sizes}
    for trial in range(trials):
        for n in (sizes if trial % 2 == 0 else tuple(reversed(sizes))):
            inst = make(n, trial)
            elapsed, solution = time_solve(inst)
            del inst, solution
            times[n].append(elapsed)
    return {n: statistics.median(t) for n, t in times.items()}


def _one_size(args) -> BenchRow:
    n, cfg = args
    times, sol = [], None
    for trial in range(cfg.trials):
        inst = random_instance(RandomInstanceConfig(
            n=n, a_high=cfg.a_high, b_high=cfg.ratio * cfg.a_high, seed=cfg.seed * 1_000_003 + n + trial,
        ))
        elapsed, sol = time_solve(inst)
        times.append(elapsed)
    ext, run = sol.extended, sol.run
    return BenchRow(
        n, statistics.median(times), tuple(times),
        ext.x_count if ext else 0, ext.y_count if ext else 0,
        run.x_batches if run else 0, run.y_batches if run else 0,
    )


def run_bench(cfg: BenchConfig) -> list[BenchRow]:
    jobs = [(n, cfg) for n in cfg.sizes]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            return list(pool.map(_one_size, jobs))
    return [_one_size(j) for j in jobs]


def format_table(rows: list[BenchRow]) -> str:
    lines = [f"{'n':>9} {'median s':>9} {'|X|':>9} {'|Y|':>10} {'X runs':>7} {'Y runs':>7} {'ratio':>6}"]
    prev = None
    for r in rows:
        ratio = f"{r.median_seconds / prev.median_seconds:6.2f}" if prev else "     -"
        lines.append(f"{r.n:>9} {r.median_seconds:>9.3f} {r.x_count:>9} {r.y_count:>10} "
                     f"{r.x_batches:>7} {r.y_batches:>7} {ratio}")
        prev = r
    return "\n".join(lines)
