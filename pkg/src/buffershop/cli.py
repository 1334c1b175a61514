"""Command-line interface.

Exit codes: 0 ok, 2 parse error, 3 precondition not met, 4 infeasible
schedule, 5 instance too large for the oracle.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import fileio, gantt
from .bench import BenchConfig, format_table, run_bench
from .fileio import ParseError
from .generate import RandomInstanceConfig, random_instance
from .hardness import ReductionError, ReductionSpec, build_reduction, check_premises, sample_values
from .johnson import johnson
from .model import CapacityError, makespan, validate_schedule
from .oracle import InstanceTooLarge, best_permutation
from .solver import (
    ConditionNotMet,
    check_condition5,
    check_corollary,
    condition5_rhs,
    solve_detailed,
)

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INFEASIBLE, EXIT_TOO_LARGE = 0, 2, 3, 4, 5

fmt = fileio.encode_number


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _print_report(report, out) -> None:
    print(f"feasible: {_yes(report.feasible)}", file=out)
    for v in report.violations:
        machine = f" on M{v.machine}" if v.machine else ""
        jobs = ", ".join(map(str, v.jobs))
        print(f"  {v.kind}{machine} at t={fmt(v.time)} by {fmt(v.amount)} (jobs {jobs})", file=out)
    print(f"peak buffer: {fmt(report.peak_occupancy)}", file=out)


def cmd_solve(args, out) -> int:
    instance = fileio.load_instance(args.instance)
    rhs = condition5_rhs(instance.a_max, instance.b_max)
    print(f"jobs: {len(instance)}  capacity: {fmt(instance.omega)}", file=out)
    print(f"capacity condition (needs >= {fmt(rhs)}): {_yes(check_condition5(instance))}", file=out)
    print(f"corollary condition (needs >= {fmt(Fraction(9, 2) * max(instance.a_max, instance.b_max))}): "
          f"{_yes(check_corollary(instance))}", file=out)
    try:
        sol = solve_detailed(instance, method=args.method)
    except ConditionNotMet as exc:
        print(f"johnson bound: {fmt(exc.johnson_bound)}", file=out)
        print("condition-not-met: capacity too small for the guaranteed-optimal algorithm", file=out)
        return EXIT_PRECONDITION
    span = makespan(instance, sol.schedule)
    report = validate_schedule(instance, sol.schedule)
    print(f"johnson bound: {fmt(sol.johnson_bound)}", file=out)
    relation = "=" if span == sol.johnson_bound else ">"
    print(f"makespan {fmt(span)} {relation} johnson bound {fmt(sol.johnson_bound)}", file=out)
    print(f"peak buffer: {fmt(report.peak_occupancy)}", file=out)
    if sol.extended is not None:
        print(f"auxiliary jobs: {sol.extended.x_count} x, {sol.extended.y_count} y "
              f"({sol.run.x_batches} x runs, {sol.run.y_batches} y runs)", file=out)
    if args.emit:
        fileio.dump_schedule(instance, sol.schedule, args.emit, instance_path=str(args.instance))
        print(f"schedule written to {args.emit}", file=out)
    if not report.feasible:
        _print_report(report, out)
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_validate(args, out) -> int:
    instance = fileio.load_instance(args.instance)
    schedule = fileio.load_schedule(args.schedule, instance)
    report = validate_schedule(instance, schedule)
    _print_report(report, out)
    print(f"makespan: {fmt(makespan(instance, schedule))}", file=out)
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_oracle(args, out) -> int:
    instance = fileio.load_instance(args.instance)
    try:
        res = best_permutation(instance, limit=args.limit)
    except InstanceTooLarge as exc:
        print(str(exc), file=out)
        return EXIT_TOO_LARGE
    print(f"best makespan {fmt(res.best_makespan)}", file=out)
    print(f"best order: {' '.join(map(str, res.best_order))}", file=out)
    print(f"explored {res.explored} orders ({res.scope})", file=out)
    print(f"johnson bound: {fmt(johnson(instance).cmax)}", file=out)
    if args.emit:
        fileio.dump_schedule(instance, res.best_schedule, args.emit, instance_path=str(args.instance))
    return EXIT_OK


def cmd_gen(args, out) -> int:
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**32)
    if args.hardness:
        if args.e:
            spec = ReductionSpec.from_values([int(v) for v in args.e.split(",")])
            if args.m is not None and args.m != spec.m:
                raise ReductionError(f"--m {args.m} does not match {2 * spec.m} values")
            if args.E is not None and args.E != spec.E:
                raise ReductionError(f"--E {args.E} but the values sum to {2 * spec.E}")
        else:
            if args.m is None or args.E is None:
                raise ReductionError("--hardness needs --e or both --m and --E")
            spec = ReductionSpec(args.m, sample_values(args.m, args.E, random.Random(seed)), args.E)
        instance, target = build_reduction(spec)
        info = [f"seed: {seed}", f"m={spec.m} E={spec.E} e={','.join(map(str, spec.e))}",
                f"capacity {fmt(instance.omega)}, target makespan {target}"]
        info += [f"{name}: {'pass' if ok else 'fail'}" for name, ok in check_premises(spec).checks.items()]
    else:
        omega = args.omega
        if omega not in ("condition5", "total"):
            omega = fileio.decode_number(omega, "--omega")
        cfg = RandomInstanceConfig(n=args.n, a_high=args.a_high, b_high=args.b_high, omega=omega, seed=seed)
        instance = random_instance(cfg)
        info = [f"seed: {seed}", f"n={cfg.n} a in [0,{cfg.a_high}] b in [0,{cfg.b_high or cfg.a_high}] "
                                 f"capacity {fmt(instance.omega)}"]
    text = fileio.dump_instance(instance, args.output)
    if args.output:
        print("\n".join(info), file=out)
        print(f"instance written to {args.output}", file=out)
    else:
        out.write(text)
        print("\n".join(info), file=sys.stderr)
    return EXIT_OK


def cmd_gantt(args, out) -> int:
    instance = fileio.load_instance(args.instance)
    schedule = fileio.load_schedule(args.schedule, instance)
    text = gantt.render_svg(instance, schedule) if args.svg else gantt.render_ascii(instance, schedule)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    cfg = BenchConfig(
        sizes=tuple(int(s) for s in args.sizes.split(",")),
        trials=args.trials, a_high=args.a_high, ratio=args.ratio, seed=args.seed, workers=args.workers,
    )
    print(f"seed: {cfg.seed}  trials: {cfg.trials}  b/a ratio: {cfg.ratio}", file=out)
    print(format_table(run_bench(cfg)), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="buffershop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal schedule under the large-capacity condition")
    p.add_argument("instance")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--aggregated", dest="method", action="store_const", const="aggregated")
    group.add_argument("--reference", dest="method", action="store_const", const="reference")
    p.set_defaults(method="aggregated", func=cmd_solve)
    p.add_argument("--emit", metavar="SCHEDULE_FILE")

    p = sub.add_parser("validate", help="check a schedule file against its instance")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="exhaustive search over permutation schedules")
    p.add_argument("instance")
    p.add_argument("--limit", type=int, default=8)
    p.add_argument("--emit", metavar="SCHEDULE_FILE")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="random or partition-based instance")
    p.add_argument("--hardness", action="store_true")
    p.add_argument("--m", type=int)
    p.add_argument("--E", type=int)
    p.add_argument("--e", help="comma-separated partition values")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--a-high", type=int, default=100)
    p.add_argument("--b-high", type=int)
    p.add_argument("--omega", default="condition5", help="condition5, total, or a number")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("gantt", help="render a schedule")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--svg", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gantt)

    p = sub.add_parser("bench", help="solver wall time over a size sweep")
    p.add_argument("--sizes", default="25000,50000,100000,200000")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--a-high", type=int, default=100)
    p.add_argument("--ratio", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ParseError, ReductionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
