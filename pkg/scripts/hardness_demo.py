"""Build partition-based instances, decide the partition, and certify yes-instances.

For each sampled instance the script prints the premise checks and, when a
witness exists, the makespan and peak storage of the witness schedule.
"""

import argparse
import random

from buffershop.hardness import ReductionSpec, build_reduction, build_yes_schedule, check_premises, sample_values
from buffershop.model import makespan, validate_schedule
from buffershop.oracle import subset_sum_exists


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--E", type=int, default=720)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = random.Random(args.seed)
    for k in range(args.count):
        spec = ReductionSpec(args.m, sample_values(args.m, args.E, rng), args.E)
        inst, target = build_reduction(spec)
        failed = [name for name, ok in check_premises(spec).checks.items() if not ok]
        yes, witness = subset_sum_exists(spec.e, spec.E)
        line = f"#{k} e={','.join(map(str, spec.e))} capacity={inst.omega} target={target}"
        if failed:
            line += f" premises failing: {','.join(failed)}"
        if yes:
            sched = build_yes_schedule(spec, witness)
            report = validate_schedule(inst, sched)
            line += f" | yes: makespan {makespan(inst, sched)}, peak {report.peak_occupancy}, feasible {report.feasible}"
        else:
            line += " | no partition"
        print(line)


if __name__ == "__main__":
    main()
