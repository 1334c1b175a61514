"""Wall time of the aggregated solver over a size sweep (b/a ratio 50 by default)."""

import argparse

from buffershop.bench import BenchConfig, format_table, run_bench


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", default="25000,50000,100000,200000")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--ratio", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    cfg = BenchConfig(
        sizes=tuple(int(s) for s in args.sizes.split(",")),
        trials=args.trials, ratio=args.ratio, seed=args.seed,
    )
    print(format_table(run_bench(cfg)))


if __name__ == "__main__":
    main()
