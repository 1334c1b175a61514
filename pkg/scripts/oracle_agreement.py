"""Compare the solver against exhaustive permutation search on small random instances.

Capacities are swept from the large-capacity threshold downwards to show where
the Johnson bound stops being reachable.
"""

import argparse
import math
import random
from fractions import Fraction

from buffershop.generate import random_pairs
from buffershop.johnson import johnson
from buffershop.model import Instance
from buffershop.oracle import best_permutation
from buffershop.solver import condition5_rhs


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = random.Random(args.seed)
    fractions = [Fraction(k, 4) for k in range(4, 0, -1)]
    reached = {f: 0 for f in fractions}
    for _ in range(args.instances):
        pairs = random_pairs(args.n, 20, 20, rng)
        a_max = max(a for a, _ in pairs)
        rhs = condition5_rhs(a_max, max(b for _, b in pairs))
        for f in fractions:
            inst = Instance.from_pairs(pairs, max(a_max, math.ceil(rhs * f)))
            reached[f] += best_permutation(inst).best_makespan == johnson(inst).cmax
    print("capacity / threshold   instances reaching the Johnson bound")
    for f in fractions:
        print(f"{str(f):>20}   {reached[f]}/{args.instances}")


if __name__ == "__main__":
    main()
