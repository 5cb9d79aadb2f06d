#!/usr/bin/env python3
"""Sweep the level-k Gauss-sum invariant against the modular-data trace
oracle over random hyperbolic classes and summarize modulus agreement and
the residual framing phases (always eighth roots of unity empirically).

Usage: python scripts/gauss_sum_sweep.py [--kmax 8] [--tmax 50] [--samples 100]
"""

import argparse
import collections
import random

from mti.bqf import classes_with_trace
from mti.csw import compare_with_rep_trace
from mti.sl2 import SL2_S, SL2_T, Sl2Matrix


def random_hyperbolic(rng, tmax):
    t = rng.randint(3, tmax) * rng.choice([1, -1])
    reps = classes_with_trace(t)
    m = reps[rng.randrange(len(reps))].matrix
    g = Sl2Matrix(1, 0, 0, 1)
    for _ in range(rng.randint(0, 4)):
        g = g * rng.choice([SL2_T, SL2_T.inverse(), SL2_S])
    return m.conjugate_by(g)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=8)
    ap.add_argument("--tmax", type=int, default=50)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    worst = 0.0
    phases = collections.Counter()
    zeros = 0
    for _ in range(args.samples):
        a = random_hyperbolic(rng, args.tmax)
        k = rng.randint(1, args.kmax)
        cmp_ = compare_with_rep_trace(a, k)
        worst = max(worst, cmp_.modulus_difference)
        if cmp_.phase_difference is None:
            zeros += 1
        else:
            phases[round(cmp_.phase_difference * 8) % 8] += 1

    print(f"{args.samples} samples, k <= {args.kmax}, |Tr| <= {args.tmax}")
    print(f"worst |gauss sum| vs |trace| difference: {worst:.3e}")
    print(f"vanishing values (phase undefined): {zeros}")
    print("framing phase distribution (eighths of a turn):")
    for eighth in sorted(phases):
        print(f"  {eighth}/8 turn: {phases[eighth]}")


if __name__ == "__main__":
    main()
