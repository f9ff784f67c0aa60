#!/usr/bin/env python3
"""Randomized agreement experiment for the two positivity checks.

Samples rational conewise linear functions on the shipped fans and
compares the strict-convexity LP verdict with the effective-curve
pairing verdict, stratum by stratum.  Any disagreement would be a
counterexample to the numerical criterion; the script reports counts.
"""

import argparse
import pathlib
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from tropfan.cli import load_fan_file
from tropfan.criteria import is_ample, kleiman_check
from tropfan.fan import ConewiseLinear

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--fans", nargs="*", default=["p2", "delta", "u23"])
    args = parser.parse_args()

    rng = random.Random(args.seed)
    start = time.time()
    for name in args.fans:
        fan, _, _ = load_fan_file(str(ROOT / "fans" / f"{name}.json"))
        ample_count = 0
        disagreements = 0
        for _ in range(args.trials):
            f = ConewiseLinear(
                [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in fan.rays]
            )
            a = is_ample(fan, f)
            k = kleiman_check(fan, f)
            ample_count += a
            disagreements += a != k
        print(
            f"{fan.name:8s} trials={args.trials} ample={ample_count} "
            f"disagreements={disagreements}"
        )
        if disagreements:
            return 1
    print(f"total time {time.time() - start:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
