"""Sweep the rotation sign over fields, sizes and homological amplitudes.

For each setting, random morphisms are pushed through a Barratt-Puppe window
and the two identifications of the suspension are compared. The table lists
how often the ratio is minus the identity and how often naturality holds.
"""

import argparse
import time

from derivk.linalg import Field
from derivk.reps import random_morphism
from derivk.stable import rotation_sign_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fields", nargs="+", default=["Fp:32003", "Fp:2", "Q"])
    ap.add_argument("--dims", nargs="+", type=int, default=[1, 2, 3])
    ap.add_argument("--amplitudes", nargs="+", type=int, default=[1, 2, 3])
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'field':>9} {'dim':>3} {'amp':>3} {'-id':>5} {'natural':>7} {'sec':>6}")
    for name in args.fields:
        F = Field.parse(name)
        for d in args.dims:
            for a in args.amplitudes:
                t0 = time.perf_counter()
                minus = natural = 0
                for s in range(args.samples):
                    sc = rotation_sign_check(random_morphism(F, args.seed + s, d, a))
                    minus += sc.is_minus_identity
                    natural += sc.naturality
                dt = time.perf_counter() - t0
                print(f"{name:>9} {d:>3} {a:>3} {minus:>5} {natural:>7} {dt:>6.2f}")


if __name__ == "__main__":
    main()
