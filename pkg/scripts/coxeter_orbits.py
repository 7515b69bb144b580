"""Iterate the Coxeter functor on random A_n representations.

Prints the barcode after each step and the first power k for which the
barcode of Φ^k x equals that of a pointwise shift of x (searching shifts in
[-2k, 2k]). Useful for eyeballing fractional periodicity on small quivers.

Complexes roughly quadruple in size under each application, so by default
every iterate is replaced by the interval-module model with the same barcode
(isomorphic over A_n); pass --no-formal to keep the raw iterates.
"""

import argparse

from derivk.linalg import Field
from derivk.quivers import AnOrientation, barcode, barcode_rep, coxeter_plus, shift_rep
from derivk.reps import random_rep


def fmt(bars) -> str:
    return " ".join(f"{deg}:[{i},{j}]x{m}" for (deg, i, j), m in sorted(bars.items())) or "0"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("orientation", help="arrow string such as '>>' or '<>'")
    ap.add_argument("--steps", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--field", default="Fp:32003")
    ap.add_argument("--max-dim", type=int, default=2)
    ap.add_argument("--amplitude", type=int, default=1)
    ap.add_argument("--model", choices=["kan", "cone"], default="cone")
    ap.add_argument("--no-formal", dest="formal", action="store_false")
    args = ap.parse_args()

    q = AnOrientation.parse(args.orientation)
    x = random_rep(q.poset(), args.max_dim, args.amplitude, seed=args.seed, field=Field.parse(args.field))
    shifts = {}
    cur = x
    print(f"0: {fmt(barcode(q, x))}")
    found = None
    for k in range(1, args.steps + 1):
        cur = coxeter_plus(q, cur, model=args.model)
        bars = barcode(q, cur)
        if args.formal:
            cur = barcode_rep(q, bars, cur.field)
        print(f"{k}: {fmt(bars)}")
        if found is None and bars:
            for s in range(-2 * k, 2 * k + 1):
                if s not in shifts:
                    shifts[s] = barcode(q, shift_rep(x, s))
                if shifts[s] == bars:
                    found = (k, s)
                    break
    if found:
        print(f"Φ^{found[0]} x has the barcode of x shifted by {found[1]}")
    else:
        print("no shift of x reached within the given steps")


if __name__ == "__main__":
    main()
