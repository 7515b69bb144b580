"""Run the acceptance criteria outside pytest and print one line per criterion.

    python scripts/run_acceptance.py            # all fourteen
    python scripts/run_acceptance.py 4 9        # selected criteria
    python scripts/run_acceptance.py --scale 0.2
"""

import argparse
import dataclasses
import sys

from derivk.acceptance import CRITERIA
from derivk.config import AcceptanceConfig

COUNTS = ("cone_maps", "squares", "pasting", "bp_morphisms", "rotation", "octahedra", "cof_cubed",
          "coxeter_inputs", "orientation_reps", "serre_reps", "weight_cases", "unit_posets", "tilting_roundtrips", "tilting_direct",
          "cubes")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("which", nargs="*", type=int, help="criterion numbers (default: all)")
    ap.add_argument("--scale", type=float, default=1.0, help="multiply every case count (smoke runs)")
    args = ap.parse_args(argv)
    cfg = AcceptanceConfig()
    if args.scale != 1.0:
        cfg = dataclasses.replace(cfg, **{k: max(1, round(getattr(cfg, k) * args.scale)) for k in COUNTS})
    chosen = args.which or range(1, len(CRITERIA) + 1)
    ok = True
    for n in chosen:
        res = CRITERIA[n - 1](cfg)
        print(res.line())
        for note in res.notes:
            print("    " + note)
        ok &= res.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
