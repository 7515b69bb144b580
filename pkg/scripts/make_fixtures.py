"""Regenerate the bundled bimodule fixtures under src/derivk/fixtures."""

import argparse
from pathlib import Path

from derivk import bimodules as bm
from derivk.io import Workspace, save

OUT = Path(__file__).resolve().parent.parent / "src" / "derivk" / "fixtures"


NAMES = ("P0", "P1", "cone", "cof", "fib", "cofseq_constructor", "T_Q_A3", "T_A3_Q",
         "I_A1", "I_A3", "I_Q", "D_A2", "D_A3", "D_span")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in NAMES:
        ws = Workspace()
        ws.add(name, bm.named_bimodule(name))
        save(ws, args.out / f"{name}.json")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
