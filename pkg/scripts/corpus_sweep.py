#!/usr/bin/env python3
"""Sweep the shipped corpus: component group, maximal submodule per
level, and stable torsion for every input file, as one table."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from crystor.cli import parse_input
from crystor.crys import component_group, crys1_torsion, r1crys1_tors

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpus", default=str(ROOT / "corpus"),
                    help="directory of input files")
    ap.add_argument("--max-m", type=int, default=3)
    args = ap.parse_args()

    files = sorted(Path(args.corpus).glob("*.txt"))
    if not files:
        print(f"no input files under {args.corpus}", file=sys.stderr)
        return 1
    for path in files:
        data = parse_input(path.read_text())
        phi = component_group(data)
        levels = ", ".join(
            f"m={m}: {crys1_torsion(data, m).group}"
            for m in range(1, args.max_m + 1)
        )
        cap = max(12, phi.order.bit_length() + 2)
        stable = r1crys1_tors(data, cap=cap)
        print(f"{path.name}")
        print(f"  p = {data.p}, t = {data.t}, component group {phi}")
        print(f"  crys1 {levels}")
        print(f"  stable torsion {stable}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
