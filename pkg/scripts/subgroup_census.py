#!/usr/bin/env python3
"""Count subgroups of (Z/n)^t and time the enumerator.

Useful when tuning the enumeration budget: the element count n^t is
what the budget guards, but the subgroup count is what drives the
oracle's actual cost.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from crystor.abelian import enumerate_subgroups


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-elements", type=int, default=1 << 16,
                    help="skip pairs with n^t beyond this")
    args = ap.parse_args()

    pairs = [(n, t)
             for t in (1, 2, 3, 4)
             for n in (2, 3, 4, 5, 8, 9, 16, 25, 27, 32, 64)
             if n ** t <= args.max_elements]
    print(f"{'n':>4} {'t':>2} {'n^t':>8} {'subgroups':>10} {'seconds':>8}")
    for n, t in pairs:
        start = time.perf_counter()
        subs = enumerate_subgroups(n, t, budget=args.max_elements)
        elapsed = time.perf_counter() - start
        print(f"{n:>4} {t:>2} {n ** t:>8} {len(subs):>10} {elapsed:>8.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
