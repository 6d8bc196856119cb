#!/usr/bin/env python3
"""Independent brute-force checks used to freeze expected test values.

Nothing here imports the package: Smith forms come from sympy, kernels
from exhaustive search, subgroup counts from closure enumeration.  Run
it before trusting a constant in the test suite.
"""

import itertools
import sys

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf


def snf_diag(rows):
    m = sympy_snf(Matrix(rows))
    return [int(m[i, i]) for i in range(min(m.shape))]


def kernel_mod_n_brute(rows, n):
    """All x in (Z/n)^t with M x = 0 mod n."""
    t = len(rows[0])
    out = []
    for x in itertools.product(range(n), repeat=t):
        if all(sum(r[j] * x[j] for j in range(t)) % n == 0 for r in rows):
            out.append(x)
    return out


def abelian_type(elements, n, p):
    """Invariant factors of a subgroup of (Z/p^m)^t from torsion counts."""
    elems = set(elements)
    counts = []
    q = 1
    while True:
        c = sum(1 for e in elems if all((q * x) % n == 0 for x in e))
        counts.append(c)
        if c == len(elems):
            break
        q *= p
    # counts[k] = p^{sum min(lambda_i, k)}
    logs = []
    for c in counts:
        e = 0
        while p ** e < c:
            e += 1
        assert p ** e == c, "not a p-group"
        logs.append(e)
    mults = {}
    for k in range(1, len(logs)):
        at_least_k = logs[k] - logs[k - 1]
        at_least_k1 = logs[k + 1] - logs[k] if k + 1 < len(logs) else 0
        if at_least_k - at_least_k1:
            mults[k] = at_least_k - at_least_k1
    factors = []
    for k in sorted(mults):
        factors += [p ** k] * mults[k]
    return sorted(factors)


def subgroups_by_closure(n, t):
    """Every subgroup of (Z/n)^t as a frozenset, by closure saturation."""
    elements = list(itertools.product(range(n), repeat=t))

    def close(gens):
        elems = {(0,) * t}
        frontier = list(gens)
        while frontier:
            g = frontier.pop()
            new = {tuple((a + b) % n for a, b in zip(e, g)) for e in elems}
            fresh = new - elems
            elems |= fresh
            frontier.extend(fresh)
        # saturate under addition
        while True:
            more = {tuple((a + b) % n for a, b in zip(x, y))
                    for x in elems for y in elems} - elems
            if not more:
                return frozenset(elems)
            elems |= more

    subs = {close([])}
    frontier = [close([])]
    while frontier:
        s = frontier.pop()
        for g in elements:
            if g in s:
                continue
            bigger = close(list(s) + [g])
            if bigger not in subs:
                subs.add(bigger)
                frontier.append(bigger)
    return subs


def main():
    print("SNF diagonals")
    print("  [[2,1],[1,2]] ->", snf_diag([[2, 1], [1, 2]]))
    print("  [[2,0],[0,4]] ->", snf_diag([[2, 0], [0, 4]]))
    print("  [[5]]         ->", snf_diag([[5]]))
    print("  [[12]]        ->", snf_diag([[12]]))

    print("kernels mod n")
    ker = kernel_mod_n_brute([[2, 0], [0, 4]], 4)
    print("  [[2,0],[0,4]] mod 4: order", len(ker),
          "type", abelian_type(ker, 4, 2))
    ker = kernel_mod_n_brute([[2, 1], [1, 2]], 3)
    print("  [[2,1],[1,2]] mod 3: order", len(ker), "elements", sorted(ker))
    ker = kernel_mod_n_brute([[5]], 25)
    print("  [[5]] mod 25: order", len(ker), "elements", sorted(ker))

    print("subgroup counts")
    for (n, t) in [(2, 1), (4, 1), (2, 2), (3, 2), (4, 2), (2, 3), (8, 2),
                   (4, 3), (9, 2), (3, 3)]:
        print(f"  ({n},{t}) ->", len(subgroups_by_closure(n, t)))

    print("crys order law spot checks")
    # |Crys1| = n^t * |ker(mu mod n)|
    for rows, p, m in [([[2, 0], [0, 4]], 2, 2), ([[2, 1], [1, 2]], 3, 1)]:
        n = p ** m
        t = len(rows)
        ker = kernel_mod_n_brute(rows, n)
        print(f"  mu={rows} p={p} m={m}: order {n**t * len(ker)}",
              "ker type", abelian_type(ker, n, p))
    return 0


if __name__ == "__main__":
    sys.exit(main())
