"""Exact integer linear algebra and finite abelian groups.

Everything in this module is exact: matrices hold arbitrary-precision
Python integers and finite abelian groups are kept in invariant-factor
form d_1 | d_2 | ... | d_k with every d_i >= 2 (the trivial group is the
empty list).  The workhorses are Smith normal form with its unimodular
transforms and a row-style Hermite normal form; on top of them sit
kernels, cokernels, torsion and primary parts, exactness tests, and an
exhaustive subgroup enumerator used by the brute-force oracles.

>>> snf = smith_normal_form(IntMatrix.from_rows([[2, 1], [1, 2]]))
>>> snf.D.as_rows()
((1, 0), (0, 3))
>>> str(cokernel(IntMatrix.from_rows([[2, 1], [1, 2]])))
'Z/3'
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce
from math import gcd

from .errors import (
    BadModulus,
    BudgetExceeded,
    NotPrime,
    ShapeMismatch,
    SingularMatrix,
)

DEFAULT_ENUM_BUDGET = 1 << 16
ENUM_BUDGET_ENV = "CRYSTOR_ENUM_BUDGET"


def enum_budget() -> int:
    """Element budget for subgroup enumeration, overridable via environment."""
    raw = os.environ.get(ENUM_BUDGET_ENV)
    if raw is None:
        return DEFAULT_ENUM_BUDGET
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_ENUM_BUDGET
    return value if value > 0 else DEFAULT_ENUM_BUDGET


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    """A rows x cols matrix of arbitrary-precision integers, row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        height = len(rows)
        width = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != width:
                raise ShapeMismatch("ragged rows")
        flat = tuple(int(x) for r in rows for x in r)
        return cls(height, width, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def as_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.row(i) for i in range(self.rows))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entry(i, j) for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)]) \
            if self.cols else IntMatrix(0, self.rows, ())

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch("inner dimensions disagree")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            out.append(
                [sum(ri[k] * other.entry(k, j) for k in range(self.cols))
                 for j in range(other.cols)]
            )
        return IntMatrix.from_rows(out) if out else IntMatrix(0, other.cols, ())

    def mod(self, n: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(x % n for x in self.entries))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entry(i, j) == self.entry(j, i)
            for i in range(self.rows) for j in range(i)
        )

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(self.row(i)) for i in range(n)]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self):
        return "[" + ", ".join(str(list(self.row(i))) for i in range(self.rows)) + "]"


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """U * M * V = D with U, V unimodular and D = diag(d_1 | d_2 | ...)."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        k = min(self.D.rows, self.D.cols)
        return tuple(self.D.entry(i, i) for i in range(k))


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Smith normal form with transforms.

    Pivoting rule: at each stage the pivot is the nonzero entry of the
    working submatrix with smallest absolute value, ties broken by
    row-major position.  The output is therefore deterministic.

    >>> r = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 4]]))
    >>> r.diagonal()
    (2, 4)
    >>> r = smith_normal_form(IntMatrix.from_rows([[2, 1], [1, 2]]))
    >>> r.diagonal()
    (1, 3)
    """
    if m.rows == 0 or m.cols == 0:
        raise ShapeMismatch("Smith normal form of an empty matrix")
    nr, nc = m.rows, m.cols
    a = [list(m.row(i)) for i in range(nr)]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for k in range(min(nr, nc)):
        # pick pivot: smallest |entry| != 0, row-major ties
        piv = None
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    piv, best = (i, j), abs(x)
        if piv is None:
            break
        if piv[0] != k:
            swap_rows(k, piv[0])
        if piv[1] != k:
            swap_cols(k, piv[1])
        while True:
            if a[k][k] < 0:
                a[k] = [-x for x in a[k]]
                u[k] = [-x for x in u[k]]
            d = a[k][k]
            # clear column k below the pivot
            dirty = False
            for i in range(k + 1, nr):
                if a[i][k]:
                    q = a[i][k] // d
                    if q:
                        add_row(i, k, -q)
                    if a[i][k]:  # 0 < remainder < d: it becomes the new pivot
                        swap_rows(k, i)
                        dirty = True
                        break
            if dirty:
                continue
            # clear row k right of the pivot
            for j in range(k + 1, nc):
                if a[k][j]:
                    q = a[k][j] // d
                    if q:
                        add_col(j, k, -q)
                    if a[k][j]:
                        swap_cols(k, j)
                        dirty = True
                        break
            if dirty:
                continue
            # enforce d | every remaining entry, else fold that row in
            offender = None
            for i in range(k + 1, nr):
                for j in range(k + 1, nc):
                    if a[i][j] % d:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(k, offender, 1)

    return SnfResult(
        IntMatrix.from_rows(u), IntMatrix.from_rows(a), IntMatrix.from_rows(v)
    )


# ---------------------------------------------------------------------------
# row-style Hermite normal form and lattice utilities
#
# Lattices are given by their generating rows.  hnf_rows returns the unique
# echelon basis with positive pivots and entries above each pivot reduced
# into [0, pivot); it is the canonical form used to compare subgroups.


def hnf_rows(rows, dim: int, aug: int = 0):
    """Canonical row HNF of the lattice spanned by ``rows`` in Z^dim.

    Each row may carry ``aug`` extra passenger columns that are combined
    along with it but take no part in pivoting; passing the identity
    there recovers the transform.  Returns a list of nonzero basis rows.
    """
    work = [list(r) for r in rows]
    basis = []  # finished rows, by increasing pivot column
    for col in range(dim):
        carrier = None
        rest = []
        for r in work:
            if r[col] == 0:
                rest.append(r)
                continue
            if carrier is None:
                carrier = r
                continue
            # Euclid on the two leading entries
            while r[col]:
                q = carrier[col] // r[col]
                if q:
                    for t in range(len(carrier)):
                        carrier[t] -= q * r[t]
                carrier, r = r, carrier
            rest.append(r)
        work = rest
        if carrier is not None:
            if carrier[col] < 0:
                carrier = [-x for x in carrier]
            basis.append(carrier)
    # reduce entries above each pivot
    for idx, row in enumerate(basis):
        pivot_col = next(c for c in range(dim) if row[c])
        for above in basis[:idx]:
            q = above[pivot_col] // row[pivot_col]
            if q:
                for t in range(len(row)):
                    above[t] -= q * row[t]
    return basis


def lattice_contains(basis, vec, dim: int) -> bool:
    """Membership of ``vec`` in the lattice with HNF basis ``basis``."""
    v = list(vec)
    pivots = {next(c for c in range(dim) if row[c]): row for row in basis}
    for col in range(dim):
        if v[col] == 0:
            continue
        row = pivots.get(col)
        if row is None or v[col] % row[col]:
            return False
        q = v[col] // row[col]
        for t in range(dim):
            v[t] -= q * row[t]
    return True


def lattice_solve(basis, vec, dim: int):
    """Coordinates of ``vec`` in the HNF basis, or None if not a member."""
    v = list(vec)
    coords = [0] * len(basis)
    pivot_of = [next(c for c in range(dim) if row[c]) for row in basis]
    for idx in range(len(basis)):
        col = pivot_of[idx]
        if v[col] == 0:
            continue
        if v[col] % basis[idx][col]:
            return None
        q = v[col] // basis[idx][col]
        coords[idx] = q
        for t in range(dim):
            v[t] -= q * basis[idx][t]
    return coords if not any(v) else None


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    n = m.rows
    aug = hnf_rows(
        [list(m.row(i)) + [1 if j == i else 0 for j in range(n)] for i in range(n)],
        n,
        aug=n,
    )
    # HNF of a unimodular matrix is the identity; passengers hold the inverse
    inv = [r[n:] for r in aug]
    return IntMatrix.from_rows(inv)


def quotient_orders(sup_basis, sub_rows, dim: int) -> list[int]:
    """Cyclic orders presenting (lattice of sup_basis) / (lattice of sub_rows).

    ``sup_basis`` must be a full-rank HNF basis whose lattice contains the
    span of ``sub_rows``.
    """
    coords = []
    for r in sub_rows:
        c = lattice_solve(sup_basis, r, dim)
        if c is None:
            raise ShapeMismatch("sublattice is not contained in the overlattice")
        coords.append(c)
    if not coords:
        return [0] * len(sup_basis)
    snf = smith_normal_form(IntMatrix.from_rows(coords))
    diag = list(snf.diagonal())
    diag += [0] * (len(sup_basis) - len(diag))
    return diag


# ---------------------------------------------------------------------------
# finite abelian groups


def _chain_normalize(orders) -> tuple[int, ...]:
    # gcd/lcm exchanges preserve the group and converge to the chain form
    ds = sorted(int(o) for o in orders if int(o) > 1)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds) - 1):
            a, b = ds[i], ds[i + 1]
            if b % a:
                g = gcd(a, b)
                ds[i], ds[i + 1] = g, a * b // g
                changed = True
        if changed:
            ds = sorted(d for d in ds if d > 1)
    return tuple(ds)


@dataclass(frozen=True)
class FinAbGroup:
    """A finite abelian group by its invariant factors d_1 | d_2 | ... | d_k.

    The factors are each >= 2 and the trivial group is the empty tuple,
    so equality of values is equality of isomorphism classes.

    >>> FinAbGroup.of_orders([4, 2, 6])
    FinAbGroup(invariant_factors=(2, 2, 12))
    >>> FinAbGroup.trivial().order
    1
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        for i, d in enumerate(self.invariant_factors):
            if d < 2:
                raise ShapeMismatch("invariant factors must be >= 2")
            if i and d % self.invariant_factors[i - 1]:
                raise ShapeMismatch("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(())

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls((n,)) if n > 1 else cls(())

    @classmethod
    def of_orders(cls, orders) -> "FinAbGroup":
        """The direct sum of cyclic groups of the given orders."""
        return cls(_chain_normalize(orders))

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.invariant_factors, 1)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.of_orders(self.invariant_factors + other.invariant_factors)

    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " ⊕ ".join(f"Z/{d}" for d in self.invariant_factors)


def n_torsion(g: FinAbGroup, n: int) -> FinAbGroup:
    """The n-torsion subgroup: invariant factors gcd(d_i, n).

    >>> str(n_torsion(FinAbGroup.cyclic(12), 4))
    'Z/4'
    """
    if n < 1:
        raise BadModulus("n-torsion needs n >= 1")
    return FinAbGroup.of_orders(gcd(d, n) for d in g.invariant_factors)


def p_primary_part(g: FinAbGroup, p: int) -> FinAbGroup:
    """The p-Sylow subgroup: invariant factors p^{v_p(d_i)}."""
    require_prime(p)
    parts = []
    for d in g.invariant_factors:
        q = 1
        while d % p == 0:
            d //= p
            q *= p
        parts.append(q)
    return FinAbGroup.of_orders(parts)


def require_prime(p: int) -> None:
    from sympy import isprime  # deferred: sympy import is heavy

    if not isprime(p):
        raise NotPrime(f"{p} is not prime")


# ---------------------------------------------------------------------------
# kernels and cokernels


def cokernel(m: IntMatrix) -> FinAbGroup:
    """Z^t / (column span of m) for square nonsingular m.

    >>> str(cokernel(IntMatrix.from_rows([[5]])))
    'Z/5'
    """
    if m.rows != m.cols:
        raise ShapeMismatch("cokernel needs a square matrix")
    snf = smith_normal_form(m)
    diag = snf.diagonal()
    if any(d == 0 for d in diag):
        raise SingularMatrix("matrix has determinant 0, so the cokernel is infinite")
    return FinAbGroup.of_orders(diag)


def kernel_mod_n(m: IntMatrix, n: int) -> tuple[FinAbGroup, tuple[tuple[int, ...], ...]]:
    """Kernel of multiplication by m on (Z/n)^cols, with aligned generators.

    The i-th returned generator has order exactly the i-th invariant
    factor of the returned group.

    >>> g, gens = kernel_mod_n(IntMatrix.from_rows([[2, 0], [0, 4]]), 4)
    >>> str(g), gens
    ('Z/2 ⊕ Z/4', ((2, 0), (0, 1)))
    """
    if n < 2:
        raise BadModulus("kernel mod n needs n >= 2")
    snf = smith_normal_form(m)
    diag = list(snf.diagonal())
    diag += [0] * (m.cols - len(diag))
    orders = []
    gens = []
    for j, d in enumerate(diag):
        g = gcd(d, n)  # gcd(0, n) == n covers rank-deficient columns
        if g <= 1:
            continue
        scale = n // g
        col = snf.V.column(j)
        gens.append(tuple((scale * x) % n for x in col))
        orders.append(g)
    return FinAbGroup(tuple(orders)), tuple(gens)


# ---------------------------------------------------------------------------
# homomorphisms between finite abelian groups


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given on generator coordinates.

    ``matrix`` has one column per source invariant factor and one row per
    target invariant factor; it sends a source coordinate vector (read as
    a column) to a target coordinate vector.  Entries are kept reduced
    modulo the target orders.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.rank or self.matrix.cols != self.source.rank:
            raise ShapeMismatch(
                f"hom matrix must be {self.target.rank}x{self.source.rank}, "
                f"got {self.matrix.rows}x{self.matrix.cols}"
            )
        tinv = self.target.invariant_factors
        reduced = tuple(
            self.matrix.entry(i, j) % tinv[i]
            for i in range(self.matrix.rows)
            for j in range(self.matrix.cols)
        )
        object.__setattr__(
            self, "matrix", IntMatrix(self.matrix.rows, self.matrix.cols, reduced)
        )
        # a generator of order s must land on a point killed by s
        sinv = self.source.invariant_factors
        for j, s in enumerate(sinv):
            for i, t in enumerate(tinv):
                if (s * self.matrix.entry(i, j)) % t:
                    raise ShapeMismatch(
                        f"entry ({i},{j}) does not respect generator orders"
                    )

    @classmethod
    def zero(cls, source: FinAbGroup, target: FinAbGroup) -> "GroupHom":
        return cls(source, target,
                   IntMatrix(target.rank, source.rank, (0,) * (target.rank * source.rank)))

    @classmethod
    def identity(cls, g: FinAbGroup) -> "GroupHom":
        return cls(g, g, IntMatrix.identity(g.rank))

    def apply(self, vec) -> tuple[int, ...]:
        if len(vec) != self.source.rank:
            raise ShapeMismatch("vector length disagrees with source rank")
        tinv = self.target.invariant_factors
        return tuple(
            sum(self.matrix.entry(i, j) * vec[j] for j in range(self.source.rank))
            % tinv[i]
            for i in range(self.target.rank)
        )

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self after inner."""
        if inner.target != self.source:
            raise ShapeMismatch("composition needs matching middle group")
        return GroupHom(inner.source, self.target, self.matrix.mul(inner.matrix))

    def is_zero(self) -> bool:
        return not any(self.matrix.entries)

    def add(self, other: "GroupHom") -> "GroupHom":
        if self.source != other.source or self.target != other.target:
            raise ShapeMismatch("sum of homs needs equal source and target")
        ent = tuple(x + y for x, y in zip(self.matrix.entries, other.matrix.entries))
        return GroupHom(self.source, self.target,
                        IntMatrix(self.matrix.rows, self.matrix.cols, ent))

    # -- subgroup computations (lattice method) -----------------------------
    #
    # A subgroup of the target ⊕ Z/e_i is a lattice L with E Z^l ⊆ L ⊆ Z^l,
    # E = diag(e_i); subgroups are compared by the canonical HNF of L.

    def _source_relations(self):
        k = self.source.rank
        return [
            [self.source.invariant_factors[i] if j == i else 0 for j in range(k)]
            for i in range(k)
        ]

    def _target_relations(self):
        l = self.target.rank
        return [
            [self.target.invariant_factors[i] if j == i else 0 for j in range(l)]
            for i in range(l)
        ]

    def image_lattice(self):
        """HNF basis of the image subgroup's lattice inside Z^target_rank."""
        cols = [list(self.matrix.column(j)) for j in range(self.source.rank)]
        return hnf_rows(cols + self._target_relations(), self.target.rank)

    def kernel_lattice(self):
        """HNF basis of the kernel subgroup's lattice inside Z^source_rank."""
        k, l = self.source.rank, self.target.rank
        if k == 0:
            return []
        if l == 0:
            return hnf_rows([[1 if j == i else 0 for j in range(k)] for i in range(k)], k)
        # solve B x ≡ 0 mod E: integer kernel of [B | E], projected to x
        stacked = IntMatrix.from_rows(
            [list(self.matrix.row(i))
             + [self.target.invariant_factors[i] if j == i else 0 for j in range(l)]
             for i in range(l)]
        )
        snf = smith_normal_form(stacked)
        members = [list(snf.V.column(j)[:k]) for j in range(l, k + l)]
        return hnf_rows(members + self._source_relations(), k)

    def kernel(self) -> tuple[FinAbGroup, tuple[tuple[int, ...], ...]]:
        basis = self.kernel_lattice()
        return self._subgroup_from_lattice(basis, self.source)

    def image(self) -> tuple[FinAbGroup, tuple[tuple[int, ...], ...]]:
        basis = self.image_lattice()
        return self._subgroup_from_lattice(basis, self.target)

    @staticmethod
    def _subgroup_from_lattice(basis, ambient: FinAbGroup):
        dim = ambient.rank
        rel = [
            [ambient.invariant_factors[i] if j == i else 0 for j in range(dim)]
            for i in range(dim)
        ]
        orders = quotient_orders(basis, rel, dim)
        group = FinAbGroup.of_orders(orders)
        gens = []
        for row in basis:
            vec = tuple(x % ambient.invariant_factors[i] for i, x in enumerate(row))
            if any(vec):
                gens.append(vec)
        return group, tuple(gens)


def is_exact(f: GroupHom, g: GroupHom) -> bool:
    """Exactness at the middle of source --f--> middle --g--> target.

    Image and kernel are compared as subgroups via their canonical
    lattice bases.

    >>> z4 = FinAbGroup.cyclic(4)
    >>> two = GroupHom(z4, z4, IntMatrix.from_rows([[2]]))
    >>> is_exact(two, two)
    True
    >>> is_exact(two, GroupHom.identity(z4))
    False
    """
    if f.target != g.source:
        raise ShapeMismatch("target of f must equal source of g")
    return f.image_lattice() == g.kernel_lattice()


# ---------------------------------------------------------------------------
# subgroup enumeration
#
# Subgroups of (Z/n)^t are lattices L with n Z^t ⊆ L ⊆ Z^t, walked in
# canonical HNF form: a basis row (d, tail) with pivot d | n extends a
# lower-dimensional lattice Λ exactly when (n/d)·tail ∈ Λ, and reducing
# the tail into Λ's fundamental region makes the walk hit每 each subgroup
# exactly once.


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _extension_tails(n: int, d: int, basis, dim: int):
    """All canonical tails v with (n/d)·v in the lattice of ``basis``."""
    if dim == 0:
        return [()]
    c = n // d
    w = IntMatrix.from_rows(basis)
    snf = smith_normal_form(w)
    vinv = unimodular_inverse(snf.V)
    diag = snf.diagonal()
    # in V-coordinates the lattice is diag(d_i)Z^dim, so the stretch factors
    # of the preimage under multiplication by c are d_i / gcd(d_i, c)
    m_rows = []
    for i in range(dim):
        k = diag[i] // gcd(diag[i], c)
        m_rows.append([k * x for x in vinv.row(i)])
    m_basis = hnf_rows(m_rows, dim)
    ratios = [basis[i][i] // m_basis[i][i] for i in range(dim)]
    reps = []
    counters = [0] * dim
    while True:
        vec = [0] * dim
        for i, ci in enumerate(counters):
            if ci:
                for t in range(dim):
                    vec[t] += ci * m_basis[i][t]
        # reduce into the fundamental region of the lower lattice
        for i in range(dim):
            q = vec[i] // basis[i][i]
            if q:
                for t in range(dim):
                    vec[t] -= q * basis[i][t]
        reps.append(tuple(vec))
        # odometer over prod(ratios)
        for i in range(dim - 1, -1, -1):
            counters[i] += 1
            if counters[i] < ratios[i]:
                break
            counters[i] = 0
        else:
            break
    return reps


_SUBGROUP_CACHE: dict[tuple[int, int], tuple] = {}


def enumerate_subgroups(n: int, t: int, budget: int | None = None):
    """Every subgroup of (Z/n)^t exactly once, as tuples of generators.

    Generators are the canonical HNF basis rows with pivot < n, reduced
    mod n; the trivial subgroup is the empty tuple.  Raises
    BudgetExceeded when n**t is larger than the configured element budget
    (default 2**16, environment-overridable).

    >>> [len(s) for s in enumerate_subgroups(2, 1)]
    [0, 1]
    >>> len(enumerate_subgroups(2, 2))
    5
    """
    if n < 2:
        raise BadModulus("subgroup enumeration needs n >= 2")
    if t < 1:
        raise ShapeMismatch("rank must be >= 1")
    limit = budget if budget is not None else enum_budget()
    if n ** t > limit:
        raise BudgetExceeded(
            f"{n}^{t} = {n ** t} elements exceeds the enumeration budget {limit}"
        )
    key = (n, t)
    if key not in _SUBGROUP_CACHE:
        _SUBGROUP_CACHE[key] = _enumerate_subgroups(n, t)
    return _SUBGROUP_CACHE[key]

def _enumerate_subgroups(n: int, t: int):
    divisors = _divisors(n)
    level = [()]  # bases in dimension 0
    for dim in range(1, t + 1):
        grown = []
        for basis in level:
            lower = [list(r) for r in basis]
            for d in divisors:
                for tail in _extension_tails(n, d, lower, dim - 1):
                    row = (d,) + tail
                    grown.append((row,) + tuple((0,) + r for r in basis))
        level = grown
    out = []
    for basis in level:
        gens = tuple(
            tuple(x % n for x in row) for row in basis if row[_pivot_index(row)] < n
        )
        out.append(gens)
    return tuple(out)


def _pivot_index(row) -> int:
    return next(i for i, x in enumerate(row) if x)


def subgroup_canonical(gens, n: int, dim: int):
    """Canonical HNF form of the subgroup of (Z/n)^dim spanned by ``gens``."""
    rows = [list(g) for g in gens]
    rows += [[n if j == i else 0 for j in range(dim)] for i in range(dim)]
    return tuple(tuple(r) for r in hnf_rows(rows, dim))


def subgroup_elements(gens, n: int, dim: int) -> frozenset:
    """All elements of the subgroup of (Z/n)^dim spanned by ``gens``."""
    elems = {(0,) * dim}
    for g in gens:
        g = tuple(x % n for x in g)
        if g in elems:
            continue
        multiples = []
        cur = g
        while cur != (0,) * dim:
            multiples.append(cur)
            cur = tuple((a + b) % n for a, b in zip(cur, g))
        elems = {tuple((a + b) % n for a, b in zip(e, m))
                 for e in elems for m in multiples} | elems
    return frozenset(elems)
