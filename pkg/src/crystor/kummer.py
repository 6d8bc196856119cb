"""Symbolic Kummer classes and extension classes of etale by
multiplicative torsion modules.

A KummerClass is an element of K^x/(K^x)^n written on the basis
"uniformizer valuation + unit symbols": the valuation coefficient is a
residue mod n and the unit part is a formal Z/n-linear combination of
opaque unit symbols.  Unit symbols are never resolved: two symbols are
equal only if identical, and the package never decides whether a unit is
an n-th power.  Everything downstream that matters (crystallinity,
component groups) depends only on the valuation parts.

An ExtClass is the class of an extension of (Z/n)^r (etale, twist
weight 0) by (Z/n)^s (multiplicative, twist weight 1), encoded as an
s x r matrix of KummerClasses.  The split class is the zero matrix and
Baer sum is entrywise addition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import FinAbGroup, GroupHom, IntMatrix
from .errors import ShapeMismatch, WeightOutOfRange


@dataclass(frozen=True)
class KummerClass:
    """val . (uniformizer) + sum of unit symbols, all mod n."""

    n: int
    val: int = 0
    units: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise ShapeMismatch("Kummer classes need modulus >= 2")
        object.__setattr__(self, "val", self.val % self.n)
        clean = {}
        for sym, e in self.units:
            e = (clean.get(sym, 0) + e) % self.n
            if e:
                clean[sym] = e
            else:
                clean.pop(sym, None)
        object.__setattr__(self, "units", tuple(sorted(clean.items())))

    @classmethod
    def unit(cls, n: int, symbol: str, exp: int = 1) -> "KummerClass":
        return cls(n, 0, ((symbol, exp),))

    @classmethod
    def uniformizer(cls, n: int, val: int = 1) -> "KummerClass":
        return cls(n, val, ())

    def add(self, other: "KummerClass") -> "KummerClass":
        if self.n != other.n:
            raise ShapeMismatch("moduli disagree")
        return KummerClass(self.n, self.val + other.val, self.units + other.units)

    def neg(self) -> "KummerClass":
        return self.scale(-1)

    def scale(self, k: int) -> "KummerClass":
        return KummerClass(
            self.n, k * self.val, tuple((s, k * e) for s, e in self.units)
        )

    def is_zero(self) -> bool:
        return self.val == 0 and not self.units

    def val_part(self) -> "KummerClass":
        return KummerClass(self.n, self.val, ())

    def unit_part(self) -> "KummerClass":
        return KummerClass(self.n, 0, self.units)

    def reduce_to(self, n2: int) -> "KummerClass":
        """Image under K^x/(K^x)^n -> K^x/(K^x)^n2; n2 must divide n."""
        if n2 < 2 or self.n % n2:
            raise ShapeMismatch(f"{n2} does not divide level {self.n}")
        return KummerClass(n2, self.val, self.units)

    def __str__(self):
        terms = []
        if self.val:
            terms.append(f"pi^{self.val}")
        for sym, e in self.units:
            terms.append(sym if e == 1 else f"{sym}^{e}")
        return " * ".join(terms) if terms else "1"


@dataclass(frozen=True)
class TwistWeight:
    """Twist bookkeeping; only weights 0 (etale) and 1 (multiplicative)
    occur in scope."""

    weight: int

    def __post_init__(self):
        if self.weight not in (0, 1):
            raise WeightOutOfRange(f"weight {self.weight} is outside {{0, 1}}")

    def shifted(self, k: int) -> "TwistWeight":
        w = self.weight + k
        if w not in (0, 1):
            raise WeightOutOfRange(
                f"twist by {k} moves weight {self.weight} outside {{0, 1}}"
            )
        return TwistWeight(w)


ETALE = TwistWeight(0)
MULTIPLICATIVE = TwistWeight(1)


@dataclass(frozen=True)
class ExtClass:
    """Class of an extension of (Z/n)^etale_rank by (Z/n)^mult_rank.

    kappa[i][j] is the Kummer class glueing multiplicative generator i to
    etale generator j; the split extension is the all-zero matrix.
    """

    n: int
    mult_rank: int
    etale_rank: int
    kappa: tuple[tuple[KummerClass, ...], ...]
    mult_weight: TwistWeight = MULTIPLICATIVE
    etale_weight: TwistWeight = ETALE

    def __post_init__(self):
        if len(self.kappa) != self.mult_rank:
            raise ShapeMismatch("kappa must have mult_rank rows")
        for row in self.kappa:
            if len(row) != self.etale_rank:
                raise ShapeMismatch("kappa must have etale_rank columns")
            for c in row:
                if c.n != self.n:
                    raise ShapeMismatch("kappa entry modulus disagrees")

    @classmethod
    def split(cls, n: int, mult_rank: int, etale_rank: int) -> "ExtClass":
        zero = KummerClass(n)
        return cls(
            n,
            mult_rank,
            etale_rank,
            tuple(tuple(zero for _ in range(etale_rank)) for _ in range(mult_rank)),
        )

    @classmethod
    def from_val_matrix(cls, n: int, vals) -> "ExtClass":
        rows = tuple(
            tuple(KummerClass(n, v) for v in row) for row in vals
        )
        s = len(rows)
        r = len(rows[0]) if rows else 0
        return cls(n, s, r, rows)

    def entry(self, i: int, j: int) -> KummerClass:
        return self.kappa[i][j]

    def val_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[c.val for c in row] for row in self.kappa]
        ) if self.mult_rank else IntMatrix(0, self.etale_rank, ())

    def reduce_to(self, n2: int) -> "ExtClass":
        rows = tuple(tuple(c.reduce_to(n2) for c in row) for row in self.kappa)
        return ExtClass(
            n2, self.mult_rank, self.etale_rank, rows,
            self.mult_weight, self.etale_weight,
        )

    def column_combination(self, vec) -> tuple[KummerClass, ...]:
        """The kappa value on the etale element with coordinates ``vec``."""
        if len(vec) != self.etale_rank:
            raise ShapeMismatch("coordinate length disagrees with etale rank")
        out = []
        for i in range(self.mult_rank):
            acc = KummerClass(self.n)
            for j, c in enumerate(vec):
                if c % self.n:
                    acc = acc.add(self.kappa[i][j].scale(c))
            out.append(acc)
        return tuple(out)

    def __str__(self):
        rows = "; ".join(
            ", ".join(str(c) for c in row) for row in self.kappa
        )
        return f"ExtClass(n={self.n}, [{rows}])"


def _require_same_shape(a: ExtClass, b: ExtClass):
    if (a.n, a.mult_rank, a.etale_rank) != (b.n, b.mult_rank, b.etale_rank):
        raise ShapeMismatch(
            "extension classes must share modulus and ranks to be combined"
        )
    if (a.mult_weight, a.etale_weight) != (b.mult_weight, b.etale_weight):
        raise ShapeMismatch("extension classes must share twist weights")


def baer_sum(a: ExtClass, b: ExtClass) -> ExtClass:
    """Entrywise sum of kappa matrices: the group law on extension classes."""
    _require_same_shape(a, b)
    rows = tuple(
        tuple(x.add(y) for x, y in zip(ra, rb)) for ra, rb in zip(a.kappa, b.kappa)
    )
    return ExtClass(a.n, a.mult_rank, a.etale_rank, rows, a.mult_weight, a.etale_weight)


def baer_neg(a: ExtClass) -> ExtClass:
    rows = tuple(tuple(x.neg() for x in row) for row in a.kappa)
    return ExtClass(a.n, a.mult_rank, a.etale_rank, rows, a.mult_weight, a.etale_weight)


def raynaud_split(a: ExtClass) -> tuple[ExtClass, ExtClass]:
    """Split a class into (unit part, valuation part).

    The unit part has valuation 0 in every entry, the valuation part has
    no unit symbols, and their Baer sum returns the input.
    """
    unit_rows = tuple(tuple(x.unit_part() for x in row) for row in a.kappa)
    val_rows = tuple(tuple(x.val_part() for x in row) for row in a.kappa)
    mk = lambda rows: ExtClass(
        a.n, a.mult_rank, a.etale_rank, rows, a.mult_weight, a.etale_weight
    )
    return mk(unit_rows), mk(val_rows)


def is_one_crystalline(a: ExtClass) -> bool:
    """True iff every valuation is 0 mod n, i.e. the monodromy vanishes."""
    return all(c.val == 0 for row in a.kappa for c in row)


def monodromy_of(a: ExtClass) -> GroupHom:
    """The valuation-part matrix as a map (Z/n)^etale(1) -> (Z/n)^mult.

    Zero exactly when the class is 1-crystalline.
    """
    source = FinAbGroup.of_orders([a.n] * a.etale_rank)
    target = FinAbGroup.of_orders([a.n] * a.mult_rank)
    return GroupHom(source, target, a.val_matrix())


def tate_twist(a: ExtClass, k: int) -> ExtClass:
    """Shift both twist weights by k; kappa is untouched.

    Raises WeightOutOfRange when a weight would leave {0, 1}.
    """
    if k not in (-1, 1):
        raise WeightOutOfRange("only twists by +1 or -1 are in scope")
    return ExtClass(
        a.n,
        a.mult_rank,
        a.etale_rank,
        a.kappa,
        a.mult_weight.shifted(k),
        a.etale_weight.shifted(k),
    )
