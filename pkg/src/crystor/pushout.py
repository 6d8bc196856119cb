"""The category of prolongable extensions with monodromy.

An object is a pair (eta_ok, nu): a 1-crystalline extension class (all
valuations vanish, so the class prolongs over the ring of integers)
together with a monodromy map nu from the etale part (Tate-twisted) to
the multiplicative part.  A morphism is a pair of maps on the two parts
whose square against the monodromies commutes.

The two constructions here are the monodromy pushout, which converts nu
back into a pure-valuation extension class, and the star pullback, which
restricts the etale part to the kernel of nu.  The pushout's middle term
is computed twice on purpose: once as an abstract class (the underlying
group of a cocycle extension is the direct sum of the two parts) and
once from the explicit generators-and-relations presentation; the two
must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import (
    FinAbGroup,
    GroupHom,
    IntMatrix,
    is_exact,
    kernel_mod_n,
    smith_normal_form,
    unimodular_inverse,
)
from .degen import DegenerationData, raynaud_decompose
from .errors import BadInput, NotAMorphism, ShapeMismatch
from .kummer import ExtClass, KummerClass, baer_sum, is_one_crystalline


@dataclass(frozen=True)
class ExtNuObject:
    """(prolongable class, monodromy map).

    The group structure of the two parts rides on ``nu``: its source is
    the etale part, its target the multiplicative part.  Both exponents
    must divide the level n.
    """

    n: int
    eta_ok: ExtClass
    nu: GroupHom

    def __post_init__(self):
        if self.eta_ok.n != self.n:
            raise ShapeMismatch("class level disagrees with object level")
        if self.nu.source.rank != self.eta_ok.etale_rank:
            raise ShapeMismatch("monodromy source rank disagrees with etale rank")
        if self.nu.target.rank != self.eta_ok.mult_rank:
            raise ShapeMismatch(
                "monodromy target rank disagrees with multiplicative rank"
            )
        for part in (self.nu.source, self.nu.target):
            if not part.is_trivial() and self.n % part.exponent():
                raise ShapeMismatch("part exponent must divide the level")
        if not is_one_crystalline(self.eta_ok):
            raise BadInput("prolongable part must have vanishing valuations")

    @property
    def mult_rank(self) -> int:
        return self.eta_ok.mult_rank

    @property
    def etale_rank(self) -> int:
        return self.eta_ok.etale_rank

    @property
    def mult_group(self) -> FinAbGroup:
        return self.nu.target

    @property
    def etale_group(self) -> FinAbGroup:
        return self.nu.source

    def etale_is_free(self) -> bool:
        return self.etale_group.invariant_factors == (self.n,) * self.etale_rank


def degeneration_object(data: DegenerationData, m: int) -> ExtNuObject:
    """The canonical object of degeneration data at level p^m: unit part
    of the torsion class plus monodromy mu mod p^m."""
    eta1, nu = raynaud_decompose(data, m)
    return ExtNuObject(eta1.n, eta1, nu)


# ---------------------------------------------------------------------------
# presented modules


@dataclass(frozen=True)
class PresentedModule:
    """Finitely presented abelian group: one relation row per relation,
    one column per generator.

    Coordinates in the derived invariant-factor basis come from the
    Smith decomposition of the relation matrix, so homomorphisms given
    on generators can be transported to GroupHoms between the derived
    groups.
    """

    labels: tuple[str, ...]
    relations: IntMatrix
    group: FinAbGroup = field(init=False, compare=False, repr=False)
    _v: IntMatrix = field(init=False, compare=False, repr=False)
    _vinv: IntMatrix = field(init=False, compare=False, repr=False)
    _orders: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.relations.cols != len(self.labels):
            raise ShapeMismatch("one relation column per generator label")
        snf = smith_normal_form(self.relations)
        diag = list(snf.diagonal())
        diag += [0] * (len(self.labels) - len(diag))
        if any(d == 0 for d in diag):
            raise BadInput("presentation has an infinite quotient")
        object.__setattr__(self, "group", FinAbGroup.of_orders(diag))
        object.__setattr__(self, "_v", snf.V)
        object.__setattr__(self, "_vinv", unimodular_inverse(snf.V))
        object.__setattr__(self, "_orders", tuple(diag))

    def coords(self, vec) -> tuple[int, ...]:
        """Invariant-factor coordinates of an integer generator combination."""
        if len(vec) != len(self.labels):
            raise ShapeMismatch("vector length disagrees with generator count")
        n_gen = len(self.labels)
        mixed = [
            sum(vec[i] * self._v.entry(i, j) for i in range(n_gen))
            for j in range(n_gen)
        ]
        return tuple(
            mixed[j] % d for j, d in enumerate(self._orders) if d > 1
        )

    def generator_coords(self) -> tuple[tuple[int, ...], ...]:
        n_gen = len(self.labels)
        return tuple(
            self.coords([1 if i == j else 0 for i in range(n_gen)])
            for j in range(n_gen)
        )

    def hom_to(self, other: "PresentedModule", gen_map: IntMatrix) -> GroupHom:
        """Transport a generator-level map (column j = image of our
        generator j in other's generators) to the derived groups.

        The caller must pass a map sending relations into relations;
        violations surface as order-respect failures.
        """
        if gen_map.rows != len(other.labels) or gen_map.cols != len(self.labels):
            raise ShapeMismatch("generator map shape disagrees with presentations")
        cols = []
        for i, d in enumerate(self._orders):
            if d <= 1:
                continue
            lift = self._vinv.row(i)
            image = [
                sum(gen_map.entry(k, j) * lift[j] for j in range(len(self.labels)))
                for k in range(len(other.labels))
            ]
            cols.append(other.coords(image))
        matrix = IntMatrix.from_rows(
            [[col[i] for col in cols] for i in range(other.group.rank)]
        ) if cols else IntMatrix(other.group.rank, 0, ())
        return GroupHom(self.group, other.group, matrix)


# ---------------------------------------------------------------------------
# monodromy pushout


def middle_term_group(obj: ExtNuObject) -> FinAbGroup:
    """Underlying group of the extension middle term.  A cocycle class
    twists the Galois action only, so this is the direct sum of parts."""
    return obj.mult_group.direct_sum(obj.etale_group)


def mp_presentation(obj: ExtNuObject) -> PresentedModule:
    """Explicit presentation of the pushout's middle term.

    Generators: a_j and b_j for the two standard coordinates of the
    rank-2 building block tensored with the j-th etale generator, plus
    c_i for the multiplicative part.  Relations: each generator is
    killed by its part's order, and a_j is glued to nu of the j-th
    etale generator.
    """
    r, s = obj.etale_rank, obj.mult_rank
    e = obj.etale_group.invariant_factors
    o = obj.mult_group.invariant_factors
    labels = (
        tuple(f"a{j + 1}" for j in range(r))
        + tuple(f"b{j + 1}" for j in range(r))
        + tuple(f"c{i + 1}" for i in range(s))
    )
    n_gen = 2 * r + s
    rows = []
    for j in range(r):
        rows.append([e[j] if k == j else 0 for k in range(n_gen)])
    for j in range(r):
        rows.append([e[j] if k == r + j else 0 for k in range(n_gen)])
    for i in range(s):
        rows.append([o[i] if k == 2 * r + i else 0 for k in range(n_gen)])
    for j in range(r):
        row = [0] * n_gen
        row[j] = 1
        for i in range(s):
            row[2 * r + i] = -obj.nu.matrix.entry(i, j)
        rows.append(row)
    return PresentedModule(labels, IntMatrix.from_rows(rows))


def mp_pushout(obj: ExtNuObject) -> ExtClass:
    """Class of the monodromy pushout: pure valuations, matrix = nu.

    The generators-and-relations presentation is built alongside and its
    derived group checked against the class route's middle term.
    """
    val_rows = tuple(
        tuple(
            KummerClass(obj.n, obj.nu.matrix.entry(i, j))
            for j in range(obj.etale_rank)
        )
        for i in range(obj.mult_rank)
    )
    cls = ExtClass(obj.n, obj.mult_rank, obj.etale_rank, val_rows)
    presented = mp_presentation(obj)
    assert presented.group == middle_term_group(obj), (
        "presentation route disagrees with class route on the middle term"
    )
    return cls


def generic_fiber(obj: ExtNuObject) -> ExtClass:
    """The generic-fiber class: prolongable part plus pushout class."""
    return baer_sum(obj.eta_ok, mp_pushout(obj))


# ---------------------------------------------------------------------------
# star pullback


@dataclass(frozen=True)
class InclusionData:
    """How the pulled-back etale part sits in the original one:
    generator coordinates, their orders, and the abstract group."""

    generators: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]
    group: FinAbGroup


def star_pullback(obj: ExtNuObject) -> tuple[ExtNuObject, InclusionData]:
    """Restrict to the kernel of the monodromy.

    The pulled-back object has zero monodromy, so its generic fiber is
    1-crystalline; its etale part is ker(nu) with generators aligned to
    the kernel's invariant factors.
    """
    if not obj.etale_is_free():
        raise BadInput("star pullback expects a free etale part")
    group, gens = kernel_mod_n(obj.nu.matrix, obj.n)
    cols = [obj.eta_ok.column_combination(g) for g in gens]
    kappa = tuple(
        tuple(cols[k][i] for k in range(len(gens)))
        for i in range(obj.mult_rank)
    )
    eta = ExtClass(obj.n, obj.mult_rank, len(gens), kappa)
    sub = ExtNuObject(obj.n, eta, GroupHom.zero(group, obj.mult_group))
    return sub, InclusionData(gens, group.invariant_factors, group)


# ---------------------------------------------------------------------------
# morphisms and exactness


@dataclass(frozen=True)
class ExtNuMorphism:
    """Pair of part maps; the monodromy square is checked eagerly."""

    source: ExtNuObject
    target: ExtNuObject
    mult_map: IntMatrix
    etale_map: IntMatrix
    mult_hom: GroupHom = field(init=False, compare=False, repr=False)
    etale_hom: GroupHom = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.source.n != self.target.n:
            raise ShapeMismatch("morphism needs equal levels")
        mult_hom = GroupHom(self.source.mult_group, self.target.mult_group,
                            self.mult_map)
        etale_hom = GroupHom(self.source.etale_group, self.target.etale_group,
                             self.etale_map)
        object.__setattr__(self, "mult_hom", mult_hom)
        object.__setattr__(self, "etale_hom", etale_hom)
        if self.target.nu.compose(etale_hom) != mult_hom.compose(self.source.nu):
            raise NotAMorphism("monodromy square does not commute")

    @classmethod
    def identity(cls, obj: ExtNuObject) -> "ExtNuMorphism":
        return cls(obj, obj,
                   IntMatrix.identity(obj.mult_rank),
                   IntMatrix.identity(obj.etale_rank))

    def compose(self, inner: "ExtNuMorphism") -> "ExtNuMorphism":
        """self after inner."""
        if inner.target != self.source:
            raise ShapeMismatch("composition needs matching middle object")
        return ExtNuMorphism(
            inner.source, self.target,
            self.mult_map.mul(inner.mult_map),
            self.etale_map.mul(inner.etale_map),
        )


def mp_generator_map(mor: ExtNuMorphism) -> IntMatrix:
    """The morphism on pushout presentations: a and b follow the etale
    map, c follows the multiplicative map."""
    ra, sa = mor.source.etale_rank, mor.source.mult_rank
    rb, sb = mor.target.etale_rank, mor.target.mult_rank
    rows = [[0] * (2 * ra + sa) for _ in range(2 * rb + sb)]
    for k in range(rb):
        for j in range(ra):
            rows[k][j] = mor.etale_map.entry(k, j)
            rows[rb + k][ra + j] = mor.etale_map.entry(k, j)
    for l in range(sb):
        for i in range(sa):
            rows[2 * rb + l][2 * ra + i] = mor.mult_map.entry(l, i)
    return IntMatrix.from_rows(rows)


def mp_hom(mor: ExtNuMorphism) -> GroupHom:
    """Induced map on the pushout middle terms, via the presentations."""
    return mp_presentation(mor.source).hom_to(
        mp_presentation(mor.target), mp_generator_map(mor)
    )


def _is_ses(f: GroupHom, g: GroupHom) -> bool:
    injective = f.kernel()[0].is_trivial()
    surjective = g.image()[0] == g.target
    return injective and is_exact(f, g) and surjective


def check_mp_exactness(f: ExtNuMorphism, g: ExtNuMorphism) -> bool:
    """Whether 0 -> A -> B -> C -> 0 stays short exact under both the
    pushout and the generic-fiber functor.

    Computed twice: through the presented middle terms, and part by part
    on the two filtration pieces (the induced maps are block diagonal,
    so the generic-fiber middle decomposes).  The routes must agree.
    """
    if f.target != g.source:
        raise ShapeMismatch("the two morphisms do not chain")
    by_presentation = _is_ses(mp_hom(f), mp_hom(g))
    by_parts = _is_ses(f.mult_hom, g.mult_hom) and _is_ses(f.etale_hom, g.etale_hom)
    assert by_presentation == by_parts, (
        "presentation route and componentwise route disagree"
    )
    return by_presentation


# ---------------------------------------------------------------------------
# direct sums, for building short exact triples


def _require_free_parts(obj: ExtNuObject) -> None:
    # coordinate blocks only concatenate cleanly when invariant-factor
    # normalization is the identity, i.e. every part is free over Z/n
    free_mult = obj.mult_group.invariant_factors == (obj.n,) * obj.mult_rank
    if not (free_mult and obj.etale_is_free()):
        raise BadInput("direct sums need both parts free over Z/n")


def object_direct_sum(a: ExtNuObject, b: ExtNuObject) -> ExtNuObject:
    """Blockwise sum: classes side by side, monodromies block diagonal."""
    if a.n != b.n:
        raise ShapeMismatch("direct sum needs equal levels")
    _require_free_parts(a)
    _require_free_parts(b)
    n = a.n
    zero = KummerClass(n, 0, ())
    kappa = []
    for i in range(a.mult_rank):
        kappa.append(tuple(a.eta_ok.kappa[i]) + (zero,) * b.etale_rank)
    for i in range(b.mult_rank):
        kappa.append((zero,) * a.etale_rank + tuple(b.eta_ok.kappa[i]))
    eta = ExtClass(n, a.mult_rank + b.mult_rank, a.etale_rank + b.etale_rank,
                   tuple(kappa), a.eta_ok.mult_weight, a.eta_ok.etale_weight)
    nu_rows = []
    for i in range(a.mult_rank):
        nu_rows.append(list(a.nu.matrix.row(i)) + [0] * b.etale_rank)
    for i in range(b.mult_rank):
        nu_rows.append([0] * a.etale_rank + list(b.nu.matrix.row(i)))
    nu = GroupHom(
        FinAbGroup.of_orders([n] * (a.etale_rank + b.etale_rank)),
        FinAbGroup.of_orders([n] * (a.mult_rank + b.mult_rank)),
        IntMatrix.from_rows(nu_rows),
    )
    return ExtNuObject(n, eta, nu)


def _block_column(top: IntMatrix, total_rows: int, offset: int) -> IntMatrix:
    rows = [[0] * top.cols for _ in range(total_rows)]
    for i in range(top.rows):
        for j in range(top.cols):
            rows[offset + i][j] = top.entry(i, j)
    return IntMatrix.from_rows(rows)


def sum_inclusion(a: ExtNuObject, b: ExtNuObject) -> ExtNuMorphism:
    """a -> a (+) b onto the first block."""
    total = object_direct_sum(a, b)
    return ExtNuMorphism(
        a, total,
        _block_column(IntMatrix.identity(a.mult_rank),
                      total.mult_rank, 0),
        _block_column(IntMatrix.identity(a.etale_rank),
                      total.etale_rank, 0),
    )


def sum_projection(a: ExtNuObject, b: ExtNuObject) -> ExtNuMorphism:
    """a (+) b -> b off the first block."""
    total = object_direct_sum(a, b)
    mult_rows = [[0] * total.mult_rank for _ in range(b.mult_rank)]
    for i in range(b.mult_rank):
        mult_rows[i][a.mult_rank + i] = 1
    etale_rows = [[0] * total.etale_rank for _ in range(b.etale_rank)]
    for i in range(b.etale_rank):
        etale_rows[i][a.etale_rank + i] = 1
    return ExtNuMorphism(total, b,
                         IntMatrix.from_rows(mult_rows),
                         IntMatrix.from_rows(etale_rows))
