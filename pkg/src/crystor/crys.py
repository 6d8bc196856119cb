"""Maximal 1-crystalline torsion submodules and component groups.

Coordinates throughout: the p^m-torsion of the uniformized variety is
(Z/p^m)^{2t} on the basis x_1..x_t (multiplicative part, first t
coordinates) followed by y_1..y_t (etale lifts).  The maximal
1-crystalline submodule always contains the x-span; its y-part is the
kernel of the monodromy pairing mod p^m, and the quotient by the x-span
recovers the p^m-torsion of the component group.

Two deliberately independent routes compute the same objects in several
places: the kernel route vs the cokernel-torsion route for the component
group torsion, the pullback construction vs the brute-force subgroup
enumeration for the maximal submodule itself, and the stabilized
finite-level chain vs the p-primary part for the derived-functor
torsion.  Disagreement between routes is a bug, never tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    FinAbGroup,
    IntMatrix,
    cokernel,
    enumerate_subgroups,
    hnf_rows,
    kernel_mod_n,
    lattice_contains,
    n_torsion,
    p_primary_part,
    quotient_orders,
    require_prime,
    subgroup_elements,
)
from .degen import DegenerationData
from .errors import BadInput, BadLevel, NotStabilized
from .pushout import degeneration_object, star_pullback


@dataclass(frozen=True)
class Crys1Report:
    """Generators and structure of the maximal 1-crystalline submodule.

    ``generators`` are coordinate vectors of length 2t (x-part then
    y-part); ``generator_orders`` aligns with them, so the x-basis
    contributes t generators of order n up front.
    """

    n: int
    t: int
    generators: tuple[tuple[int, ...], ...]
    generator_orders: tuple[int, ...]
    group: FinAbGroup
    is_full: bool

    @property
    def ambient_order(self) -> int:
        return self.n ** (2 * self.t)

    def lattice(self):
        """Canonical HNF basis of the subgroup's lattice in Z^{2t}."""
        dim = 2 * self.t
        rows = [list(g) for g in self.generators] + [
            [self.n if j == i else 0 for j in range(dim)] for i in range(dim)
        ]
        return hnf_rows(rows, dim)

    def describe(self) -> str:
        if not self.generator_orders:
            return "trivial"
        return " ⊕ ".join(f"Z/{d}" for d in self.generator_orders)


def _x_lift(t: int, i: int, n: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(2 * t))


def _y_lift(t: int, vec, n: int) -> tuple[int, ...]:
    return tuple(0 for _ in range(t)) + tuple(x % n for x in vec)


def crys1_torsion(data: DegenerationData, m: int) -> Crys1Report:
    """Maximal 1-crystalline submodule of the p^m-torsion, through the
    pullback along the kernel of the monodromy."""
    obj = degeneration_object(data, m)
    _, inc = star_pullback(obj)
    n = obj.n
    t = data.t
    gens = tuple(_x_lift(t, i, n) for i in range(t)) + tuple(
        _y_lift(t, g, n) for g in inc.generators
    )
    orders = (n,) * t + inc.orders
    group = FinAbGroup.of_orders(orders)
    is_full = all(x % n == 0 for x in data.mu.entries)
    return Crys1Report(n, t, gens, orders, group, is_full)


def oracle_crys1(data: DegenerationData, m: int, budget: int | None = None) -> Crys1Report:
    """Brute-force route: the sum of all crystalline submodules.

    A candidate containing the multiplicative part is the span of the
    x-basis plus lifts of an etale subgroup W; it is 1-crystalline
    exactly when the monodromy kills W.  Summing over every enumerated
    subgroup that passes (closure under sums makes the restriction to
    candidates containing the x-span harmless) gives the maximal one.
    The abstract type of the resulting y-part is read off by counting
    p^k-torsion elements, so no Smith-form machinery is shared with the
    direct route.
    """
    data.validate()
    p, t = data.p, data.t
    if m < 1:
        raise BadLevel("torsion level exponent must be at least 1")
    n = p**m
    subgroups = enumerate_subgroups(n, t, budget=budget)

    # mask of etale vectors killed by the monodromy, by direct evaluation
    mu_rows = data.mu.as_rows()
    killed = set()
    for vec in _all_vectors(n, t):
        if all(sum(r[j] * vec[j] for j in range(t)) % n == 0 for r in mu_rows):
            killed.add(vec)

    picked: list[tuple[int, ...]] = []
    current = frozenset({(0,) * t})
    for gens in subgroups:
        if not all(g in killed for g in gens):
            continue
        new = [g for g in gens if g not in current]
        if new:
            picked.extend(new)
            current = subgroup_elements(tuple(picked), n, t)

    orders_y = _type_by_torsion_count(current, n, p, m, t)
    gens = tuple(_x_lift(t, i, n) for i in range(t)) + tuple(
        _y_lift(t, g, n) for g in picked
    )
    gen_orders = (n,) * t + tuple(
        _element_order(g, n) for g in picked
    )
    group = FinAbGroup.of_orders((n,) * t + orders_y)
    return Crys1Report(n, t, gens, gen_orders, group, len(current) == n**t)


def _all_vectors(n: int, t: int):
    vec = [0] * t
    while True:
        yield tuple(vec)
        i = t - 1
        while i >= 0 and vec[i] == n - 1:
            vec[i] = 0
            i -= 1
        if i < 0:
            return
        vec[i] += 1


def _element_order(vec, n: int) -> int:
    from math import gcd

    g = n
    for x in vec:
        g = gcd(g, x)
    return n // g


def _type_by_torsion_count(elements, n: int, p: int, m: int, t: int) -> tuple[int, ...]:
    """Invariant factors of a subgroup of (Z/n)^t from its p^k-torsion
    counts: lambda_k = log_p #S[p^k] has increments counting the cyclic
    factors of order at least p^k."""
    lam = []
    for k in range(m + 1):
        pk = p**k
        count = sum(
            1 for e in elements if all((x * pk) % n == 0 for x in e)
        )
        exponent = 0
        while count > 1:
            if count % p:
                raise AssertionError("torsion count is not a p-power")
            count //= p
            exponent += 1
        lam.append(exponent)
    delta = [lam[k] - lam[k - 1] for k in range(1, m + 1)] + [0]
    orders = []
    for k in range(1, m + 1):
        orders.extend([p**k] * (delta[k - 1] - delta[k]))
    return tuple(orders)


# ---------------------------------------------------------------------------
# component groups


def component_group(data: DegenerationData) -> FinAbGroup:
    """Cokernel of the monodromy pairing."""
    data.validate()
    return cokernel(data.mu)


def phi_n(data: DegenerationData, m: int) -> FinAbGroup:
    """p^m-torsion of the component group, via the kernel of the
    monodromy mod p^m; the cokernel-torsion route must agree."""
    data.validate()
    if m < 1:
        raise BadLevel("torsion level exponent must be at least 1")
    n = data.p**m
    ker_group, _ = kernel_mod_n(data.mu, n)
    assert ker_group == n_torsion(component_group(data), n), (
        "kernel route disagrees with cokernel-torsion route"
    )
    return ker_group


def phi_formula_check(data: DegenerationData, m: int) -> tuple[FinAbGroup, bool]:
    """Quotient of the maximal submodule by the x-span, compared with
    the p^m-torsion of the component group."""
    rep = crys1_torsion(data, m)
    n, t = rep.n, rep.t
    dim = 2 * t
    sub_rows = [
        [1 if j == i else 0 for j in range(dim)] for i in range(t)
    ] + [
        [n if j == t + i else 0 for j in range(dim)] for i in range(t)
    ]
    quotient = FinAbGroup.of_orders(quotient_orders(rep.lattice(), sub_rows, dim))
    return quotient, quotient == phi_n(data, m)


# ---------------------------------------------------------------------------
# stabilization in the level


def _stabilized_phi(data: DegenerationData, cap: int) -> tuple[FinAbGroup, int]:
    """First level m with phi_m == phi_{m+1}; the chain is monotone, so
    one repeat means it is constant from there on."""
    if cap < 2:
        raise NotStabilized(1, cap)
    prev = phi_n(data, 1)
    last_growth = 1
    for m in range(2, cap + 1):
        cur = phi_n(data, m)
        if cur == prev:
            return prev, m - 1
        prev = cur
        last_growth = m
    raise NotStabilized(last_growth, cap)


def r1crys1_tors(data: DegenerationData, cap: int = 12) -> FinAbGroup:
    """Torsion of the first derived functor on the Tate module: the
    stabilized finite-level chain, which must equal the p-primary part
    of the component group."""
    stable, _ = _stabilized_phi(data, cap)
    assert stable == p_primary_part(component_group(data), data.p), (
        "stabilized chain disagrees with the p-primary part"
    )
    return stable


# ---------------------------------------------------------------------------
# Tate module


@dataclass(frozen=True)
class TateReport:
    """Free part of the maximal 1-crystalline submodule of the Tate
    module, plus the finite-level compatibility evidence."""

    rank: int
    weight: int
    levels_checked: int
    reduction_compatible: bool
    y_part_vanishes: bool


def crys1_tate_module(data: DegenerationData, levels: int | None = None) -> TateReport:
    """Rank-t free module of twist weight 1.

    Verifies the finite levels cohere: reduction sends each level's
    maximal submodule into the next one down, and the y-parts die once
    the level clears the largest p-power invariant.
    """
    data.validate()
    p, t = data.p, data.t
    v_max = 0
    exp = component_group(data).exponent()
    while exp % p == 0:
        exp //= p
        v_max += 1
    m_top = levels if levels is not None else max(6, v_max + 1)

    compatible = True
    reports = {m: crys1_torsion(data, m) for m in range(1, m_top + 1)}
    for m in range(1, m_top):
        coarse = reports[m].lattice()
        n_small = p**m
        for g in reports[m + 1].generators:
            reduced = tuple(x % n_small for x in g)
            if not lattice_contains(coarse, reduced, 2 * t):
                compatible = False

    top = reports[m_top]
    y_dead = all(
        all(x % p == 0 for x in g[t:]) for g in top.generators
    ) if m_top > v_max else False
    return TateReport(t, 1, m_top, compatible, y_dead)


# ---------------------------------------------------------------------------
# the long exact sequence at finite level


@dataclass(frozen=True)
class LevelExactness:
    """Exactness evidence for 0 -> (Z/p^m)^t -> Crys1 -> Phi[p^m] -> 0."""

    m: int
    injective: bool
    composite_zero: bool
    orders_match: bool
    surjective: bool

    def ok(self) -> bool:
        return (self.injective and self.composite_zero
                and self.orders_match and self.surjective)


@dataclass(frozen=True)
class LesReport:
    """Finite-level truncation of the long exact sequence of the
    maximal-submodule functor on the Tate module."""

    cap: int
    stabilized_at: int
    tate_rank: int
    rational_rank: int
    divisible_rank: int
    colimit_torsion: FinAbGroup
    r1_torsion: FinAbGroup
    levels: tuple[LevelExactness, ...]
    exact: bool


def les_report(data: DegenerationData, cap: int = 12) -> LesReport:
    data.validate()
    t = data.t
    stable, stab_level = _stabilized_phi(data, cap)
    r1 = r1crys1_tors(data, cap)

    levels = []
    for m in range(1, min(stab_level + 1, cap) + 1):
        n = data.p**m
        rep = crys1_torsion(data, m)
        basis = rep.lattice()
        dim = 2 * t
        x_rows = [[1 if j == i else 0 for j in range(dim)] for i in range(t)]
        sub_rows = x_rows + [
            [n if j == t + i else 0 for j in range(dim)] for i in range(t)
        ]
        injective = all(lattice_contains(basis, r, dim) for r in x_rows)
        x_basis = hnf_rows([list(r) for r in sub_rows], dim)
        composite_zero = all(lattice_contains(x_basis, r, dim) for r in x_rows)
        phi_m = phi_n(data, m)
        orders_match = rep.group.order == n**t * phi_m.order
        quotient = FinAbGroup.of_orders(quotient_orders(basis, sub_rows, dim))
        surjective = quotient == phi_m
        levels.append(
            LevelExactness(m, injective, composite_zero, orders_match, surjective)
        )

    exact = all(l.ok() for l in levels) and stable == r1
    return LesReport(
        cap=cap,
        stabilized_at=stab_level,
        tate_rank=t,
        rational_rank=t,
        divisible_rank=t,
        colimit_torsion=stable,
        r1_torsion=r1,
        levels=tuple(levels),
        exact=exact,
    )


# ---------------------------------------------------------------------------
# rank-one closed form


def tate_closed_form(v: int, p: int, m: int) -> Crys1Report:
    """The rank-one answer in closed form.

    With w the p-adic valuation of v: everything for m <= w, else the
    multiplicative line plus p^{m-w} times the etale generator.
    """
    if v < 1:
        raise BadInput("the period valuation must be a positive integer")
    require_prime(p)
    if m < 1:
        raise BadLevel("torsion level exponent must be at least 1")
    n = p**m
    w = 0
    x = v
    while x % p == 0:
        x //= p
        w += 1
    if m <= w:
        gens = ((1, 0), (0, 1))
        orders = (n, n)
        full = True
    elif w > 0:
        gens = ((1, 0), (0, p ** (m - w)))
        orders = (n, p**w)
        full = False
    else:
        gens = ((1, 0),)
        orders = (n,)
        full = False
    return Crys1Report(n, 1, gens, orders, FinAbGroup.of_orders(orders), full)
