"""Maximal submodule computations against frozen values and the
independent enumeration oracle."""

from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from crystor.abelian import FinAbGroup, IntMatrix, smith_normal_form
from crystor.crys import (
    Crys1Report,
    component_group,
    crys1_tate_module,
    crys1_torsion,
    les_report,
    oracle_crys1,
    phi_formula_check,
    phi_n,
    r1crys1_tors,
    tate_closed_form,
)
from crystor.degen import DegenerationData
from crystor.errors import BadInput, BudgetExceeded, NotStabilized


def data_of(p, rows):
    return DegenerationData(p, IntMatrix.from_rows(rows))


def spd_rows(draw_int, t, bound=9):
    rows = [[0] * t for _ in range(t)]
    for i in range(t):
        for j in range(i):
            rows[i][j] = rows[j][i] = draw_int(-bound, bound)
    for i in range(t):
        rows[i][i] = sum(abs(x) for x in rows[i]) + draw_int(1, bound)
    return rows


# --- crys1_torsion ----------------------------------------------------


def test_tate_curve_low_level_is_full():
    rep = crys1_torsion(data_of(5, [[5]]), 1)
    assert rep.is_full
    assert rep.group == FinAbGroup.of_orders([5, 5])
    assert rep.group.order == 25


def test_tate_curve_level_two():
    rep = crys1_torsion(data_of(5, [[5]]), 2)
    assert rep.generators == ((1, 0), (0, 5))
    assert rep.generator_orders == (25, 5)
    assert rep.group == FinAbGroup.of_orders([25, 5])
    assert not rep.is_full


def test_rank_two_diagonal():
    rep = crys1_torsion(data_of(2, [[2, 0], [0, 4]]), 2)
    assert rep.group == FinAbGroup.of_orders([4, 4, 2, 4])
    assert rep.group.order == 2**7
    assert rep.n == 4 and rep.t == 2
    assert rep.ambient_order == 4**4


def test_order_law_snf_route():
    for rows, p, m in [([[5]], 5, 2), ([[2, 1], [1, 2]], 3, 1),
                       ([[6, 1], [1, 4]], 2, 3), ([[12]], 2, 4)]:
        data = data_of(p, rows)
        rep = crys1_torsion(data, m)
        n = p**m
        diag = smith_normal_form(data.mu).diagonal()
        expected = n ** data.t
        for d in diag:
            expected *= gcd(d, n)
        assert rep.group.order == expected


def test_x_span_always_inside():
    rep = crys1_torsion(data_of(3, [[2, 1], [1, 2]]), 2)
    from crystor.abelian import lattice_contains

    basis = rep.lattice()
    for i in range(rep.t):
        e = [1 if j == i else 0 for j in range(2 * rep.t)]
        assert lattice_contains(basis, e, 2 * rep.t)


# --- the oracle -------------------------------------------------------


def test_oracle_unit_valuation_keeps_only_torus():
    rep = oracle_crys1(data_of(5, [[3]]), 1)
    assert rep.group == FinAbGroup.cyclic(5)
    assert rep.generators == ((1, 0),)
    assert not rep.is_full


def test_oracle_full_when_valuation_matches_level():
    rep = oracle_crys1(data_of(2, [[8]]), 3)
    assert rep.is_full
    assert rep.group == FinAbGroup.of_orders([8, 8])


def test_oracle_rank_two_order_27():
    rep = oracle_crys1(data_of(3, [[2, 1], [1, 2]]), 1)
    assert rep.group.order == 27
    # the kernel line (1, 1) must be in the span
    from crystor.abelian import lattice_contains

    assert lattice_contains(rep.lattice(), (0, 0, 1, 1), 4)


def test_oracle_budget_guard():
    with pytest.raises(BudgetExceeded):
        oracle_crys1(data_of(2, [[8, 1], [1, 8]]), 3, budget=63)


def test_oracle_agrees_on_frozen_cases():
    for rows, p, m in [([[5]], 5, 1), ([[5]], 5, 2), ([[3]], 5, 1),
                       ([[2, 0], [0, 4]], 2, 2), ([[2, 1], [1, 2]], 3, 1),
                       ([[6, 1], [1, 4]], 2, 2)]:
        data = data_of(p, rows)
        direct = crys1_torsion(data, m)
        oracle = oracle_crys1(data, m)
        assert direct.group == oracle.group
        assert direct.lattice() == oracle.lattice()
        assert direct.is_full == oracle.is_full


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_oracle_agreement_random(data):
    t = data.draw(st.integers(1, 2))
    p = data.draw(st.sampled_from([2, 3, 5]))
    m = data.draw(st.integers(1, 2 if p == 5 else 3))
    if (p**m) ** t > 2**12:
        return
    d = data_of(p, spd_rows(lambda a, b: data.draw(st.integers(a, b)), t))
    direct = crys1_torsion(d, m)
    oracle = oracle_crys1(d, m)
    assert direct.group == oracle.group
    assert direct.lattice() == oracle.lattice()


# --- component groups -------------------------------------------------


def test_component_group_values():
    assert component_group(data_of(5, [[5]])) == FinAbGroup.cyclic(5)
    assert component_group(data_of(2, [[1, 0], [0, 1]])).is_trivial()
    assert component_group(data_of(3, [[2, 1], [1, 2]])) == FinAbGroup.cyclic(3)


def test_phi_n_values():
    assert phi_n(data_of(5, [[5]]), 1) == FinAbGroup.cyclic(5)
    assert phi_n(data_of(5, [[5]]), 3) == FinAbGroup.cyclic(5)
    assert phi_n(data_of(7, [[1, 0], [0, 1]]), 2).is_trivial()


def test_phi_two_routes_random():
    from crystor.abelian import kernel_mod_n, n_torsion
    import random

    rng = random.Random(11)
    for _ in range(40):
        t = rng.randint(1, 3)
        rows = spd_rows(lambda a, b: rng.randint(a, b), t)
        data = data_of(rng.choice([2, 3, 5]), rows)
        m = rng.randint(1, 4)
        n = data.p**m
        via_kernel = kernel_mod_n(data.mu, n)[0]
        via_coker = n_torsion(component_group(data), n)
        assert via_kernel == via_coker
        assert phi_n(data, m) == via_kernel


def test_phi_formula_check_values():
    q, ok = phi_formula_check(data_of(5, [[5]]), 2)
    assert ok and q == FinAbGroup.cyclic(5)
    q, ok = phi_formula_check(data_of(3, [[1, 0], [0, 1]]), 2)
    assert ok and q.is_trivial()
    q, ok = phi_formula_check(data_of(2, [[2, 0], [0, 4]]), 2)
    assert ok and q == FinAbGroup.of_orders([2, 4])


# --- stabilization ----------------------------------------------------


def test_r1_twelve():
    assert r1crys1_tors(data_of(2, [[12]]), 4) == FinAbGroup.cyclic(4)
    assert r1crys1_tors(data_of(3, [[12]]), 3) == FinAbGroup.cyclic(3)


def test_r1_trivial_on_identity():
    assert r1crys1_tors(data_of(2, [[1, 0], [0, 1]])).is_trivial()


def test_r1_not_stabilized_reports_growth():
    with pytest.raises(NotStabilized) as exc:
        r1crys1_tors(data_of(2, [[8]]), 3)
    assert exc.value.last_growth == 3
    assert exc.value.cap == 3
    # one more level is enough
    assert r1crys1_tors(data_of(2, [[8]]), 4) == FinAbGroup.cyclic(8)


def test_r1_equals_p_primary_random():
    import random

    from crystor.abelian import p_primary_part

    rng = random.Random(7)
    for _ in range(25):
        t = rng.randint(1, 3)
        data = data_of(
            rng.choice([2, 3, 5]), spd_rows(lambda a, b: rng.randint(a, b), t)
        )
        got = r1crys1_tors(data, 24)
        assert got == p_primary_part(component_group(data), data.p)


# --- Tate module ------------------------------------------------------


def test_tate_module_rank_and_flags():
    rep = crys1_tate_module(data_of(5, [[5]]))
    assert rep.rank == 1 and rep.weight == 1
    assert rep.levels_checked == 6
    assert rep.reduction_compatible
    assert rep.y_part_vanishes


def test_tate_module_rank_three():
    rep = crys1_tate_module(data_of(2, [[2, 1, 0], [1, 3, 1], [0, 1, 4]]))
    assert rep.rank == 3
    assert rep.reduction_compatible


def test_tate_module_high_valuation_needs_higher_level():
    rep = crys1_tate_module(data_of(2, [[2**7]]))
    assert rep.levels_checked == 8
    assert rep.y_part_vanishes


# --- long exact sequence ----------------------------------------------


def test_les_tate_curve():
    rep = les_report(data_of(5, [[5]]))
    assert rep.exact
    assert rep.divisible_rank == 1
    assert rep.colimit_torsion == FinAbGroup.cyclic(5)
    assert rep.r1_torsion == FinAbGroup.cyclic(5)
    assert all(l.ok() for l in rep.levels)


def test_les_identity_trivial():
    rep = les_report(data_of(3, [[1, 0], [0, 1]]))
    assert rep.exact
    assert rep.colimit_torsion.is_trivial()


def test_les_rank_two():
    rep = les_report(data_of(2, [[2, 0], [0, 4]]))
    assert rep.exact
    assert rep.colimit_torsion == FinAbGroup.of_orders([2, 4])
    assert rep.r1_torsion == FinAbGroup.of_orders([2, 4])


def test_les_not_stabilized():
    with pytest.raises(NotStabilized):
        les_report(data_of(2, [[2**13]]), cap=12)


def test_les_flags_random():
    import random

    rng = random.Random(23)
    for _ in range(15):
        t = rng.randint(1, 3)
        data = data_of(
            rng.choice([2, 3, 5]), spd_rows(lambda a, b: rng.randint(a, b), t)
        )
        rep = les_report(data, 24)
        assert rep.exact


# --- closed form ------------------------------------------------------


def test_closed_form_cases():
    full = tate_closed_form(5, 5, 1)
    assert full.is_full and full.group.order == 25
    mixed = tate_closed_form(5, 5, 2)
    assert mixed.generators == ((1, 0), (0, 5))
    assert mixed.generator_orders == (25, 5)
    assert mixed.describe() == "Z/25 ⊕ Z/5"
    unit = tate_closed_form(3, 5, 4)
    assert unit.group == FinAbGroup.cyclic(625)
    assert unit.generators == ((1, 0),)


def test_closed_form_rejects_bad_valuation():
    with pytest.raises(BadInput):
        tate_closed_form(0, 5, 1)


def test_closed_form_matches_direct_sample():
    for p in (2, 3, 5):
        for v in range(1, 13):
            for m in (1, 2, 3):
                direct = crys1_torsion(data_of(p, [[v]]), m)
                closed = tate_closed_form(v, p, m)
                assert direct.group == closed.group, (p, v, m)
                assert direct.lattice() == closed.lattice(), (p, v, m)
