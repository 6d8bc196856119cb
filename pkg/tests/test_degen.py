"""Degeneration data: validation, torsion extension class, Raynaud
decomposition."""

import pytest
from hypothesis import given, settings, strategies as st

from crystor.abelian import IntMatrix
from crystor.degen import (
    DegenerationData,
    default_unit_symbols,
    monodromy_map,
    raynaud_decompose,
    recombine,
    torsion_module,
)
from crystor.errors import (
    BadLevel,
    NotPositiveDefinite,
    NotPrime,
    NotSymmetric,
    ShapeMismatch,
)
from crystor.kummer import is_one_crystalline, monodromy_of


def data_of(p, rows, units=None):
    return DegenerationData(p, IntMatrix.from_rows(rows), units)


def spd_matrices(t, bound=9):
    """Diagonally dominant symmetric draws; dominance forces positive
    definiteness."""

    def build(diag_extra, off):
        rows = [[0] * t for _ in range(t)]
        for i in range(t):
            for j in range(i):
                rows[i][j] = rows[j][i] = off[i * (i - 1) // 2 + j]
        for i in range(t):
            rows[i][i] = sum(abs(x) for x in rows[i]) + diag_extra[i]
        return rows

    k = t * (t - 1) // 2
    return st.builds(
        build,
        st.lists(st.integers(1, bound), min_size=t, max_size=t),
        st.lists(st.integers(-bound, bound), min_size=k, max_size=k),
    )


def test_validate_tate_curve():
    data_of(5, [[5]]).validate()


def test_validate_rejects_zero_valuation():
    with pytest.raises(NotPositiveDefinite) as exc:
        data_of(5, [[0]]).validate()
    assert exc.value.minor_index == 1
    assert exc.value.minor_value == 0


def test_validate_reports_failing_minor():
    with pytest.raises(NotPositiveDefinite) as exc:
        data_of(3, [[1, 2], [2, 1]]).validate()
    assert exc.value.minor_index == 2
    assert exc.value.minor_value == -3
    assert "minor 2 is -3" in str(exc.value)


def test_validate_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        data_of(3, [[2, 1], [0, 2]]).validate()


def test_validate_rejects_composite_p():
    with pytest.raises(NotPrime):
        data_of(6, [[1]]).validate()


def test_validate_rejects_bad_symbol_grid():
    with pytest.raises(ShapeMismatch):
        data_of(2, [[1, 0], [0, 1]], (("a",), ("b",))).validate()


def test_default_symbols_symmetric():
    grid = default_unit_symbols(3)
    assert grid[0][1] == grid[1][0] == "u1_2"
    assert grid[2][2] == "u3_3"
    flat = {s for row in grid for s in row}
    assert len(flat) == 6  # t(t+1)/2 fresh names


def test_torsion_module_tate_curve():
    tors = torsion_module(data_of(5, [[5]]), 2)
    assert tors.n == 25
    assert tors.ambient_order() == 25**2
    c = tors.ext.entry(0, 0)
    assert c.val == 5
    assert c.units == (("u1_1", 1),)
    assert tors.x_labels == ("x1",) and tors.y_labels == ("y1",)


def test_torsion_module_val_vanishes_at_matching_level():
    tors = torsion_module(data_of(2, [[8]]), 3)
    assert tors.ext.entry(0, 0).val == 0
    assert not tors.ext.entry(0, 0).is_zero()  # unit symbol survives


def test_torsion_module_rank_two_vals():
    tors = torsion_module(data_of(3, [[2, 1], [1, 2]]), 1)
    assert tors.ext.val_matrix().as_rows() == ((2, 1), (1, 2))


def test_torsion_module_rejects_bad_level():
    with pytest.raises(BadLevel):
        torsion_module(data_of(5, [[5]]), 0)


def test_monodromy_of_torsion_class_is_mu_mod_level():
    data = data_of(2, [[6, 1], [1, 3]])
    tors = torsion_module(data, 2)
    assert monodromy_of(tors.ext).matrix == data.mu.mod(4)


def test_raynaud_tate_curve():
    eta1, nu = raynaud_decompose(data_of(5, [[5]]), 2)
    assert is_one_crystalline(eta1)
    assert eta1.entry(0, 0).units == (("u1_1", 1),)
    assert nu.matrix.as_rows() == ((5,),)
    assert nu.source.invariant_factors == (25,)


def test_raynaud_identity_matrix_kills_monodromy():
    eta1, nu = raynaud_decompose(data_of(2, [[2, 0], [0, 2]]), 1)
    assert nu.is_zero()


@settings(max_examples=40)
@given(st.data())
def test_recombination_identity(data):
    t = data.draw(st.integers(1, 3))
    p = data.draw(st.sampled_from([2, 3, 5]))
    m = data.draw(st.integers(1, 6))
    d = data_of(p, data.draw(spd_matrices(t)))
    eta1, nu = raynaud_decompose(d, m)
    assert recombine(eta1, nu) == torsion_module(d, m).ext


@settings(max_examples=30)
@given(st.data())
def test_level_reduction_compatibility(data):
    t = data.draw(st.integers(1, 2))
    p = data.draw(st.sampled_from([2, 3]))
    m = data.draw(st.integers(1, 4))
    d = data_of(p, data.draw(spd_matrices(t)))
    fine = torsion_module(d, m + 1)
    coarse = torsion_module(d, m)
    assert fine.ext.reduce_to(p**m) == coarse.ext


@given(spd_matrices(3, bound=6))
def test_spd_strategy_actually_validates(rows):
    data_of(2, rows).validate()
