import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclicmds.errors import BadInput, CycleSyntaxError, NotAFullCycle, NotCoprime, ShapeMismatch
from cyclicmds.gf2m import AES_FIELD, GF2
from cyclicmds.matrix import Matrix
from cyclicmds.structured import (
    KCycle,
    Permutation,
    all_k_cycles,
    associated_circulant,
    circulant,
    cyclic,
    cyclic_structure_decomposition,
    g_circulant,
    g_circulant_decomposition,
    is_g_circulant,
    left_circulant,
    parse_cycle,
    q_g,
    q_rho,
    q_rho_inverse_law,
    rho_from_g,
    shift_matrix,
)

from oracles import circulant_rows, cyclic_rows, g_circulant_rows

F = AES_FIELD
SYMBOLS = [0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77, 0x88]


def rows_for(k, seed=0):
    rng = np.random.default_rng(seed)
    return rng.integers(0, 256, size=k).tolist()


def test_parse_cycle():
    rho = parse_cycle("(0 2 3 1 4)", 5)
    assert [rho(i) for i in (0, 2, 3, 1, 4)] == [2, 3, 1, 4, 0]
    assert str(rho) == "(0 2 3 1 4)"
    assert parse_cycle("(0 1 2)", 3).images == (1, 2, 0)
    with pytest.raises(CycleSyntaxError):
        parse_cycle("(0 2)(1 3)", 4)
    with pytest.raises(NotAFullCycle):
        parse_cycle("(0 1 2)", 4)
    with pytest.raises(NotAFullCycle):
        KCycle((1, 0, 2))


def test_rho_from_g():
    assert str(rho_from_g(5, 3)) == "(0 3 1 4 2)"
    assert str(rho_from_g(4, 1)) == "(0 1 2 3)"
    with pytest.raises(NotCoprime):
        rho_from_g(6, 2)
    with pytest.raises(NotCoprime):
        rho_from_g(6, 0)


def test_constructors_match_oracles():
    row = SYMBOLS[:5]
    assert circulant(F, row).array.tolist() == circulant_rows(row)
    assert left_circulant(F, row).array.tolist() == [[row[(i + j) % 5] for j in range(5)] for i in range(5)]
    assert g_circulant(F, 2, row).array.tolist() == g_circulant_rows(row, 2)
    assert cyclic(F, parse_cycle("(0 2 3 1 4)", 5), row).array.tolist() == cyclic_rows([0, 2, 3, 1, 4], row)


def test_constructor_errors():
    with pytest.raises(ShapeMismatch):
        cyclic(F, parse_cycle("(0 1 2)", 3), [1, 2])
    with pytest.raises(BadInput):
        g_circulant(F, -1, [1, 2])


def test_g_one_and_shift_cycle_give_circulant():
    row = rows_for(6)
    assert g_circulant(F, 1, row) == circulant(F, row)
    assert cyclic(F, rho_from_g(6, 1), row) == circulant(F, row)
    assert g_circulant(F, 7, row) == g_circulant(F, 1, row)


def test_g_zero_repeats_the_first_row():
    a = g_circulant(F, 0, [1, 2, 3])
    assert a.array.tolist() == [[1, 2, 3]] * 3


def test_worked_cyclic_example_follows_the_definition():
    # row 4 is (c_3, c_4, c_2, c_0, c_1) by C(i, j) = c_{rho^-i(j)}
    rho = parse_cycle("(0 2 3 1 4)", 5)
    a = cyclic(F, rho, [0, 1, 2, 3, 4])
    assert a.array.tolist() == [
        [0, 1, 2, 3, 4],
        [4, 3, 0, 2, 1],
        [1, 2, 4, 0, 3],
        [3, 0, 1, 4, 2],
        [2, 4, 3, 1, 0],
    ]


def test_associated_circulant_worked_example():
    rho = parse_cycle("(0 2 3 1 4)", 5)
    row, q = associated_circulant(rho, ["c0", "c1", "c2", "c3", "c4"])
    assert row == ("c0", "c2", "c3", "c1", "c4")
    ones = {tuple(map(int, x)) for x in np.argwhere(q.to_matrix().array == 1)}
    assert ones == {(0, 0), (2, 1), (3, 2), (1, 3), (4, 4)}
    expected_inverse = [
        [1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1],
    ]
    assert q.to_matrix().inverse().array.tolist() == expected_inverse
    assert q_rho(GF2, rho).array.tolist() == expected_inverse


def test_associated_circulant_of_shift_cycle_is_trivial():
    rho = rho_from_g(4, 1)
    row, q = associated_circulant(rho, [5, 6, 7, 8])
    assert row == (5, 6, 7, 8)
    assert q == Permutation.identity(4)


def test_six_by_six_cyclic_reduces_to_the_circulant():
    p = F.parse_element
    rho = parse_cycle("(0 2 4 3 5 1)", 6)
    cyc_row = [p(t) for t in ("1", "a^2+a^3+a^6+a^7", "1", "1+a^2+a^3+a^5+a^6+a^7", "a", "a^5+a")]
    circ_row = [p(t) for t in ("1", "1", "a", "1+a^2+a^3+a^5+a^6+a^7", "a+a^5", "a^2+a^3+a^6+a^7")]
    row, q = associated_circulant(rho, cyc_row)
    assert list(row) == circ_row
    assert cyclic(F, rho, cyc_row) @ q.to_matrix(F) == circulant(F, circ_row)


@pytest.mark.parametrize("k", range(1, 7))
def test_cyclic_times_q_is_circulant_for_every_k_cycle(k):
    row = SYMBOLS[:k]
    for rho in all_k_cycles(k):
        circ_row, q = associated_circulant(rho, row)
        assert cyclic(F, rho, row) @ q.to_matrix(F) == circulant(F, circ_row)
        qm = q_rho(F, rho)
        assert (qm @ qm.T).is_identity()


@pytest.mark.parametrize("k", range(1, 6))
def test_q_is_the_unique_permutation(k):
    row = SYMBOLS[:k]
    for rho in all_k_cycles(k):
        c = cyclic(F, rho, row)
        found = []
        for images in itertools.permutations(range(k)):
            prod = c @ Permutation(images).to_matrix(F)
            if prod[0, 0] == row[0] and is_g_circulant(prod, 1):
                found.append(images)
        assert found == [associated_circulant(rho, row)[1].images]


def test_all_k_cycles_counts():
    assert [len(list(all_k_cycles(k))) for k in range(1, 7)] == [1, 1, 2, 6, 24, 120]


def test_q_rho_inverse_law_over_all_5_cycles():
    assert q_rho_inverse_law(parse_cycle("(0 2 3 1 4)", 5))
    for rho in all_k_cycles(5):
        assert q_rho_inverse_law(rho)


@pytest.mark.parametrize("k", range(1, 6))
def test_cyclic_structure_decomposition_exhaustive(k):
    for rho in all_k_cycles(k):
        assert cyclic_structure_decomposition(F, rho, SYMBOLS[:k])


def test_q_g_and_g_circulant_decomposition():
    qg = q_g(F, 5, 3)
    # row i has its 1 in column 3i, so sigma(j) = 2j mod 5
    assert Permutation.from_matrix(qg).images == (0, 2, 4, 1, 3)
    for k in range(1, 9):
        for g in range(1, max(k, 2)):
            if math.gcd(g, k) == 1:
                assert g_circulant_decomposition(F, g, rows_for(k, g))


def test_permutation_matrix_round_trip():
    sigma = Permutation((2, 0, 3, 1))
    m = sigma.to_matrix(F)
    assert Permutation.from_matrix(m) == sigma
    assert m.inverse() == sigma.inverse().to_matrix(F)
    assert sigma.compose(sigma.inverse()) == Permutation.identity(4)
    assert sigma.power(4) == sigma.power(-4) == Permutation.identity(4)
    with pytest.raises(BadInput):
        Permutation.from_matrix(Matrix(F, [[1, 1], [0, 1]]))


@settings(max_examples=150)
@given(st.integers(1, 8).flatmap(
    lambda k: st.tuples(st.just(k), st.integers(0, 3 * k), st.lists(st.integers(0, 255), min_size=k, max_size=k))))
def test_shift_law_and_cyclic_form(case):
    k, g, row = case
    a = g_circulant(F, g, row)
    assert is_g_circulant(a, g)
    if math.gcd(g % k, k) == 1 and (g % k or k == 1):
        assert cyclic(F, rho_from_g(k, g % k or 1), row) == a


def test_shift_matrix_is_circulant_unit_shift():
    p = shift_matrix(F, 4)
    assert p.array.tolist() == [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]
    assert shift_matrix(F, 1).is_identity()
