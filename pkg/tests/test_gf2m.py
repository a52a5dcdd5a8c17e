import pytest
from hypothesis import given, settings, strategies as st

from cyclicmds.errors import (
    BadInput,
    DegreeMismatch,
    DuplicateTerm,
    ElementSyntaxError,
    ExponentOutOfRange,
    FieldMismatch,
    Reducible,
    ZeroInverse,
)
from cyclicmds.gf2m import AES_FIELD, GF2, GF2m, find_factor

from oracles import OracleField, poly_mul_mod

F = AES_FIELD
GF4 = GF2m(2, 0b111)
GF16 = GF2m(4, 0b10011)

elements = st.integers(0, 255)


def test_field_construction():
    assert F.order == 256
    assert str(F) == "gf(2^8)/0x11b"
    assert GF2m(1, 0x2).order == 2
    assert GF2m.default(8) == F
    with pytest.raises(BadInput):
        GF2m.default(4)


def test_reducible_modulus_has_witness():
    with pytest.raises(Reducible) as info:
        GF2m(4, 0x18)
    assert info.value.factor == 0b10


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        GF2m(4, 0x11B)


@pytest.mark.parametrize("modulus", [0x13, 0x19, 0x1F])
def test_irreducible_quartics(modulus):
    assert find_factor(modulus) is None
    GF2m(4, modulus)


def test_find_factor_against_brute_force():
    # a degree-m polynomial is reducible iff some polynomial of degree 1..m-1 divides it
    def brute(p):
        m = p.bit_length() - 1
        for d in range(2, 1 << m):
            r = p
            while r.bit_length() >= d.bit_length():
                r ^= d << (r.bit_length() - d.bit_length())
            if r == 0:
                return True
        return False

    for p in range(4, 1 << 8):
        assert (find_factor(p) is not None) == brute(p), hex(p)


def test_parse_field_text():
    assert GF2m.parse("gf(2^4)/0x13") == GF16
    assert GF2m.parse(str(F)) == F
    with pytest.raises(BadInput):
        GF2m.parse("GF(16)")


def test_add_examples():
    assert F.add(0x57, 0x57) == 0
    assert F.add(0x57, 0x83) == 0xD4
    assert F.add(0x9A, 0) == 0x9A


def test_mul_examples():
    assert F.mul(0x02, 0x80) == 0x1B
    assert F.mul(0x53, 0xCA) == 0x01
    assert F.mul(0x77, 0x01) == 0x77


def test_inv_and_pow_examples():
    assert F.inv(0x01) == 0x01
    assert F.inv(0x53) == 0xCA
    with pytest.raises(ZeroInverse):
        F.inv(0)
    assert F.pow(0x02, 8) == 0x1B
    assert F.pow(0, 0) == 1
    assert F.pow(0x35, 1) == 0x35


def test_parse_element_examples():
    assert F.parse_element("1+a^2+a^3+a^4+a^6") == 0x5D
    assert F.parse_element("a") == 0x02
    assert F.parse_element("a^2+a^3+a^6+a^7") == 0xCC
    assert F.parse_element("0") == 0
    assert F.parse_literal("0x5d") == 0x5D
    assert F.parse_literal("a+1") == 0x03


@pytest.mark.parametrize("text, err", [
    ("", ElementSyntaxError),
    ("b", ElementSyntaxError),
    ("a^8", ExponentOutOfRange),
    ("a+a", DuplicateTerm),
    ("0x100", ExponentOutOfRange),
    ("0xzz", ElementSyntaxError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        F.parse_literal(text)


def test_validate_rejects_out_of_range():
    with pytest.raises(FieldMismatch):
        GF4.validate(4)


def test_element_wrapper_refuses_mixed_fields():
    x, y = F.element(3), GF16.element(3)
    assert (x * x).bits == F.mul(3, 3)
    with pytest.raises(FieldMismatch):
        x + y


@pytest.mark.parametrize("field", [GF2, GF4, GF16, GF2m(3, 0b1011)])
def test_small_fields_exhaustively_match_oracle(field):
    oracle = OracleField(field.m, field.modulus)
    for x in range(field.order):
        for y in range(field.order):
            assert field.mul(x, y) == oracle.mul(x, y)
        if x:
            assert field.mul(x, field.inv(x)) == 1


def test_table_agrees_with_reference_multiplication():
    for field in (GF16, F):
        table = field.table
        for x in range(field.order):
            for y in range(0, field.order, 7):
                assert table[x, y] == field.mul_reference(x, y)


def test_mul_array_for_wide_field():
    import numpy as np

    wide = GF2m(10, 0b10000001001)
    xs = np.arange(0, 1024, 41, dtype=np.uint16)
    ys = np.arange(5, 1024, 37, dtype=np.uint16)[: xs.size]
    got = wide.mul_array(xs, ys)
    assert [int(v) for v in got] == [poly_mul_mod(int(a), int(b), wide.modulus) for a, b in zip(xs, ys)]


@given(elements, elements)
def test_mul_matches_polynomial_oracle(x, y):
    assert F.mul(x, y) == poly_mul_mod(x, y, 0x11B)


@given(elements, elements, elements)
def test_field_laws(x, y, z):
    assert F.mul(x, y) == F.mul(y, x)
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(x, x) == 0


@given(st.integers(1, 255))
def test_inverse_and_fermat(x):
    assert F.mul(x, F.inv(x)) == 1
    assert F.pow(x, 255) == 1
    assert F.div(x, x) == 1


@given(elements, st.integers(0, 600))
def test_pow_matches_repeated_multiplication(x, e):
    expected = 1
    for _ in range(e % 40):
        expected = F.mul(expected, x)
    assert F.pow(x, e % 40) == expected


@given(elements)
def test_text_round_trip(x):
    assert F.parse_literal(F.format_element(x)) == x
    assert F.parse_element(F.format_poly(x)) == x


@settings(max_examples=50)
@given(st.integers(0, 15), st.integers(0, 15))
def test_frobenius_is_additive(x, y):
    assert GF16.pow(GF16.add(x, y), 2) == GF16.add(GF16.pow(x, 2), GF16.pow(y, 2))
