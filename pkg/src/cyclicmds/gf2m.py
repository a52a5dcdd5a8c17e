"""Arithmetic in GF(2^m).

Elements are plain integers whose bit ``i`` is the coefficient of ``a^i``,
where ``a`` is the class of ``x`` modulo the field polynomial.  The field
object carries the modulus and performs every operation; :class:`Element`
is a thin wrapper for callers who prefer operator syntax and want mixing of
fields to be caught.

The AES field ``x^8 + x^4 + x^3 + x + 1`` is available as :data:`AES_FIELD`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    BadInput,
    DegreeMismatch,
    DuplicateTerm,
    ElementSyntaxError,
    ExponentOutOfRange,
    FieldMismatch,
    Reducible,
    ZeroInverse,
)

MAX_DEGREE = 16
# Full multiplication tables are built up to this degree (2^16 entries).
TABLE_DEGREE = 8

DEFAULT_MODULI = {8: 0x11B}


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    """Remainder of a divided by b, both polynomials over GF(2)."""
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        a ^= b << (poly_degree(a) - db)
    return a


def find_factor(modulus: int) -> int | None:
    """Return the smallest nontrivial factor of ``modulus``, or None.

    Trial division by every polynomial of degree 1..deg/2.
    """
    m = poly_degree(modulus)
    for deg in range(1, m // 2 + 1):
        for f in range(1 << deg, 1 << (deg + 1)):
            if poly_mod(modulus, f) == 0:
                return f
    return None


_TERM = re.compile(r"^(?:1|a|a\^(\d+))$")


@dataclass(frozen=True)
class GF2m:
    """The field GF(2^m) defined by an irreducible ``modulus`` bitmask.

    Construction validates the degree and proves irreducibility, so a
    ``GF2m`` instance is always a genuine field.
    """

    m: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.m <= MAX_DEGREE:
            raise BadInput(f"extension degree must be in 1..{MAX_DEGREE}, got {self.m}")
        if poly_degree(self.modulus) != self.m:
            raise DegreeMismatch(
                f"modulus {self.modulus:#x} has degree {poly_degree(self.modulus)}, expected {self.m}"
            )
        factor = find_factor(self.modulus)
        if factor is not None:
            raise Reducible(self.modulus, factor)

    @classmethod
    def parse(cls, text: str) -> GF2m:
        """Parse the ``gf(2^m)/0x<modulus>`` text form."""
        match = re.fullmatch(r"\s*gf\(2\^(\d+)\)/0x([0-9a-f]+)\s*", text, re.IGNORECASE)
        if not match:
            raise BadInput(f"bad field text {text!r}; expected gf(2^m)/0x<modulus>")
        return cls(int(match.group(1)), int(match.group(2), 16))

    @classmethod
    def default(cls, m: int) -> GF2m:
        if m not in DEFAULT_MODULI:
            raise BadInput(f"no default modulus for m={m}; supply one explicitly")
        return cls(m, DEFAULT_MODULI[m])

    def __str__(self):
        return f"gf(2^{self.m})/{self.modulus:#x}"

    @property
    def order(self) -> int:
        return 1 << self.m

    def validate(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise FieldMismatch(f"{x:#x} is not an element of {self}")
        return x

    # -- scalar arithmetic --------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return self.validate(x) ^ self.validate(y)

    sub = add

    def mul_reference(self, x: int, y: int) -> int:
        """Shift-and-reduce product; the ground truth behind every table."""
        r = 0
        top = 1 << self.m
        while y:
            if y & 1:
                r ^= x
            y >>= 1
            x <<= 1
            if x & top:
                x ^= self.modulus
        return r

    @cached_property
    def _rows(self):
        # list-of-lists form of the table for fast scalar lookups
        return self.table.tolist() if self.m <= TABLE_DEGREE else None

    def mul(self, x: int, y: int) -> int:
        self.validate(x)
        self.validate(y)
        rows = self._rows
        if rows is not None:
            return rows[x][y]
        return self.mul_reference(x, y)

    def pow(self, x: int, e: int) -> int:
        """``x**e`` by square-and-multiply.  ``pow(0, 0) == 1``."""
        if e < 0:
            raise BadInput("negative exponent; use inv() first")
        self.validate(x)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def inv(self, x: int) -> int:
        if self.validate(x) == 0:
            raise ZeroInverse(f"0 has no inverse in {self}")
        return self.pow(x, self.order - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc ^= self.validate(v)
        return acc

    # -- vectorised arithmetic ---------------------------------------------

    @cached_property
    def table(self) -> np.ndarray:
        """Full multiplication table, only for m <= 8."""
        if self.m > TABLE_DEGREE:
            raise BadInput(f"no multiplication table for m={self.m} > {TABLE_DEGREE}")
        q = self.order
        x = np.repeat(np.arange(q, dtype=np.uint32), q)
        y = np.tile(np.arange(q, dtype=np.uint32), q)
        t = self._mul_vec(x, y).reshape(q, q).astype(np.uint16)
        t.setflags(write=False)
        return t

    def _mul_vec(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=np.uint32), np.asarray(y, dtype=np.uint32))
        x = x.copy()
        y = y.copy()
        r = np.zeros_like(x)
        top = np.uint32(1 << self.m)
        mod = np.uint32(self.modulus)
        for _ in range(self.m):
            r ^= np.where(y & 1, x, 0).astype(np.uint32)
            y >>= 1
            x <<= 1
            x ^= np.where(x & top, mod, 0).astype(np.uint32)
        return r

    def mul_array(self, x, y) -> np.ndarray:
        """Elementwise product of two broadcastable integer arrays."""
        if self.m <= TABLE_DEGREE:
            return self.table[x, y]
        return self._mul_vec(x, y).astype(np.uint16)

    # -- text forms ---------------------------------------------------------

    def parse_element(self, text: str) -> int:
        """Parse the polynomial notation ``1+a^2+a^3``.

        Terms are ``1``, ``a`` or ``a^i`` with ``0 <= i < m``, separated by
        ``+``.  A lone ``0`` denotes the zero element.
        """
        s = text.replace(" ", "")
        if s == "0":
            return 0
        if not s:
            raise ElementSyntaxError("empty element literal")
        bits = 0
        for token in s.split("+"):
            match = _TERM.match(token)
            if not match:
                raise ElementSyntaxError(f"bad term {token!r} in {text!r}")
            if token == "1":
                exp = 0
            elif token == "a":
                exp = 1
            else:
                exp = int(match.group(1))
            if exp >= self.m:
                raise ExponentOutOfRange(f"exponent {exp} in {text!r} is outside 0..{self.m - 1}")
            if bits >> exp & 1:
                raise DuplicateTerm(f"term {token!r} repeated in {text!r}")
            bits |= 1 << exp
        return bits

    def parse_literal(self, text: str) -> int:
        """Parse either a ``0x`` hex literal or the polynomial notation."""
        s = text.strip()
        if s.lower().startswith("0x"):
            try:
                value = int(s, 16)
            except ValueError:
                raise ElementSyntaxError(f"bad hex literal {text!r}") from None
            if value >= self.order:
                raise ExponentOutOfRange(f"{text!r} does not fit in {self}")
            return value
        return self.parse_element(s)

    def format_element(self, x: int) -> str:
        return f"{self.validate(x):#x}"

    def format_poly(self, x: int) -> str:
        self.validate(x)
        if x == 0:
            return "0"
        terms = []
        for i in range(self.m):
            if x >> i & 1:
                terms.append("1" if i == 0 else "a" if i == 1 else f"a^{i}")
        return "+".join(terms)

    def element(self, value) -> Element:
        if isinstance(value, str):
            value = self.parse_literal(value)
        return Element(self, self.validate(int(value)))


AES_FIELD = GF2m(8, 0x11B)
GF2 = GF2m(1, 0b11)


@dataclass(frozen=True)
class Element:
    """A field element bound to its field; arithmetic refuses to mix fields."""

    field: GF2m
    bits: int

    def _other(self, other) -> int:
        if isinstance(other, Element):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")
            return other.bits
        if isinstance(other, int):
            return self.field.validate(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.field, self.bits ^ o)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.field, self.field.mul(self.bits, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.field, self.field.div(self.bits, o))

    def __pow__(self, e: int):
        return Element(self.field, self.field.pow(self.bits, e))

    def inverse(self) -> Element:
        return Element(self.field, self.field.inv(self.bits))

    def __int__(self):
        return self.bits

    def __bool__(self):
        return self.bits != 0

    def __str__(self):
        return self.field.format_element(self.bits)
