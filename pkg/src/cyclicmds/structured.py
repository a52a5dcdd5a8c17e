"""Circulant-family constructors and the permutations behind them.

Every constructor takes a first row ``(c_0, ..., c_{k-1})`` of field
elements and fills the matrix through an index table ``idx`` with
``M[i, j] = row[idx[i, j]]``.  The index tables are exported because the
search campaigns build whole batches of candidates from them at once.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadInput, CycleSyntaxError, NotAFullCycle, NotCoprime, ShapeMismatch
from .gf2m import GF2, GF2m
from .matrix import Matrix
from .report import PropertyReport


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{0, ..., k-1}`` stored as ``images[i] = sigma(i)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise BadInput(f"{images} is not a permutation of 0..{len(images) - 1}")

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i % self.k]

    def inverse(self) -> Permutation:
        inv = [0] * self.k
        for i, s in enumerate(self.images):
            inv[s] = i
        return Permutation(tuple(inv))

    def compose(self, other: Permutation) -> Permutation:
        """``self o other``: apply ``other`` first."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def power(self, n: int) -> Permutation:
        base = self if n >= 0 else self.inverse()
        images = list(range(self.k))
        for _ in range(abs(n)):
            images = [base.images[j] for j in images]
        return Permutation(tuple(images))

    def to_matrix(self, field: GF2m = GF2) -> Matrix:
        """Permutation matrix with a 1 at ``(sigma(j), j)`` for every column j."""
        a = np.zeros((self.k, self.k), dtype=np.int64)
        a[list(self.images), list(range(self.k))] = 1
        return Matrix(field, a)

    @classmethod
    def from_matrix(cls, mat: Matrix) -> Permutation:
        a = mat.array
        if not (np.isin(a, (0, 1)).all() and (a.sum(axis=0) == 1).all() and (a.sum(axis=1) == 1).all()):
            raise BadInput("matrix is not a permutation matrix")
        return cls(tuple(int(np.flatnonzero(a[:, j])[0]) for j in range(mat.k)))

    @classmethod
    def identity(cls, k: int) -> Permutation:
        return cls(tuple(range(k)))


@dataclass(frozen=True)
class KCycle(Permutation):
    """A permutation consisting of a single orbit of length k."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.orbit()) != self.k:
            raise NotAFullCycle(f"{self.images} is not a single {self.k}-cycle")

    def orbit(self, start: int = 0) -> list[int]:
        """``[start, rho(start), rho^2(start), ...]`` until it closes."""
        out = [start]
        nxt = self.images[start]
        while nxt != start and len(out) <= self.k:
            out.append(nxt)
            nxt = self.images[nxt]
        return out

    def __str__(self):
        return "(" + " ".join(map(str, self.orbit())) + ")"

    @classmethod
    def from_orbit(cls, orbit: Sequence[int]) -> KCycle:
        k = len(orbit)
        if sorted(orbit) != list(range(k)):
            raise NotAFullCycle(f"{tuple(orbit)} does not list each of 0..{k - 1} exactly once")
        images = [0] * k
        for a, b in zip(orbit, list(orbit[1:]) + [orbit[0]]):
            images[a] = b
        return cls(tuple(images))

    def inverse(self) -> KCycle:
        return KCycle(Permutation.inverse(self).images)


def parse_cycle(text: str, k: int) -> KCycle:
    """Parse cycle notation such as ``"(0 2 3 1 4)"`` into a k-cycle."""
    match = re.fullmatch(r"\s*\(([\d\s]*)\)\s*", text)
    if not match:
        raise CycleSyntaxError(f"bad cycle {text!r}; expected a single '(i0 i1 ... ik-1)'")
    orbit = [int(t) for t in match.group(1).split()]
    if len(orbit) != k or sorted(orbit) != list(range(k)):
        raise NotAFullCycle(f"{text!r} is not a {k}-cycle on 0..{k - 1}")
    return KCycle.from_orbit(orbit)


def all_k_cycles(k: int):
    """Every k-cycle of S_k, as orbits from 0 in lexicographic order."""
    for rest in itertools.permutations(range(1, k)):
        yield KCycle.from_orbit((0,) + rest)


def rho_from_g(k: int, g: int) -> KCycle:
    """The k-cycle ``(0 g 2g ...)`` mod k whose cyclic matrices are g-circulant."""
    if not 1 <= g < k:
        if k == 1 and g in (0, 1):
            return KCycle((0,))
        raise NotCoprime(f"g={g} must satisfy 1 <= g < k={k}")
    if math.gcd(k, g) != 1:
        raise NotCoprime(f"gcd({k}, {g}) = {math.gcd(k, g)}: (0 g 2g ...) is not a {k}-cycle")
    return KCycle(tuple((i + g) % k for i in range(k)))


# -- index tables -----------------------------------------------------------

def g_circulant_index(k: int, g: int) -> np.ndarray:
    i, j = np.indices((k, k))
    return (j - i * (g % k)) % k


def circulant_index(k: int) -> np.ndarray:
    return g_circulant_index(k, 1)


def left_circulant_index(k: int) -> np.ndarray:
    i, j = np.indices((k, k))
    return (i + j) % k


def cyclic_index(rho: KCycle) -> np.ndarray:
    """``idx[i, j] = rho^{-i}(j)``."""
    k = rho.k
    inv = rho.inverse().images
    idx = np.empty((k, k), dtype=np.int64)
    cur = list(range(k))
    for i in range(k):
        idx[i] = cur
        cur = [inv[x] for x in cur]
    return idx


def _build(field: GF2m, row: Sequence[int], idx: np.ndarray) -> Matrix:
    row = np.asarray([field.validate(int(c)) for c in row], dtype=np.int64)
    if row.size != idx.shape[0]:
        raise ShapeMismatch(f"first row has {row.size} entries, shape needs {idx.shape[0]}")
    return Matrix(field, row[idx])


def circulant(field: GF2m, row: Sequence[int]) -> Matrix:
    """``C(i, j) = c_{j-i}``: each row is the previous one rotated right."""
    return _build(field, row, circulant_index(len(row)))


def left_circulant(field: GF2m, row: Sequence[int]) -> Matrix:
    """``C(i, j) = c_{i+j}``: each row is the previous one rotated left."""
    return _build(field, row, left_circulant_index(len(row)))


def g_circulant(field: GF2m, g: int, row: Sequence[int]) -> Matrix:
    """Each row is the previous one rotated right by g positions.

    g is reduced mod k; g = 0 is accepted and gives k equal rows.
    """
    if g < 0:
        raise BadInput(f"g must be non-negative, got {g}")
    return _build(field, row, g_circulant_index(len(row), g))


def cyclic(field: GF2m, rho: KCycle, row: Sequence[int]) -> Matrix:
    """``C(i, j) = c_{rho^{-i}(j)}``: row i+1 is the rho-permutation of row i."""
    if rho.k != len(row):
        raise ShapeMismatch(f"{rho.k}-cycle with a first row of length {len(row)}")
    return _build(field, row, cyclic_index(rho))


def unit_row(k: int) -> list[int]:
    return [1] + [0] * (k - 1)


def shift_matrix(field: GF2m, k: int) -> Matrix:
    """P = circulant(0, 1, 0, ..., 0)."""
    row = [0] * k
    row[1 % k] ^= 1
    return circulant(field, row)


def q_g(field: GF2m, k: int, g: int) -> Matrix:
    return g_circulant(field, g, unit_row(k))


def q_rho(field: GF2m, rho: KCycle) -> Matrix:
    return cyclic(field, rho, unit_row(rho.k))


# -- cyclic -> circulant reduction -----------------------------------------

def associated_circulant(rho: KCycle, row: Sequence[int]) -> tuple[tuple[int, ...], Permutation]:
    """Return the associated circulant's first row and the column permutation Q.

    The row is ``(c_0, c_{rho(0)}, c_{rho^2(0)}, ...)`` and Q sends column j to
    ``rho^j(0)``, so that ``cyclic(rho, row) @ Q.to_matrix() == circulant(row')``.
    """
    if rho.k != len(row):
        raise ShapeMismatch(f"{rho.k}-cycle with a first row of length {len(row)}")
    orbit = rho.orbit(0)
    return tuple(row[i] for i in orbit), Permutation(tuple(orbit))


def _first_difference(expected: Matrix, actual: Matrix) -> dict | None:
    diff = np.argwhere(expected.array != actual.array)
    if diff.size == 0:
        return None
    i, j = (int(v) for v in diff[0])
    fmt = expected.field.format_element
    return {"entry": [i, j], "expected": fmt(expected[i, j]), "actual": fmt(actual[i, j])}


def q_rho_inverse_law(rho: KCycle, field: GF2m = GF2) -> PropertyReport:
    """Check that Q^{-1} equals cyclic_rho(1, 0, ..., 0)."""
    _, perm = associated_circulant(rho, unit_row(rho.k))
    q_inv = perm.to_matrix(field).inverse()
    witness = _first_difference(q_rho(field, rho), q_inv)
    return PropertyReport("q_rho_inverse_law", witness is None, witness)


def cyclic_structure_decomposition(field: GF2m, rho: KCycle, row: Sequence[int]) -> PropertyReport:
    """Compare cyclic(rho, row) with the sum of c_{rho^i(0)} P^i Q_rho."""
    k = rho.k
    p = shift_matrix(field, k)
    qr = q_rho(field, rho)
    total = Matrix.zeros(field, k)
    p_i = Matrix.identity(field, k)
    for i, idx in enumerate(rho.orbit(0)):
        total = total + (p_i @ qr).scale(row[idx])
        p_i = p_i @ p
    witness = _first_difference(cyclic(field, rho, row), total)
    return PropertyReport("cyclic_structure_decomposition", witness is None, witness)


def g_circulant_decomposition(field: GF2m, g: int, row: Sequence[int]) -> PropertyReport:
    """Compare g_circulant(g, row) with the sum of c_i Q_g P^i."""
    k = len(row)
    p = shift_matrix(field, k)
    qg = q_g(field, k, g)
    total = Matrix.zeros(field, k)
    term = qg
    for c in row:
        total = total + term.scale(c)
        term = term @ p
    witness = _first_difference(g_circulant(field, g, row), total)
    return PropertyReport("g_circulant_decomposition", witness is None, witness)


def shift_law_violation(a: Matrix, g: int) -> dict | None:
    """First entry breaking ``A(i, j) = A(i+1, j+g)`` (indices mod k), or None."""
    k = a.k
    i, j = np.indices((k, k))
    shifted = a.array[(i + 1) % k, (j + g) % k]
    bad = np.argwhere(a.array != shifted)
    if bad.size == 0:
        return None
    r, c = (int(v) for v in bad[0])
    return {"entry": [r, c], "shifted_entry": [(r + 1) % k, (c + g) % k]}


def is_g_circulant(a: Matrix, g: int) -> bool:
    return shift_law_violation(a, g) is None
