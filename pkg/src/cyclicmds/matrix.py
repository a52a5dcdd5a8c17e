"""Dense square matrices over GF(2^m).

Entries live in a read-only ``uint16`` numpy array; every operation returns
a new :class:`Matrix`.  Products and eliminations are vectorised through
:meth:`GF2m.mul_array`, which is what keeps the exhaustive campaigns in
:mod:`cyclicmds.search` tractable in pure Python.
"""

from __future__ import annotations

import numpy as np

from .errors import BadIndexSet, FieldMismatch, ShapeMismatch, Singular
from .gf2m import GF2m

MAX_ORDER = 32
DTYPE = np.uint16


def xor_matmul(field: GF2m, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over the field for raw arrays.

    Works on stacks: ``a`` of shape (..., n, l) and ``b`` of shape (..., l, p).
    """
    prod = field.mul_array(a[..., :, :, None], b[..., None, :, :])
    return np.bitwise_xor.reduce(prod, axis=-2)


class Matrix:
    """A k x k matrix over one GF(2^m), 1 <= k <= 32."""

    __slots__ = ("field", "_a")

    def __init__(self, field: GF2m, entries):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ShapeMismatch(f"expected a square matrix, got shape {a.shape}")
        if not 1 <= a.shape[0] <= MAX_ORDER:
            raise ShapeMismatch(f"order {a.shape[0]} outside 1..{MAX_ORDER}")
        if a.size and (a.min() < 0 or a.max() >= field.order):
            raise FieldMismatch(f"matrix entries do not all lie in {field}")
        self.field = field
        self._a = a.astype(DTYPE)
        self._a.setflags(write=False)

    @classmethod
    def _wrap(cls, field: GF2m, a: np.ndarray) -> Matrix:
        # trusted constructor: skips validation
        obj = cls.__new__(cls)
        obj.field = field
        obj._a = np.ascontiguousarray(a, dtype=DTYPE)
        obj._a.setflags(write=False)
        return obj

    @classmethod
    def identity(cls, field: GF2m, k: int) -> Matrix:
        return cls(field, np.eye(k, dtype=np.int64))

    @classmethod
    def zeros(cls, field: GF2m, k: int) -> Matrix:
        return cls(field, np.zeros((k, k), dtype=np.int64))

    @property
    def k(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        return self._a

    def rows(self) -> list[list[int]]:
        return self._a.tolist()

    def __getitem__(self, ij) -> int:
        i, j = ij
        return int(self._a[i, j])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash((self.field, self._a.tobytes()))

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows()})"

    def _check_compatible(self, other: Matrix):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.k != other.k:
            raise ShapeMismatch(f"order {self.k} vs {other.k}")

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __add__(self, other: Matrix) -> Matrix:
        self._check_compatible(other)
        return Matrix._wrap(self.field, self._a ^ other._a)

    def scale(self, c: int) -> Matrix:
        self.field.validate(c)
        return Matrix._wrap(self.field, self.field.mul_array(c, self._a))

    @property
    def T(self) -> Matrix:
        return transpose(self)

    def power(self, e: int) -> Matrix:
        result = Matrix.identity(self.field, self.k)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return np.array_equal(self._a, np.eye(self.k, dtype=DTYPE))

    def determinant(self) -> int:
        return determinant(self)

    def inverse(self) -> Matrix:
        return inverse(self)

    def submatrix(self, rows, cols) -> Matrix:
        return submatrix(self, rows, cols)

    # -- text forms ---------------------------------------------------------

    def to_json(self) -> dict:
        fmt = self.field.format_element
        return {
            "field": str(self.field),
            "k": self.k,
            "rows": [[fmt(x) for x in row] for row in self.rows()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Matrix:
        field = GF2m.parse(obj["field"])
        rows = [[field.parse_literal(x) for x in row] for row in obj["rows"]]
        mat = cls(field, rows)
        if mat.k != obj.get("k", mat.k):
            raise ShapeMismatch(f"declared k={obj['k']} but rows give {mat.k}")
        return mat

    def format_table(self, poly: bool = False) -> str:
        fmt = self.field.format_poly if poly else self.field.format_element
        cells = [[fmt(x) for x in row] for row in self.rows()]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    a._check_compatible(b)
    return Matrix._wrap(a.field, xor_matmul(a.field, a.array, b.array))


def transpose(a: Matrix) -> Matrix:
    return Matrix._wrap(a.field, a.array.T)


def _eliminate_det(field: GF2m, a: np.ndarray) -> int:
    """Determinant of a raw square array by Gaussian elimination.

    The pivot is the first nonzero entry at or below the diagonal.  Row swaps
    carry no sign in characteristic 2.
    """
    a = a.astype(DTYPE, copy=True)
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        p = c + int(nz[0])
        if p != c:
            a[[c, p]] = a[[p, c]]
        pivot = int(a[c, c])
        det = field.mul(det, pivot)
        if c + 1 < n:
            factors = field.mul_array(a[c + 1:, c], field.inv(pivot))
            a[c + 1:, c:] ^= field.mul_array(factors[:, None], a[c, c:][None, :])
    return det


def determinant(a: Matrix) -> int:
    return _eliminate_det(a.field, a.array)


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse.  Raises :class:`Singular` when det(a) = 0."""
    field, n = a.field, a.k
    aug = np.concatenate([a.array, np.eye(n, dtype=DTYPE)], axis=1)
    for c in range(n):
        nz = np.flatnonzero(aug[c:, c])
        if nz.size == 0:
            raise Singular("matrix is singular")
        p = c + int(nz[0])
        if p != c:
            aug[[c, p]] = aug[[p, c]]
        aug[c] = field.mul_array(field.inv(int(aug[c, c])), aug[c])
        others = np.flatnonzero(aug[:, c])
        others = others[others != c]
        if others.size:
            aug[others] ^= field.mul_array(aug[others, c][:, None], aug[c][None, :])
    return Matrix._wrap(field, aug[:, n:])


def check_index_set(indices, k: int) -> tuple[int, ...]:
    idx = tuple(int(i) for i in indices)
    if not idx:
        raise BadIndexSet("index set is empty")
    if any(i < 0 or i >= k for i in idx):
        raise BadIndexSet(f"indices {idx} out of range for order {k}")
    if any(x >= y for x, y in zip(idx, idx[1:])):
        raise BadIndexSet(f"indices {idx} are not strictly increasing")
    return idx


def submatrix(a: Matrix, rows, cols) -> Matrix:
    rows = check_index_set(rows, a.k)
    cols = check_index_set(cols, a.k)
    if len(rows) != len(cols):
        raise BadIndexSet(f"{len(rows)} rows but {len(cols)} columns")
    return Matrix._wrap(a.field, a.array[np.ix_(rows, cols)])
