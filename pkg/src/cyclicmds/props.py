"""Property checkers and executable forms of the circulant-family theorems.

The checkers (:func:`is_mds`, :func:`is_orthogonal`, :func:`is_involutory`,
:func:`branch_numbers`) work on any :class:`Matrix`.  The ``*_law``
functions each take random or chosen inputs, compute both sides of one
identity independently and return a :class:`PropertyReport`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadInput, BadOrder, BudgetExceeded, NotCoprime, NotOrthogonal, ShapeMismatch
from .gf2m import GF2m
from .matrix import Matrix, _eliminate_det, submatrix
from .report import PropertyReport
from .structured import (
    KCycle,
    Permutation,
    associated_circulant,
    circulant,
    cyclic,
    g_circulant,
    is_g_circulant,
    shift_law_violation,
    shift_matrix,
)

DEFAULT_BUDGET = 1 << 20


def minor_count(k: int) -> int:
    """Number of square submatrices of a k x k matrix: C(2k, k) - 1."""
    return sum(math.comb(k, i) ** 2 for i in range(1, k + 1))


def iter_minors(k: int):
    """Yield ``(rows, cols)`` by size, then row set, then column set (all lexicographic)."""
    for size in range(1, k + 1):
        subsets = list(itertools.combinations(range(k), size))
        for rows in subsets:
            for cols in subsets:
                yield rows, cols


def first_singular_minor(a: Matrix):
    """Return ``(rows, cols, checked)`` for the first singular minor, or ``(None, None, checked)``."""
    field, arr, k = a.field, a.array, a.k
    checked = 0
    # 1x1 minors in canonical order are just the entries in row-major order
    zeros = np.flatnonzero(arr.ravel() == 0)
    if zeros.size:
        i, j = divmod(int(zeros[0]), k)
        return (i,), (j,), i * k + j + 1
    checked = k * k
    for size in range(2, k + 1):
        subsets = list(itertools.combinations(range(k), size))
        for rows in subsets:
            block = arr[list(rows)]
            for cols in subsets:
                checked += 1
                if _eliminate_det(field, block[:, list(cols)]) == 0:
                    return rows, cols, checked
    return None, None, checked


def is_mds(a: Matrix) -> PropertyReport:
    """A matrix is MDS when every square submatrix is nonsingular.

    On failure the witness is the first singular minor in canonical order.
    On success it records how many minors were checked.
    """
    rows, cols, checked = first_singular_minor(a)
    if rows is None:
        return PropertyReport("mds", True, {"minors_checked": checked})
    return PropertyReport("mds", False, {"rows": list(rows), "cols": list(cols), "minors_checked": checked})


def _off_identity(prod: Matrix) -> dict | None:
    bad = np.argwhere(prod.array != np.eye(prod.k, dtype=prod.array.dtype))
    if bad.size == 0:
        return None
    i, j = (int(v) for v in bad[0])
    return {"entry": [i, j], "value": prod.field.format_element(prod[i, j])}


def is_orthogonal(a: Matrix) -> PropertyReport:
    """A A^T = I.  For square matrices this already implies A^T A = I."""
    witness = _off_identity(a @ a.T)
    return PropertyReport("orthogonal", witness is None, witness)


def is_involutory(a: Matrix) -> PropertyReport:
    witness = _off_identity(a @ a)
    return PropertyReport("involutory", witness is None, witness)


# -- branch numbers ---------------------------------------------------------

@dataclass(frozen=True)
class BranchNumbers:
    differential: int
    linear: int
    exhaustive: bool = True


def _vectors(q: int, k: int, start: int, stop: int) -> np.ndarray:
    n = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return ((n[:, None] // powers[None, :]) % q).astype(np.uint16)


def _min_weight_sum(field: GF2m, m: np.ndarray, chunk: int = 1 << 14) -> int:
    k = m.shape[0]
    q = field.order
    best = 2 * k + 1
    for start in range(1, q ** k, chunk):
        v = _vectors(q, k, start, min(start + chunk, q ** k))
        mv = np.bitwise_xor.reduce(field.mul_array(m[None, :, :], v[:, None, :]), axis=2)
        wt = np.count_nonzero(v, axis=1) + np.count_nonzero(mv, axis=1)
        best = min(best, int(wt.min()))
    return best


def branch_numbers(a: Matrix, budget: int = DEFAULT_BUDGET) -> BranchNumbers:
    """Differential and linear branch numbers by full enumeration.

    Weight counts nonzero field coordinates.  Refuses with
    :class:`BudgetExceeded` when q^k exceeds ``budget``; use :func:`is_mds`
    for large instances (an MDS matrix has both branch numbers k + 1).
    """
    total = a.field.order ** a.k
    if total > budget:
        raise BudgetExceeded(f"{total} vectors exceed the branch-number budget of {budget}")
    return BranchNumbers(
        differential=_min_weight_sum(a.field, a.array),
        linear=_min_weight_sum(a.field, a.array.T),
    )


def random_permutation(rng: np.random.Generator, k: int) -> Permutation:
    return Permutation(tuple(int(x) for x in rng.permutation(k)))


def mds_branch_consistency(a: Matrix, trials: int = 20, seed: int = 0,
                           budget: int = DEFAULT_BUDGET) -> PropertyReport:
    """Branch numbers and the MDS verdict survive ``A -> P A Q`` for random P, Q."""
    rng = np.random.Generator(np.random.Philox(seed))
    base = branch_numbers(a, budget)
    base_mds = is_mds(a).verdict
    for t in range(trials):
        p = random_permutation(rng, a.k)
        q = random_permutation(rng, a.k)
        b = p.to_matrix(a.field) @ a @ q.to_matrix(a.field)
        other = branch_numbers(b, budget)
        if other != base or is_mds(b).verdict != base_mds:
            return PropertyReport("mds_branch_consistency", False, {
                "trial": t, "P": list(p.images), "Q": list(q.images),
                "before": [base.differential, base.linear],
                "after": [other.differential, other.linear],
            })
    return PropertyReport("mds_branch_consistency", True, {"trials": trials,
                                                           "branch": [base.differential, base.linear]})


# -- g-circulant lemmas ----------------------------------------------------

def gcd_obstruction(field: GF2m, g: int, row: Sequence[int]) -> PropertyReport:
    """A g-circulant with gcd(k, g) > 1 repeats its first row, so it is not MDS.

    Row ``k / gcd(k, g)`` equals row 0; the witness is the 2x2 minor on those
    two rows and columns 0, 1, which is singular.
    """
    k = len(row)
    if k < 2 or math.gcd(k, g) == 1:
        raise NotCoprime(f"gcd({k}, {g}) = 1: rows of a g-circulant are not forced to repeat")
    a = g_circulant(field, g, row)
    period = k // math.gcd(k, g)
    rows, cols = [0, period], [0, 1]
    identical = bool(np.array_equal(a.array[0], a.array[period]))
    singular = submatrix(a, rows, cols).determinant() == 0
    mds = is_mds(a)
    return PropertyReport("gcd_obstruction", identical and singular and not mds.verdict,
                          {"identical_rows": rows, "rows": rows, "cols": cols})


def gh_product_law(field: GF2m, g: int, h: int, row_a: Sequence[int], row_b: Sequence[int]) -> PropertyReport:
    """g-circulant times h-circulant is gh-circulant; A B^T is circulant for equal g."""
    k = len(row_a)
    if len(row_b) != k:
        raise ShapeMismatch("first rows differ in length")
    prod = g_circulant(field, g, row_a) @ g_circulant(field, h, row_b)
    bad = shift_law_violation(prod, (g * h) % k)
    if bad is not None:
        return PropertyReport("gh_product_law", False, {"part": "product", **bad})
    same_g = g_circulant(field, g, row_a) @ g_circulant(field, g, row_b).T
    bad = shift_law_violation(same_g, 1)
    if bad is not None:
        return PropertyReport("gh_product_law", False, {"part": "a_bt_circulant", **bad})
    return PropertyReport("gh_product_law", True)


def conjugates_shift(a: Matrix, g: int) -> bool:
    """Whether P A == A P^g with P the cyclic shift matrix."""
    p = shift_matrix(a.field, a.k)
    return p @ a == a @ p.power(g % a.k)


def shift_conjugation_law(field: GF2m, g: int, row: Sequence[int]) -> PropertyReport:
    """For A = g_circulant(g, row): P A = A P^g, and the converse test agrees."""
    a = g_circulant(field, g, row)
    if not conjugates_shift(a, g):
        return PropertyReport("shift_conjugation_law", False, {"part": "forward"})
    if not is_g_circulant(a, g):
        return PropertyReport("shift_conjugation_law", False, {"part": "converse"})
    return PropertyReport("shift_conjugation_law", True)


def _check_power_of_two(row: Sequence[int], g: int, d: int) -> int:
    k = len(row)
    if d < 0 or k != 1 << d:
        raise BadOrder(f"order {k} is not 2^{d}")
    if math.gcd(g, k) != 1:
        raise NotCoprime(f"gcd({g}, {k}) != 1")
    return k


def scalar_power_law(field: GF2m, row: Sequence[int], g: int, d: int) -> tuple[PropertyReport, int]:
    """A^(2^d) equals (sum of c_i^(2^d)) I for a 2^d x 2^d g-circulant A."""
    k = _check_power_of_two(row, g, d)
    a = g_circulant(field, g, row)
    for _ in range(d):
        a = a @ a
    scalar = field.sum(field.pow(c, k) for c in row)
    expected = Matrix.identity(field, k).scale(scalar)
    if a == expected:
        return PropertyReport("scalar_power_law", True, {"scalar": field.format_element(scalar)}), scalar
    i, j = (int(v) for v in np.argwhere(a.array != expected.array)[0])
    return PropertyReport("scalar_power_law", False, {
        "entry": [i, j], "expected": field.format_element(expected[i, j]),
        "actual": field.format_element(a[i, j]),
    }), scalar


def det_formula(field: GF2m, row: Sequence[int], g: int, d: int) -> tuple[int, int]:
    """Return ``((sum c_i)^(2^d), det A)`` for A = g_circulant(g, row) of order 2^d."""
    k = _check_power_of_two(row, g, d)
    formula = field.pow(field.sum(row), k)
    return formula, g_circulant(field, g, row).determinant()


def divisibility_law(g: int, d: int) -> PropertyReport:
    """2^d divides (g^(2^d) - 1)/(g - 1) for odd g > 1."""
    if g <= 1 or g % 2 == 0:
        raise BadInput(f"g must be an odd integer > 1, got {g}")
    if d < 1:
        raise BadInput(f"d must be >= 1, got {d}")
    quotient = (g ** (1 << d) - 1) // (g - 1)
    factors = [g ** (1 << i) + 1 for i in range(d)]
    product_ok = math.prod(factors) == quotient
    even = all(f % 2 == 0 for f in factors)
    verdict = quotient % (1 << d) == 0 and product_ok and even
    return PropertyReport("divisibility_law", verdict, {
        "quotient": str(quotient),
        "two_adic_valuation": (quotient & -quotient).bit_length() - 1,
    })


# -- permutation equivalence -----------------------------------------------

def affine_relation(row_a: Sequence[int], row_b: Sequence[int]) -> tuple[int, int] | None:
    """Find (a, b), gcd(b, k) = 1, with ``row_b[i] == row_a[(b*i + a) % k]`` for all i."""
    k = len(row_a)
    if len(row_b) != k:
        raise ShapeMismatch("first rows differ in length")
    for b in range(k):
        if math.gcd(b, k) != 1:
            continue
        for a in range(k):
            if all(row_b[i] == row_a[(b * i + a) % k] for i in range(k)):
                return a, b
    return None


def perm_equiv_circulant(row_a: Sequence[int], row_b: Sequence[int]) -> PropertyReport:
    """Permutation equivalence of two circulants via an affine index map.

    A false verdict means no affine relabelling of the first row exists,
    which decides equivalence when the entries are pairwise distinct.
    """
    found = affine_relation(row_a, row_b)
    if found is None:
        return PropertyReport("perm_equiv_circulant", False)
    return PropertyReport("perm_equiv_circulant", True, {"a": found[0], "b": found[1]})


def _perm_matrix(field: GF2m, ones: Sequence[tuple[int, int]], k: int) -> Matrix:
    arr = np.zeros((k, k), dtype=np.int64)
    for i, j in ones:
        arr[i, j] = 1
    return Matrix(field, arr)


def circulant_equivalence_witness(field: GF2m, k: int, a: int, b: int) -> tuple[Matrix, Matrix]:
    """P1, P2 with P1 C1 P2 = C2 when row2[i] = row1[(b*i + a) % k].

    C2(i, j) = C1(b*i, b*j + a), so P1 picks row b*i and P2 column b*j + a.
    """
    p1 = _perm_matrix(field, [(i, (b * i) % k) for i in range(k)], k)
    p2 = _perm_matrix(field, [((b * j + a) % k, j) for j in range(k)], k)
    return p1, p2


def perm_equiv_cyclic(field: GF2m, rho_a: KCycle, rho_b: KCycle, row: Sequence[int]) -> PropertyReport:
    """Decide cyclic_rhoA ~ cyclic_rhoB through their associated circulants.

    On success the witness carries permutations P1, P3 (as images, matrix
    convention 1 at (sigma(j), j)) with P1 cyclic_rhoA P3 = cyclic_rhoB,
    rebuilt as P3 = Q_A P2 Q_B^{-1} and re-checked by direct product.
    """
    k = len(row)
    row_a, qa = associated_circulant(rho_a, row)
    row_b, qb = associated_circulant(rho_b, row)
    found = affine_relation(row_a, row_b)
    if found is None:
        return PropertyReport("perm_equiv_cyclic", False)
    a, b = found
    p1, p2 = circulant_equivalence_witness(field, k, a, b)
    qa_m, qb_m = qa.to_matrix(field), qb.to_matrix(field)
    p3 = qa_m @ p2 @ qb_m.inverse()
    ok_circ = p1 @ circulant(field, row_a) @ p2 == circulant(field, row_b)
    ok_cyc = p1 @ cyclic(field, rho_a, row) @ p3 == cyclic(field, rho_b, row)
    witness = {
        "a": a, "b": b,
        "P1": list(Permutation.from_matrix(p1).images),
        "P2": list(Permutation.from_matrix(p2).images),
        "P3": list(Permutation.from_matrix(p3).images),
    }
    return PropertyReport("perm_equiv_cyclic", ok_circ and ok_cyc, witness)


# -- orthogonal 2^d x 2^d obstruction ---------------------------------------

def orthogonality_obstruction_2d(field: GF2m, row: Sequence[int], g: int, d: int) -> PropertyReport:
    """Show why an orthogonal 2^d x 2^d g-circulant (d >= 2) is not MDS.

    Orthogonality forces (c_0 + c_2 + ...)(c_1 + c_3 + ...) = 0.  The even
    rows against the even (or odd) columns form the g-circulant on
    (c_0, c_2, ...) (or (c_1, c_3, ...)), whose determinant is that partial
    sum to the power 2^(d-1), so one of the two blocks is singular.
    """
    k = _check_power_of_two(row, g, d)
    if d < 2:
        raise BadOrder("the obstruction needs d >= 2; 2x2 orthogonal MDS circulants exist")
    a = g_circulant(field, g, row)
    if not is_orthogonal(a):
        raise NotOrthogonal(f"g-circulant({g}) of {[field.format_element(c) for c in row]} is not orthogonal")
    fmt = field.format_element
    even, odd = field.sum(row[0::2]), field.sum(row[1::2])
    product = field.mul(even, odd)
    half = k // 2
    rows = list(range(0, k, 2))
    blocks = {}
    for name, offset, half_row in (("even", 0, row[0::2]), ("odd", 1, row[1::2])):
        cols = list(range(offset, k, 2))
        block = submatrix(a, rows, cols)
        blocks[name] = {
            "cols": cols,
            "det": block.determinant(),
            "is_sub_g_circulant": block == g_circulant(field, g % half, half_row),
        }
    singular = "even" if blocks["even"]["det"] == 0 else "odd" if blocks["odd"]["det"] == 0 else None
    mds = is_mds(a)
    verdict = (product == 0 and singular is not None and not mds.verdict
               and all(b["is_sub_g_circulant"] for b in blocks.values()))
    witness = {
        "even_sum": fmt(even),
        "odd_sum": fmt(odd),
        "product": fmt(product),
        "singular_block": singular,
        "rows": rows,
        "cols": blocks[singular]["cols"] if singular else None,
        "mds_witness": mds.witness,
    }
    return PropertyReport("orthogonality_obstruction_2d", verdict, witness)


CHECKS = {
    "mds": is_mds,
    "orthogonal": is_orthogonal,
    "involutory": is_involutory,
}
