"""Seeded batches of theorem checks, shared by ``cyclicmds verify`` and the tests."""

from __future__ import annotations

import math

import numpy as np

from .gf2m import AES_FIELD, GF2m
from .props import (
    det_formula,
    divisibility_law,
    gcd_obstruction,
    gh_product_law,
    perm_equiv_circulant,
    perm_equiv_cyclic,
    scalar_power_law,
    shift_conjugation_law,
)
from .report import PropertyReport
from .search import cyclic_equivalence_theorem_check, reference_instances
from .structured import (
    all_k_cycles,
    cyclic_structure_decomposition,
    g_circulant,
    g_circulant_decomposition,
    parse_cycle,
    q_rho_inverse_law,
    rho_from_g,
)

DET_CASES = ((2, 1), (2, 3), (3, 3), (3, 5))


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def _row(rng, field: GF2m, k: int) -> list[int]:
    return [int(c) for c in rng.integers(0, field.order, size=k)]


def distinct_row(rng, field: GF2m, k: int) -> list[int]:
    """k pairwise distinct field elements, standing in for symbols c_0..c_{k-1}."""
    return [int(c) for c in rng.choice(field.order, size=k, replace=False)]


def _tally(name: str, failures: list, trials: int) -> PropertyReport:
    return PropertyReport(name, not failures, {"trials": trials, "failures": failures[:5]})


def det_formula_suite(field: GF2m, trials: int, seed: int) -> list[PropertyReport]:
    out = []
    for d, g in DET_CASES:
        rng = _rng(seed, 1, d, g)
        bad = []
        for _ in range(trials):
            row = _row(rng, field, 1 << d)
            formula, det = det_formula(field, row, g, d)
            if formula != det:
                bad.append([field.format_element(c) for c in row])
        out.append(_tally(f"det_formula d={d} g={g}", bad, trials))
    return out


def scalar_power_suite(field: GF2m, trials: int, seed: int) -> list[PropertyReport]:
    out = []
    for d, g in DET_CASES:
        rng = _rng(seed, 2, d, g)
        bad = []
        for _ in range(trials):
            row = _row(rng, field, 1 << d)
            report, scalar = scalar_power_law(field, row, g, d)
            # the scalar is also (sum c_i)^(2^d) by the Frobenius map
            if not report or scalar != field.pow(field.sum(row), 1 << d):
                bad.append([field.format_element(c) for c in row])
        out.append(_tally(f"scalar_power_law d={d} g={g}", bad, trials))
    return out


def shift_conjugation_suite(field: GF2m, trials: int, seed: int, max_k: int = 8) -> list[PropertyReport]:
    out = []
    for k in range(1, max_k + 1):
        rng = _rng(seed, 3, k)
        bad = []
        gs = [g for g in range(1, k) if math.gcd(g, k) == 1] or [1]
        for t in range(trials):
            g = gs[t % len(gs)]
            row = _row(rng, field, k)
            if not shift_conjugation_law(field, g, row):
                bad.append({"g": g, "row": [field.format_element(c) for c in row]})
        out.append(_tally(f"shift_conjugation_law k={k}", bad, trials))
    return out


def gh_product_suite(field: GF2m, trials: int, seed: int, ks=(5, 6)) -> list[PropertyReport]:
    out = []
    for k in ks:
        rng = _rng(seed, 4, k)
        bad = []
        for _ in range(trials):
            g, h = (int(x) for x in rng.integers(0, k, size=2))
            rep = gh_product_law(field, g, h, _row(rng, field, k), _row(rng, field, k))
            if not rep:
                bad.append({"g": g, "h": h, **rep.witness})
        out.append(_tally(f"gh_product_law k={k}", bad, trials))
    return out


def structure_suite(field: GF2m, seed: int, max_k: int = 5) -> list[PropertyReport]:
    """Cyclic decomposition over every k-cycle, and the g-circulant form, for k <= max_k."""
    out = []
    for k in range(1, max_k + 1):
        rng = _rng(seed, 5, k)
        bad = []
        count = 0
        for rho in all_k_cycles(k):
            row = distinct_row(rng, field, k)
            count += 1
            if not cyclic_structure_decomposition(field, rho, row):
                bad.append({"rho": str(rho)})
            if not q_rho_inverse_law(rho, field):
                bad.append({"rho": str(rho), "part": "q_inverse"})
        out.append(_tally(f"cyclic_structure_decomposition k={k}", bad, count))
        bad = []
        gs = [g for g in range(1, k) if math.gcd(g, k) == 1] or [1]
        for g in gs:
            row = distinct_row(rng, field, k)
            if not g_circulant_decomposition(field, g, row):
                bad.append({"g": g, "part": "sum c_i Q_g P^i"})
            rho = rho_from_g(k, g)
            if not cyclic_structure_decomposition(field, rho, row):
                bad.append({"g": g, "part": "via rho_from_g"})
        out.append(_tally(f"g_circulant_decomposition k={k}", bad, len(gs)))
    return out


def divisibility_suite(max_g: int = 31, max_d: int = 8) -> list[PropertyReport]:
    bad = []
    for g in range(3, max_g + 1, 2):
        for d in range(1, max_d + 1):
            if not divisibility_law(g, d):
                bad.append({"g": g, "d": d})
    return [_tally("divisibility_law", bad, len(range(3, max_g + 1, 2)) * max_d)]


def run_lemmas(field: GF2m = AES_FIELD, trials: int = 1000, seed: int = 0) -> list[PropertyReport]:
    return [
        *det_formula_suite(field, trials, seed),
        *scalar_power_suite(field, trials, seed),
        *shift_conjugation_suite(field, trials, seed),
        *gh_product_suite(field, trials, seed),
        *structure_suite(field, seed),
        *divisibility_suite(),
    ]


# -- permutation equivalence -------------------------------------------------

# Index patterns of the two associated circulants in the worked 5x5 example.
WORKED_PAIR = ((0, 2, 4, 1, 3), (0, 3, 1, 4, 2))
WORKED_CYCLES = ("(0 2 4 1 3)", "(0 3 1 4 2)")


def worked_example_rows(field: GF2m = AES_FIELD):
    symbols = [field.parse_element(t) for t in ("1", "a", "a^2", "a^3", "a^4")]
    return symbols, [symbols[i] for i in WORKED_PAIR[0]], [symbols[i] for i in WORKED_PAIR[1]]


def run_equivalence(field: GF2m | None = None, trials: int = 1000, seed: int = 0) -> list[PropertyReport]:
    """Permutation-equivalence examples and the orthogonal-MDS iff for non-2^d orders.

    ``field`` drives the exhaustive k = 5 check; the worked examples use the
    AES field so five distinct symbols are available.
    """
    aes = AES_FIELD
    symbols, row_a, row_b = worked_example_rows(aes)
    out = []
    rep = perm_equiv_circulant(row_a, row_b)
    out.append(PropertyReport("perm_equiv_circulant worked pair", rep.verdict, rep.witness))
    rho1, rho2 = (parse_cycle(t, 5) for t in WORKED_CYCLES)
    rep = perm_equiv_cyclic(aes, rho1, rho2, symbols)
    out.append(PropertyReport("perm_equiv_cyclic worked pair", rep.verdict, rep.witness))

    small = field or GF2m(2, 0b111)
    rep = cyclic_equivalence_theorem_check(small, 5, exhaustive=True)
    out.append(PropertyReport(f"cyclic_equivalence k=5 exhaustive over {small}", rep.verdict, rep.witness))
    rep = cyclic_equivalence_theorem_check(GF2m(4, 0b10011), 3, trials, seed)
    out.append(PropertyReport("cyclic_equivalence k=3 random over gf(2^4)/0x13", rep.verdict, rep.witness))
    inst = reference_instances(aes)
    rep = cyclic_equivalence_theorem_check(aes, 6, trials=min(trials, 50), seed=seed,
                                           fixed=[(inst["rho"], inst["cyclic_row"])])
    out.append(PropertyReport("cyclic_equivalence k=6 with the 6x6 example", rep.verdict, rep.witness))
    return out


def gcd_obstruction_suite(field: GF2m, trials: int, seed: int, k: int = 6, gs=(2, 3, 4)) -> list[PropertyReport]:
    """g-circulants with gcd(k, g) > 1 repeat a row and so fail MDS."""
    out = []
    for g in gs:
        rng = _rng(seed, 6, k, g)
        bad = []
        for _ in range(trials):
            row = _row(rng, field, k)
            if not gcd_obstruction(field, g, row):
                bad.append([field.format_element(c) for c in row])
        out.append(_tally(f"gcd_obstruction k={k} g={g}", bad, trials))
    return out
