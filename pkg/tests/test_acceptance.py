"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import json
import time

import pytest

from conftest import ACCEPTANCE_LINES
from cyclicmds import suites
from cyclicmds.cli import main
from cyclicmds.gf2m import AES_FIELD, GF2m
from cyclicmds.matrix import Matrix
from cyclicmds.props import (
    branch_numbers,
    is_involutory,
    is_mds,
    is_orthogonal,
    mds_branch_consistency,
    perm_equiv_circulant,
    perm_equiv_cyclic,
)
from cyclicmds.search import (
    CampaignSpec,
    Shape,
    check_certificate,
    cyclic_equivalence_theorem_check,
    reference_instances,
    run_campaign,
    verify_nonexistence_2d,
)
from cyclicmds.structured import Permutation, associated_circulant, cyclic, parse_cycle

from oracles import OracleField, branch_number, is_mds as oracle_is_mds

GF4 = GF2m(2, 0b111)
GF16 = GF2m(4, 0b10011)


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_golden_examples():
    start = time.perf_counter()
    inst = reference_instances(AES_FIELD)
    c1, c1_left, c2 = inst["C1"], inst["C1_left"], inst["C2"]
    mds2 = is_mds(c2)
    ok = (is_orthogonal(c1).verdict and is_mds(c1).verdict
          and is_orthogonal(c2).verdict and mds2.verdict and mds2.witness["minors_checked"] == 923
          and is_involutory(c1_left).verdict and is_mds(c1_left).verdict)
    elapsed = time.perf_counter() - start
    record(1, "3x3 and 6x6 circulants orthogonal MDS, left-circulant involutory MDS",
           ok and elapsed < 1.0, f"{mds2.witness['minors_checked']} minors, {elapsed:.3f}s")


def test_criterion_2_cyclic_reduction():
    inst = reference_instances(AES_FIELD)
    rho = parse_cycle("(0 2 4 3 5 1)", 6)
    cyc = inst["cyclic"]
    row, q = associated_circulant(rho, inst["cyclic_row"])
    reduced = cyc @ q.to_matrix(AES_FIELD)
    ok = (cyc == cyclic(AES_FIELD, rho, inst["cyclic_row"])
          and reduced == inst["C2"] and row == inst["c2_row"]
          and is_orthogonal(cyc).verdict and is_mds(cyc).verdict)
    record(2, "cyclic (0 2 4 3 5 1) times Q equals the 6x6 circulant; orthogonal MDS", ok,
           f"Q images {list(q.images)}")


@pytest.mark.parametrize("label, field, d, total", [
    ("i", GF4, 2, 512),
    ("ii", GF16, 2, 131072),
    ("iii", GF4, 3, 262144),
])
def test_criterion_3_nonexistence(label, field, d, total):
    start = time.perf_counter()
    cert = verify_nonexistence_2d(field, d)
    elapsed = time.perf_counter() - start
    scanned = sum(c["candidates_scanned"] for c in cert["campaigns"])
    hits = sum(len(c["hits"]) for c in cert["campaigns"])
    ok = cert["verdict"] and scanned == total and hits == 0 and check_certificate(cert).verdict
    gs = [c["g"] for c in cert["campaigns"]]
    record(3, f"({label}) {field} k={1 << d} g={gs}: zero orthogonal MDS", ok and elapsed < 60,
           f"{scanned} rows, {hits} hits, {elapsed:.2f}s")


def test_criterion_4_gcd_obstruction():
    reports = suites.gcd_obstruction_suite(GF16, trials=1000, seed=0, k=6, gs=(2, 3, 4))
    record(4, "k=6, g in {2,3,4}: repeated rows give a singular 2x2 witness, not MDS", all(reports),
           ", ".join(f"{r.property}: {r.witness['trials']} trials, {len(r.witness['failures'])} failures"
                     for r in reports))


def test_criterion_5_lemma_suites():
    reports = [
        *suites.det_formula_suite(AES_FIELD, 1000, 0),
        *suites.scalar_power_suite(AES_FIELD, 1000, 0),
        *suites.shift_conjugation_suite(AES_FIELD, 1000, 0, max_k=8),
        *suites.gh_product_suite(AES_FIELD, 1000, 0, ks=(5, 6)),
    ]
    failed = [r.property for r in reports if not r]
    record(5, "det formula, scalar power, PA = AP^g, gh-product and A B^T laws", not failed,
           f"{len(reports)} suites x 1000 instances, failed: {failed or 'none'}")


def test_criterion_6_structure_identities():
    reports = suites.structure_suite(AES_FIELD, seed=0, max_k=5)
    cycles = sum(r.witness["trials"] for r in reports if r.property.startswith("cyclic_structure"))
    record(6, "cyclic structure decomposition over every k-cycle, k <= 5, and the g-circulant form",
           all(reports), f"{cycles} k-cycles")


def test_criterion_7_branch_numbers():
    oracle = OracleField(2, 0b111)
    mds_rows = [[1, 1, 1], [1, 2, 3], [1, 3, 2]]
    confirmed = oracle_is_mds(oracle, mds_rows) and branch_number(oracle, mds_rows) == 4
    a = Matrix(GF4, mds_rows)
    bn = branch_numbers(a)
    ident = branch_numbers(Matrix.identity(GF4, 3))
    invariant = mds_branch_consistency(a, trials=20, seed=0)
    ok = confirmed and bn.differential == bn.linear == 4 and ident.differential == 2 and invariant.verdict
    record(7, "3x3 MDS over GF(4) has branch numbers 4/4, identity 2, invariant under 20 transforms", ok,
           f"MDS {bn.differential}/{bn.linear}, identity {ident.differential}/{ident.linear}")


def test_criterion_8_equivalence():
    symbols, row_a, row_b = suites.worked_example_rows(AES_FIELD)
    circ = perm_equiv_circulant(row_a, row_b)
    rho1, rho2 = parse_cycle("(0 2 4 1 3)", 5), parse_cycle("(0 3 1 4 2)", 5)
    cyc = perm_equiv_cyclic(AES_FIELD, rho1, rho2, symbols)
    # perm_equiv_cyclic re-verifies P1 and P3 by direct product; repeat it here independently
    p1 = Permutation(tuple(cyc.witness["P1"])).to_matrix(AES_FIELD)
    p3 = Permutation(tuple(cyc.witness["P3"])).to_matrix(AES_FIELD)
    direct = p1 @ cyclic(AES_FIELD, rho1, symbols) @ p3 == cyclic(AES_FIELD, rho2, symbols)
    exhaustive = cyclic_equivalence_theorem_check(GF4, 5, exhaustive=True)
    ok = (circ.verdict and cyc.verdict and direct and exhaustive.verdict
          and exhaustive.witness["checked"] == 1024 * 24 and not exhaustive.witness["violations"])
    record(8, "worked pair affine witness, cyclic equivalence with P1/P3, exhaustive k=5 iff", ok,
           f"affine (a, b) = ({circ.witness['a']}, {circ.witness['b']}), "
           f"{exhaustive.witness['checked']} pairs, {len(exhaustive.witness['violations'])} violations")


def _cli(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    return code, out


def test_criterion_9_determinism(capsys):
    search = ("search", "--field", "gf(2^4)/0x13", "--k", "3", "--require", "orthogonal,mds", "--output", "json")
    random = ("search", "--field", "gf(2^8)/0x11b", "--k", "3", "--require", "orthogonal,mds", "--random",
              "--seed", "42", "--trials", "50000", "--output", "json")
    check = ("check", "--field", "gf(2^8)/0x11b", "--circulant", "a,1+a^2+a^3+a^4+a^6,a+a^2+a^3+a^4+a^6",
             "--properties", "mds,orthogonal,involutory", "--output", "json")
    identical = all(_cli(capsys, *argv) == _cli(capsys, *argv) for argv in (search, random, check))
    parallel = all(_cli(capsys, *argv) == _cli(capsys, *argv, "--workers", "3") for argv in (search, random))
    spec = CampaignSpec(GF4, 8, Shape.parse("g:3", 8), ("orthogonal", "mds"))
    seq, par = run_campaign(spec).to_json(), run_campaign(spec, workers=3).to_json()
    ok = identical and parallel and json.dumps(seq) == json.dumps(par)
    record(9, "repeated runs byte-identical, parallel equals sequential", ok)
