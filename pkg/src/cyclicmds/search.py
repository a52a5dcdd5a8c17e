"""Exhaustive and seeded-random campaigns over first rows of structured matrices.

A campaign fixes a field, an order k and a shape; the shape turns a first
row into a full matrix.  Rows are scanned in chunks: exhaustive scans walk
row indices ``0 .. q^k - 1`` in lexicographic order (``c_0`` most
significant), random scans draw each chunk from its own Philox stream keyed
by ``(seed, chunk index)``.  Either way a chunk's outcome depends only on
the spec and its index, so chunks can be farmed out to worker processes and
merged in index order with no effect on the result.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .errors import BadOrder, BadSpec, CeilingExceeded, CyclicMDSError
from .gf2m import AES_FIELD, GF2m
from .matrix import Matrix, xor_matmul
from .props import (
    CHECKS,
    is_mds,
    is_involutory,
    is_orthogonal,
    orthogonality_obstruction_2d,
)
from .report import PropertyReport
from .structured import (
    KCycle,
    all_k_cycles,
    associated_circulant,
    circulant,
    circulant_index,
    cyclic,
    cyclic_index,
    g_circulant,
    g_circulant_index,
    left_circulant,
    left_circulant_index,
    parse_cycle,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DEFAULT_CEILING = 1 << 26
RNG_NAME = "numpy.random.Philox(SeedSequence(seed, spawn_key=(chunk,)))"

# cheapest first: one matrix product each, then minor enumeration
PREDICATE_COST = {"orthogonal": 0, "involutory": 1, "mds": 2}


@dataclass(frozen=True)
class Shape:
    """How a first row becomes a matrix: circulant, left-circulant, g-circulant or cyclic."""

    kind: str
    g: int | None = None
    rho: KCycle | None = None

    def __post_init__(self):
        if self.kind not in ("circulant", "left_circulant", "g_circulant", "cyclic"):
            raise BadSpec(f"unknown shape {self.kind!r}")
        if self.kind == "g_circulant" and (self.g is None or self.g < 0):
            raise BadSpec("g-circulant shape needs a non-negative g")
        if self.kind == "cyclic" and self.rho is None:
            raise BadSpec("cyclic shape needs a k-cycle")

    @classmethod
    def parse(cls, text: str, k: int) -> Shape:
        """Parse ``circulant``, ``left-circulant``, ``g-circulant:<g>`` (or ``g:<g>``) or ``cyclic:(0 2 ...)``."""
        kind, _, arg = text.strip().partition(":")
        kind = kind.strip().replace("-", "_")
        if kind in ("g", "g_circulant"):
            try:
                g = int(arg)
            except ValueError:
                raise BadSpec(f"bad g in shape {text!r}") from None
            return cls("g_circulant", g=g % k)
        if kind == "cyclic":
            return cls("cyclic", rho=parse_cycle(arg, k))
        if arg:
            raise BadSpec(f"shape {kind!r} takes no argument")
        return cls(kind)

    def __str__(self):
        if self.kind == "g_circulant":
            return f"g-circulant:{self.g}"
        if self.kind == "cyclic":
            return f"cyclic:{self.rho}"
        return self.kind.replace("_", "-")

    def index(self, k: int) -> np.ndarray:
        if self.kind == "circulant":
            return circulant_index(k)
        if self.kind == "left_circulant":
            return left_circulant_index(k)
        if self.kind == "g_circulant":
            return g_circulant_index(k, self.g)
        if self.rho.k != k:
            raise BadSpec(f"{self.rho} is not a {k}-cycle")
        return cyclic_index(self.rho)

    def build(self, field: GF2m, row: Sequence[int]) -> Matrix:
        if self.kind == "circulant":
            return circulant(field, row)
        if self.kind == "left_circulant":
            return left_circulant(field, row)
        if self.kind == "g_circulant":
            return g_circulant(field, self.g, row)
        return cyclic(field, self.rho, row)


@dataclass(frozen=True)
class CampaignSpec:
    field: GF2m
    k: int
    shape: Shape
    predicates: tuple[str, ...]
    mode: str = "exhaustive"
    seed: int | None = None
    trials: int | None = None
    limit: int | None = None
    ceiling: int = DEFAULT_CEILING

    def __post_init__(self):
        if not 1 <= self.k <= 32:
            raise BadSpec(f"order {self.k} outside 1..32")
        unknown = set(self.predicates) - set(PREDICATE_COST)
        if unknown or not self.predicates:
            raise BadSpec(f"predicates must be a non-empty subset of {sorted(PREDICATE_COST)}")
        if self.mode not in ("exhaustive", "random"):
            raise BadSpec(f"mode must be exhaustive or random, got {self.mode!r}")
        if self.mode == "random" and (self.seed is None or not self.trials or self.trials < 0):
            raise BadSpec("random mode needs a seed and a positive trial count")
        if self.limit is not None and self.limit < 0:
            raise BadSpec("limit must be non-negative")
        self.shape.index(self.k)

    @property
    def candidates(self) -> int:
        return self.field.order ** self.k if self.mode == "exhaustive" else self.trials


@dataclass
class Hit:
    row: tuple[int, ...]
    reports: list[PropertyReport]

    def to_json(self, field: GF2m, shape: Shape) -> dict:
        return {
            "row": [field.format_element(c) for c in self.row],
            "shape": str(shape),
            "reports": [r.to_json() for r in self.reports],
        }


@dataclass
class CampaignResult:
    spec: CampaignSpec
    candidates_scanned: int
    hit_count: int
    hits: list[Hit]
    exhausted: bool
    stage_counts: dict[str, int] = dc_field(default_factory=dict)
    chunk_size: int = 0

    def to_json(self) -> dict:
        spec = self.spec
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "campaign",
            "field": str(spec.field),
            "k": spec.k,
            "shape": str(spec.shape),
            "predicates": list(spec.predicates),
            "mode": spec.mode,
            "seed": spec.seed,
            "trials": spec.trials,
            "rng": RNG_NAME if spec.mode == "random" else None,
            "chunk_size": self.chunk_size,
            "candidates_scanned": self.candidates_scanned,
            "stage_counts": dict(self.stage_counts),
            "hit_count": self.hit_count,
            "hits": [h.to_json(spec.field, spec.shape) for h in self.hits],
            "exhausted": self.exhausted,
        }

    @classmethod
    def from_json(cls, obj: dict) -> CampaignResult:
        """Load a serialised result, re-verifying every recorded hit."""
        field = GF2m.parse(obj["field"])
        k = obj["k"]
        shape = Shape.parse(obj["shape"], k)
        spec = CampaignSpec(field, k, shape, tuple(obj["predicates"]), obj["mode"],
                            obj.get("seed"), obj.get("trials"))
        hits = []
        for h in obj["hits"]:
            row = tuple(field.parse_literal(c) for c in h["row"])
            reports = verify_hit(field, shape, row, spec.predicates)
            if not all(reports):
                raise BadSpec(f"recorded hit {h['row']} fails re-verification")
            hits.append(Hit(row, reports))
        return cls(spec, obj["candidates_scanned"], obj["hit_count"], hits, obj["exhausted"],
                   dict(obj.get("stage_counts", {})), obj.get("chunk_size", 0))


def verify_hit(field: GF2m, shape: Shape, row: Sequence[int], predicates) -> list[PropertyReport]:
    mat = shape.build(field, row)
    return [CHECKS[p](mat) for p in predicates]


# -- batch predicates -------------------------------------------------------

def batch_orthogonal(field: GF2m, mats: np.ndarray) -> np.ndarray:
    prod = xor_matmul(field, mats, np.swapaxes(mats, 1, 2))
    return (prod == np.eye(mats.shape[1], dtype=prod.dtype)).all(axis=(1, 2))


def batch_involutory(field: GF2m, mats: np.ndarray) -> np.ndarray:
    prod = xor_matmul(field, mats, mats)
    return (prod == np.eye(mats.shape[1], dtype=prod.dtype)).all(axis=(1, 2))


def batch_small_minors_nonzero(field: GF2m, mats: np.ndarray) -> np.ndarray:
    """Necessary condition for MDS: every 1x1 and 2x2 minor is nonzero."""
    ok = (mats != 0).all(axis=(1, 2))
    k = mats.shape[1]
    if k < 2:
        return ok
    r1, r2 = np.triu_indices(k, 1)
    top = mats[:, r1][:, :, None, :]
    bot = mats[:, r2][:, :, None, :]
    c1, c2 = np.triu_indices(k, 1)
    det2 = field.mul_array(top[..., c1], bot[..., c2]) ^ field.mul_array(top[..., c2], bot[..., c1])
    return ok & (det2 != 0).all(axis=(1, 2, 3))


def batch_mds(field: GF2m, mats: np.ndarray) -> np.ndarray:
    ok = batch_small_minors_nonzero(field, mats)
    for n in np.flatnonzero(ok):
        ok[n] = is_mds(Matrix._wrap(field, mats[n])).verdict
    return ok


BATCH = {"orthogonal": batch_orthogonal, "involutory": batch_involutory, "mds": batch_mds}


def chunk_size_for(k: int) -> int:
    return max(64, (1 << 21) // (k ** 3))


def index_rows(q: int, k: int, start: int, stop: int) -> np.ndarray:
    """Rows with lexicographic indices start..stop-1 (c_0 most significant)."""
    n = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return ((n[:, None] // powers[None, :]) % q).astype(np.uint16)


def random_rows(q: int, k: int, seed: int, chunk: int, count: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))
    return rng.integers(0, q, size=(count, k), dtype=np.uint16)


@dataclass
class _Chunk:
    scanned: int
    stage_counts: dict
    hits: list
    stage_rows: list


def _scan_chunk(job) -> _Chunk:
    m, modulus, k, idx, predicates, mode, seed, chunk, start, stop, collect = job
    field = GF2m(m, modulus)
    q = field.order
    if mode == "exhaustive":
        rows = index_rows(q, k, start, stop)
    else:
        rows = random_rows(q, k, seed, chunk, stop - start)
    alive = np.arange(rows.shape[0])
    counts = {}
    stage_rows = []
    for pred in predicates:
        if alive.size:
            mats = rows[alive][:, idx]
            alive = alive[BATCH[pred](field, mats)]
        counts[pred] = int(alive.size)
        if pred == collect:
            stage_rows = [tuple(int(c) for c in r) for r in rows[alive]]
    hits = [tuple(int(c) for c in r) for r in rows[alive]]
    return _Chunk(rows.shape[0], counts, hits, stage_rows)


def ordered_predicates(predicates, cheapest_first: bool = True) -> tuple[str, ...]:
    preds = tuple(dict.fromkeys(predicates))
    return tuple(sorted(preds, key=PREDICATE_COST.get)) if cheapest_first else preds


def _jobs(spec: CampaignSpec, predicates, collect):
    total = spec.candidates
    size = chunk_size_for(spec.k)
    idx = spec.shape.index(spec.k)
    for chunk, start in enumerate(range(0, total, size)):
        yield (spec.field.m, spec.field.modulus, spec.k, idx, predicates, spec.mode,
               spec.seed, chunk, start, min(start + size, total), collect)


def _scan(spec: CampaignSpec, predicates, workers: int, should_stop, collect=None):
    if spec.mode == "exhaustive" and spec.candidates > spec.ceiling:
        raise CeilingExceeded(spec.candidates, spec.ceiling)
    jobs = _jobs(spec, predicates, collect)
    if workers > 1:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_scan_chunk, jobs)
    else:
        pool = None
        results = map(_scan_chunk, jobs)
    chunks = []
    stopped = False
    try:
        for n, res in enumerate(results):
            chunks.append(res)
            if n % 16 == 15:
                done = sum(c.scanned for c in chunks)
                log.info("%s: %d/%d rows scanned", spec.shape, done, spec.candidates)
            if should_stop is not None and should_stop():
                stopped = True
                break
    except KeyboardInterrupt:
        stopped = True
    finally:
        if pool is not None:
            pool.shutdown(wait=not stopped, cancel_futures=True)
    return chunks, stopped


def run_campaign(spec: CampaignSpec, *, workers: int = 1, cheapest_first: bool = True,
                 should_stop: Callable[[], bool] | None = None) -> CampaignResult:
    """Scan the first-row space of ``spec`` and record rows passing every predicate.

    Hits are recorded in scan order (at most ``spec.limit`` of them) and each
    is re-checked with the scalar checkers from :mod:`cyclicmds.props`.  A
    cancelled or interrupted scan returns with ``exhausted=False``.
    """
    predicates = ordered_predicates(spec.predicates, cheapest_first)
    chunks, stopped = _scan(spec, predicates, workers, should_stop)
    all_hits = [h for c in chunks for h in c.hits]
    recorded = all_hits if spec.limit is None else all_hits[:spec.limit]
    hits = []
    for row in recorded:
        reports = verify_hit(spec.field, spec.shape, row, spec.predicates)
        if not all(reports):
            raise CyclicMDSError(f"batch filter and scalar checkers disagree on row {row}")
        hits.append(Hit(row, reports))
    counts = {p: sum(c.stage_counts.get(p, 0) for c in chunks) for p in predicates}
    scanned = sum(c.scanned for c in chunks)
    exhausted = spec.mode == "exhaustive" and not stopped and scanned == spec.candidates
    return CampaignResult(spec, scanned, len(all_hits), hits, exhausted, counts, chunk_size_for(spec.k))


# -- certificates -----------------------------------------------------------

def verify_nonexistence_2d(field: GF2m, d: int, gs: Sequence[int] | None = None, *,
                           ceiling: int = DEFAULT_CEILING, workers: int = 1,
                           should_stop: Callable[[], bool] | None = None) -> dict:
    """Certify that no orthogonal MDS 2^d x 2^d g-circulant exists over ``field``.

    One exhaustive campaign per g.  Each orthogonal row found is recorded
    with the obstruction that rules it out: the zero product of the even
    and odd partial sums and the singular half-size sub-g-circulant.
    """
    if d < 2:
        raise BadOrder("non-existence holds for d >= 2 only")
    k = 1 << d
    if gs is None:
        gs = range(1, k, 2)
    gs = [g % k for g in gs]
    for g in gs:
        if math.gcd(g, k) != 1:
            raise BadSpec(f"g={g} is not coprime to {k}")
    total = field.order ** k
    if total > ceiling:
        raise CeilingExceeded(total, ceiling)
    campaigns = []
    complete = True
    for g in gs:
        spec = CampaignSpec(field, k, Shape("g_circulant", g=g), ("orthogonal", "mds"), ceiling=ceiling)
        chunks, stopped = _scan(spec, ordered_predicates(spec.predicates), workers, should_stop,
                                collect="orthogonal")
        orthogonal_rows = [r for c in chunks for r in c.stage_rows]
        hits = [r for c in chunks for r in c.hits]
        scanned = sum(c.scanned for c in chunks)
        exhausted = not stopped and scanned == total
        complete &= exhausted
        obstructions = []
        for row in orthogonal_rows:
            rep = orthogonality_obstruction_2d(field, row, g, d)
            obstructions.append({
                "row": [field.format_element(c) for c in row],
                "holds": rep.verdict,
                "singular_block": rep.witness["singular_block"],
                "rows": rep.witness["rows"],
                "cols": rep.witness["cols"],
                "even_sum": rep.witness["even_sum"],
                "odd_sum": rep.witness["odd_sum"],
            })
        campaigns.append({
            "g": g,
            "shape": str(spec.shape),
            "candidates_scanned": scanned,
            "exhausted": exhausted,
            "orthogonal_count": len(orthogonal_rows),
            "hits": [[field.format_element(c) for c in r] for r in hits],
            "obstructions": obstructions,
        })
        if stopped:
            break
    verdict = (complete and len(campaigns) == len(gs)
               and all(not c["hits"] and all(o["holds"] for o in c["obstructions"]) for c in campaigns))
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "nonexistence-2d",
        "field": str(field),
        "d": d,
        "k": k,
        "predicates": ["orthogonal", "mds"],
        "campaigns": campaigns,
        "verdict": verdict,
    }


def check_certificate(cert: dict, rescan: bool = False) -> PropertyReport:
    """Independently re-check a non-existence certificate.

    Every listed obstruction is rebuilt from its row: the matrix must be
    orthogonal and the cited block singular.  With ``rescan`` the
    exhaustive scan is repeated and the orthogonal rows compared.
    """
    field = GF2m.parse(cert["field"])
    d, k = cert["d"], cert["k"]
    if k != 1 << d:
        return PropertyReport("certificate", False, {"reason": "k != 2^d"})
    total = field.order ** k
    for camp in cert["campaigns"]:
        g = camp["g"]
        if camp["hits"] or not camp["exhausted"] or camp["candidates_scanned"] != total:
            return PropertyReport("certificate", False, {"g": g, "reason": "incomplete scan or hits"})
        if camp["orthogonal_count"] != len(camp["obstructions"]):
            return PropertyReport("certificate", False, {"g": g, "reason": "obstruction count"})
        for ob in camp["obstructions"]:
            row = [field.parse_literal(c) for c in ob["row"]]
            a = g_circulant(field, g, row)
            if not is_orthogonal(a) or ob["cols"] is None:
                return PropertyReport("certificate", False, {"g": g, "row": ob["row"]})
            if a.submatrix(ob["rows"], ob["cols"]).determinant() != 0:
                return PropertyReport("certificate", False, {"g": g, "row": ob["row"], "reason": "block"})
        if rescan:
            spec = CampaignSpec(field, k, Shape("g_circulant", g=g), ("orthogonal",))
            chunks, _ = _scan(spec, ("orthogonal",), 1, None, collect="orthogonal")
            rows = [[field.format_element(c) for c in r] for ch in chunks for r in ch.stage_rows]
            if rows != [ob["row"] for ob in camp["obstructions"]]:
                return PropertyReport("certificate", False, {"g": g, "reason": "rescan mismatch"})
    return PropertyReport("certificate", True, {"campaigns": len(cert["campaigns"])})


# -- reference instances-----------------------------------------------------

C1_ROW = ("a", "1+a^2+a^3+a^4+a^6", "a+a^2+a^3+a^4+a^6")
C2_ROW = ("1", "1", "a", "1+a^2+a^3+a^5+a^6+a^7", "a+a^5", "a^2+a^3+a^6+a^7")
CYCLIC_RHO = "(0 2 4 3 5 1)"
CYCLIC_ROW = ("1", "a^2+a^3+a^6+a^7", "1", "1+a^2+a^3+a^5+a^6+a^7", "a", "a^5+a")


def reference_instances(field: GF2m = AES_FIELD) -> dict:
    parse = field.parse_element
    c1 = [parse(t) for t in C1_ROW]
    c2 = [parse(t) for t in C2_ROW]
    rho = parse_cycle(CYCLIC_RHO, 6)
    cyc = [parse(t) for t in CYCLIC_ROW]
    return {
        "C1": circulant(field, c1),
        "C1_left": left_circulant(field, c1),
        "C2": circulant(field, c2),
        "cyclic": cyclic(field, rho, cyc),
        "rho": rho,
        "c2_row": tuple(c2),
        "cyclic_row": tuple(cyc),
    }


def _named(name: str, report: PropertyReport) -> PropertyReport:
    return PropertyReport(name, report.verdict, report.witness)


def verify_reference_examples() -> list[PropertyReport]:
    """Check the GF(2^8) example matrices: orthogonal/involutory and MDS, and the cyclic reduction."""
    field = AES_FIELD
    inst = reference_instances(field)
    out = [
        _named("C1 circulant orthogonal", is_orthogonal(inst["C1"])),
        _named("C1 circulant MDS", is_mds(inst["C1"])),
        _named("C1 left-circulant involutory", is_involutory(inst["C1_left"])),
        _named("C1 left-circulant orthogonal", is_orthogonal(inst["C1_left"])),
        _named("C1 left-circulant MDS", is_mds(inst["C1_left"])),
        _named("C2 circulant orthogonal", is_orthogonal(inst["C2"])),
        _named("C2 circulant MDS", is_mds(inst["C2"])),
        _named("cyclic (0 2 4 3 5 1) orthogonal", is_orthogonal(inst["cyclic"])),
        _named("cyclic (0 2 4 3 5 1) MDS", is_mds(inst["cyclic"])),
    ]
    row, q = associated_circulant(inst["rho"], inst["cyclic_row"])
    out.append(PropertyReport("cyclic associated circulant row = C2 row", row == inst["c2_row"],
                              {"row": [field.format_element(c) for c in row]}))
    reduced = inst["cyclic"] @ q.to_matrix(field) == inst["C2"]
    out.append(PropertyReport("cyclic times Q = C2", reduced, {"Q": list(q.images)}))
    return out


# -- cyclic <-> circulant orthogonal-MDS equivalence -------------------------

def _is_power_of_two(k: int) -> bool:
    return k & (k - 1) == 0


def _orth_mds(mat: Matrix) -> bool:
    return is_orthogonal(mat).verdict and is_mds(mat).verdict


def random_k_cycle(rng: np.random.Generator, k: int) -> KCycle:
    return KCycle.from_orbit([0] + [int(x) + 1 for x in rng.permutation(k - 1)])


def cyclic_equivalence_theorem_check(field: GF2m, k: int, trials: int = 1000, seed: int = 0, *,
                                     exhaustive: bool = False,
                                     fixed: Sequence[tuple[KCycle, Sequence[int]]] = ()) -> PropertyReport:
    """Test: cyclic_rho(row) is orthogonal MDS iff its associated circulant is.

    Random mode draws ``trials`` (row, k-cycle) pairs; exhaustive mode walks
    every row against every k-cycle with batched orthogonality filtering.
    ``fixed`` pairs are always checked first.
    """
    if _is_power_of_two(k):
        raise BadOrder(f"k={k} is a power of two; the statement concerns other orders")
    violations = []
    checked = 0
    positives = 0

    def check(rho, row):
        nonlocal checked, positives
        row_c, _ = associated_circulant(rho, row)
        lhs = _orth_mds(cyclic(field, rho, row))
        rhs = _orth_mds(circulant(field, row_c))
        checked += 1
        positives += lhs
        if lhs != rhs:
            violations.append({"rho": str(rho), "row": [field.format_element(c) for c in row]})

    for rho, row in fixed:
        check(rho, row)
    if exhaustive:
        q = field.order
        if q ** k > DEFAULT_CEILING:
            raise CeilingExceeded(q ** k, DEFAULT_CEILING)
        rows = index_rows(q, k, 0, q ** k)
        circ_idx = circulant_index(k)
        for rho in all_k_cycles(k):
            orbit = rho.orbit(0)
            lhs = batch_orthogonal(field, rows[:, cyclic_index(rho)])
            rhs = batch_orthogonal(field, rows[:, orbit][:, circ_idx])
            for n in np.flatnonzero(lhs | rhs):
                check(rho, [int(c) for c in rows[n]])
            checked += int(rows.shape[0] - np.count_nonzero(lhs | rhs))
    else:
        rng = np.random.Generator(np.random.Philox(seed))
        for _ in range(trials):
            rho = random_k_cycle(rng, k)
            row = [int(c) for c in rng.integers(0, field.order, size=k)]
            check(rho, row)
    return PropertyReport("cyclic_equivalence", not violations,
                          {"checked": checked, "orthogonal_mds": positives, "violations": violations[:10]})
