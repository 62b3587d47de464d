"""Batch verification suites and the randomized presentation scanner.

Each check returns a CheckResult carrying a pass flag and, on failure, a
reproducible witness.  The scanner draws nilpotent presentations with
independent uniform values on every admissible triple; each sample's
stream is derived from (seed, sample index) alone, so results are
identical no matter how samples are distributed over workers.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import (
    Algebra,
    BasisVector,
    NotNilpotentError,
    Presentation,
    PresentationTriple,
    build_algebra,
    is_maximal_class_criterion,
    lower_central_series,
    rank,
    series_report,
)
from .construct import predict_min_class
from .linalg import PrimeField, _rref_array, is_prime, perp
from .presfile import emit_presentation

__all__ = [
    "CheckResult",
    "check_axioms",
    "check_duality",
    "check_series_step_bounds",
    "check_rank_two_structure",
    "ScanConfig",
    "ScanReport",
    "Discovery",
    "random_nilpotent_presentation",
    "sample_presentation",
    "scan",
]


@dataclass(frozen=True)
class CheckResult:
    check_name: str
    subject: str
    passed: bool
    details: str = ""

    def __bool__(self) -> bool:
        return self.passed


def check_axioms(alg: Algebra, subject: str = "algebra") -> CheckResult:
    """Alternation, cyclic symmetry, self-adjointness and non-degeneracy.

    Verified against the stored multiplication table over all basis
    triples, so a corrupted table is caught with a witness triple.
    """
    p = alg.field.p
    dim = alg.dim
    g = alg.gram.data
    table = alg.table

    def witness(diff: np.ndarray, label: str) -> CheckResult:
        idx = tuple(int(v) for v in np.argwhere(diff)[0])
        return CheckResult("axioms", subject, False, f"{label} fails at {idx}")

    for i in range(dim):
        if table[i, i].any():
            return CheckResult("axioms", subject, False, f"alternation fails at ({i}, {i})")
    diff = (table + table.transpose(1, 0, 2)) % p
    if diff.any():
        return witness(diff, "anticommutativity")
    # pairings (e_i e_j, e_k) recomputed from the table must match the tensor
    pair = np.einsum("ijc,ck->ijk", table, g) % p
    diff = (pair - alg.tensor.dense()) % p
    if diff.any():
        return witness(diff, "table/tensor consistency")
    diff = (pair - np.transpose(pair, (1, 2, 0))) % p
    if diff.any():
        return witness(diff, "cyclic symmetry")
    # self-adjointness: (e_i e_j, e_k) = (e_i, e_k e_j)
    right = np.einsum("ic,kjc->ijk", g, table) % p
    diff = (pair - right) % p
    if diff.any():
        return witness(diff, "self-adjointness")
    _, pivots = _rref_array(g, p)
    if len(pivots) != dim:
        return CheckResult("axioms", subject, False, "degenerate form")
    return CheckResult("axioms", subject, True)


def check_duality(alg: Algebra, subject: str = "algebra") -> CheckResult:
    """Z_i equals perp(L^{i+1}) for every i up to the class."""
    rep = series_report(alg)
    if rep.nilpotency_class is None:
        raise NotNilpotentError("duality check requires a nilpotent algebra")
    for i, z in enumerate(rep.upper):
        if z != perp(rep.lower[i], alg.gram):
            return CheckResult(
                "duality", subject, False, f"Z_{i} != perp(L^{i + 1}); dims {rep.lower_dims}"
            )
    return CheckResult("duality", subject, True, f"dims {rep.lower_dims}")


def check_series_step_bounds(alg: Algebra, subject: str = "algebra") -> CheckResult:
    """Step growth bound on the upper series plus the lower/upper mirror.

    dim Z_i - dim Z_{i-1} <= (dim Z_{i-1} - dim Z_{i-2})(dim Z_{i-1} +
    dim Z_{i-2} - 1)/2 for i >= 2, and dim L^i - dim L^{i+1} equals
    dim Z_i - dim Z_{i-1} throughout.
    """
    rep = series_report(alg)
    if rep.nilpotency_class is None:
        raise NotNilpotentError("series bounds require a nilpotent algebra")
    zd = rep.upper_dims
    ld = rep.lower_dims
    for i in range(2, len(zd)):
        step = zd[i] - zd[i - 1]
        bound = (zd[i - 1] - zd[i - 2]) * (zd[i - 1] + zd[i - 2] - 1)
        if 2 * step > bound:
            return CheckResult(
                "series-step-bounds", subject, False, f"step {i}: 2*{step} > {bound}"
            )
    for i in range(1, len(ld)):
        if ld[i - 1] - ld[i] != zd[i] - zd[i - 1]:
            return CheckResult(
                "series-step-bounds", subject, False,
                f"mirror fails at i={i}: lower {ld}, upper {zd}",
            )
    return CheckResult("series-step-bounds", subject, True)


def check_rank_two_structure(alg: Algebra, subject: str = "algebra") -> CheckResult:
    """Dimension facts forced on nilpotent algebras with a 2-dimensional center.

    For dimension 2n >= 8: dim L^2 = 2n-2, dim L^3 = 2n-3, dim L^4 is
    2n-4 or 2n-5, L^class equals the center, and 5 <= class <= 2n-3; for
    2n >= 12 additionally class >= 7.
    """
    rep = series_report(alg)
    if rep.nilpotency_class is None:
        raise NotNilpotentError("rank-two structure requires a nilpotent algebra")
    if rep.upper[1].dim != 2:
        raise ValueError("check requires a 2-dimensional center")
    if alg.dim < 8:
        raise ValueError("check requires dimension at least 8")
    d = alg.dim
    cls = rep.nilpotency_class
    ld = rep.lower_dims
    problems = []
    if ld[1] != d - 2:
        problems.append(f"dim L^2 = {ld[1]} != {d - 2}")
    if ld[2] != d - 3:
        problems.append(f"dim L^3 = {ld[2]} != {d - 3}")
    if ld[3] not in (d - 4, d - 5):
        problems.append(f"dim L^4 = {ld[3]} not in {{{d - 4}, {d - 5}}}")
    if rep.lower[cls - 1] != rep.upper[1]:
        problems.append("L^class != center")
    if not 5 <= cls <= d - 3:
        problems.append(f"class {cls} outside [5, {d - 3}]")
    if d >= 12 and cls < 7:
        problems.append(f"class {cls} < 7 at dimension {d}")
    if problems:
        return CheckResult("rank-two-structure", subject, False, "; ".join(problems))
    return CheckResult("rank-two-structure", subject, True, f"dims {ld}")


# ---------------------------------------------------------------------------
# randomized scanning


def _triple_universe(n: int) -> list[tuple[BasisVector, BasisVector, BasisVector]]:
    """All admissible triples of a nilpotent presentation, in pinned order."""
    out = []
    for kind in ("x", "y"):
        for i, j, k in itertools.combinations(range(1, n + 1), 3):
            out.append((BasisVector(kind, i), BasisVector("y", j), BasisVector("y", k)))
    return out


def random_nilpotent_presentation(
    n: int, field: PrimeField, rng: np.random.Generator
) -> Presentation:
    """Independent uniform values over the full nilpotent triple shape."""
    universe = _triple_universe(n)
    values = rng.integers(0, field.p, size=len(universe))
    triples = tuple(
        PresentationTriple(a, b, c, field.element(int(v)))
        for (a, b, c), v in zip(universe, values)
        if v
    )
    return Presentation(n, field, triples)


@dataclass(frozen=True)
class ScanConfig:
    """Scan parameters.

    Sample index i draws from numpy's PCG64 seeded with
    SeedSequence(entropy=seed, spawn_key=(i,)), so per-sample streams
    depend only on (seed, i) and parallel execution cannot change results.
    """

    n: int
    p: int
    samples: int
    seed: int
    rank_filter: int | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.n < 1:
            raise ValueError("n must be at least 1")


def sample_presentation(cfg: ScanConfig, index: int) -> Presentation:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=cfg.seed, spawn_key=(index,)))
    return random_nilpotent_presentation(cfg.n, PrimeField(cfg.p), rng)


@dataclass(frozen=True)
class Discovery:
    """A sample that breaks a conjectured bound; reproducible from the dump."""

    index: int
    rank: int
    nilpotency_class: int | None
    reason: str
    presentation_text: str


@dataclass
class ScanReport:
    config: ScanConfig
    classified: int = 0
    counts: dict = dc_field(default_factory=dict)
    min_class_rank2: int | None = None
    criterion_mismatches: int | None = None
    discoveries: tuple[Discovery, ...] = ()

    @property
    def predicted_min_class(self) -> int | None:
        if self.config.n >= 4:
            return predict_min_class(self.config.n).predicted_class
        return None

    def render(self) -> str:
        cfg = self.config
        rf = "none" if cfg.rank_filter is None else str(cfg.rank_filter)
        lines = [
            f"scan: n={cfg.n} p={cfg.p} samples={cfg.samples} seed={cfg.seed} rank-filter={rf}",
            f"classified: {self.classified}",
        ]
        for (rk, cls), count in sorted(
            self.counts.items(), key=lambda kv: (kv[0][0], kv[0][1] if kv[0][1] is not None else -1)
        ):
            cls_text = "none" if cls is None else str(cls)
            lines.append(f"count rank={rk} class={cls_text}: {count}")
        mc = "n/a" if self.min_class_rank2 is None else str(self.min_class_rank2)
        lines.append(f"min-class-rank2: {mc}")
        pc = "n/a" if self.predicted_min_class is None else str(self.predicted_min_class)
        lines.append(f"predicted-min-class: {pc}")
        cm = "n/a" if self.criterion_mismatches is None else str(self.criterion_mismatches)
        lines.append(f"criterion-mismatches: {cm}")
        lines.append(f"violations: {len(self.discoveries)}")
        if self.discoveries:
            lines.append("status: COUNTEREXAMPLE CANDIDATE FOUND (inspect dumps below)")
            for d in self.discoveries:
                cls_text = "none" if d.nilpotency_class is None else str(d.nilpotency_class)
                lines.append(
                    f"violation: index={d.index} rank={d.rank} class={cls_text} reason={d.reason}"
                )
                for text_line in d.presentation_text.splitlines():
                    lines.append(f"  | {text_line}")
        else:
            lines.append("status: no counterexample found")
        return "\n".join(lines) + "\n"


def _classify_sample(cfg: ScanConfig, index: int):
    pres = sample_presentation(cfg, index)
    alg = build_algebra(pres)
    cls = lower_central_series(alg).nilpotency_class
    rk = rank(alg)
    mismatch = False
    if alg.dim >= 8:
        mismatch = is_maximal_class_criterion(alg) != (cls == alg.dim - 3)
    reason = None
    if rk == 2:
        if cfg.n >= 4 and cls is not None and cls < predict_min_class(cfg.n).predicted_class:
            reason = "class below predicted minimum"
        elif alg.dim >= 8 and cls is not None and not (5 <= cls <= alg.dim - 3):
            reason = "class outside [5, 2n-3]"
    return index, pres, rk, cls, mismatch, reason


def _scan_chunk(cfg: ScanConfig, indices) -> ScanReport:
    report = ScanReport(cfg)
    counts: dict = {}
    classified = 0
    min_rank2: int | None = None
    mismatches = 0 if 2 * cfg.n >= 8 else None
    discoveries = []
    for index in indices:
        _, pres, rk, cls, mismatch, reason = _classify_sample(cfg, index)
        if rk == 2 and cls is not None:
            min_rank2 = cls if min_rank2 is None else min(min_rank2, cls)
        if mismatches is not None and mismatch:
            mismatches += 1
        if reason is not None:
            discoveries.append(Discovery(index, rk, cls, reason, emit_presentation(pres)))
        if cfg.rank_filter is not None and rk != cfg.rank_filter:
            continue
        classified += 1
        counts[(rk, cls)] = counts.get((rk, cls), 0) + 1
    report.classified = classified
    report.counts = counts
    report.min_class_rank2 = min_rank2
    report.criterion_mismatches = mismatches
    report.discoveries = tuple(discoveries)
    return report


def _merge_reports(cfg: ScanConfig, parts: list[ScanReport]) -> ScanReport:
    merged = ScanReport(cfg)
    counts: dict = {}
    classified = 0
    min_rank2 = None
    mismatches = 0 if 2 * cfg.n >= 8 else None
    discoveries: list[Discovery] = []
    for part in parts:
        classified += part.classified
        for key, value in part.counts.items():
            counts[key] = counts.get(key, 0) + value
        if part.min_class_rank2 is not None:
            min_rank2 = (
                part.min_class_rank2
                if min_rank2 is None
                else min(min_rank2, part.min_class_rank2)
            )
        if mismatches is not None and part.criterion_mismatches:
            mismatches += part.criterion_mismatches
        discoveries.extend(part.discoveries)
    merged.classified = classified
    merged.counts = counts
    merged.min_class_rank2 = min_rank2
    merged.criterion_mismatches = mismatches
    merged.discoveries = tuple(sorted(discoveries, key=lambda d: d.index))
    return merged


def scan(cfg: ScanConfig, workers: int = 1) -> ScanReport:
    """Classify random nilpotent presentations by (rank, class).

    Aggregation is order-independent, so any worker count yields the same
    report for the same config.
    """
    indices = range(cfg.samples)
    if workers <= 1:
        return _merge_reports(cfg, [_scan_chunk(cfg, indices)])
    chunks = [list(indices[k :: workers]) for k in range(workers)]
    chunks = [c for c in chunks if c]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: _scan_chunk(cfg, c), chunks))
    return _merge_reports(cfg, parts)
