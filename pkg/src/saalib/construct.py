"""Generative constructions: the omega threshold recursion, the minimal
class prediction, rank-2 algebras of predicted minimal class for any
half-dimension n >= 4, the catalog of known minimal presentations up to
dimension 16, and a diagonal scaling-isomorphism search.

The builders work with shells of the standard basis.  Writing W(r) for
omega(r), the top W(r) x-vectors form the r-th generator shell and the
pairs of the top W(r) y-vectors form the r-th pair shell.  Generators are
matched shell-by-shell to pair shells one level down; the leftover low
generators are injected into the outermost pair shell (case ONE) or, when
they no longer fit, the low y-vectors pair among themselves (case TWO),
which costs one extra step of nilpotency class.  Every produced
presentation is self-verified: it must come out nilpotent of rank 2 with
exactly the predicted class, otherwise the builder moves to the next
admissible assignment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    Algebra,
    BasisVector,
    Presentation,
    StructureTensor,
    _centralizer_above,
    build_algebra,
    is_isotropic,
    lower_central_series,
    product_space,
    series_report,
    validate_nilpotent_presentation,
    zero_space,
)
from .linalg import PrimeField

__all__ = [
    "ConstructionError",
    "omega",
    "omega_table",
    "ClassPrediction",
    "predict_min_class",
    "TripleSet",
    "construct_minimal",
    "CatalogEntry",
    "catalog",
    "catalog_entry",
    "ScalingWitness",
    "try_scaling_isomorphism",
    "verify_scaling_witness",
    "fingerprint",
]


class ConstructionError(RuntimeError):
    """Raised when no admissible triple assignment survives verification."""


@lru_cache(maxsize=None)
def omega(m: int) -> int:
    """omega(0) = 0, omega(1) = 2, omega(m+1) = 2 + C(omega(m), 2)."""
    if m < 0:
        raise ValueError("omega is defined for m >= 0")
    if m == 0:
        return 0
    if m == 1:
        return 2
    prev = omega(m - 1)
    return 2 + prev * (prev - 1) // 2


def omega_table(m_max: int) -> list[int]:
    return [omega(m) for m in range(m_max + 1)]


@dataclass(frozen=True)
class ClassPrediction:
    """Predicted minimal class for rank-2 algebras of dimension 2n."""

    n: int
    m: int
    case: str
    predicted_class: int


def predict_min_class(n: int) -> ClassPrediction:
    """Locate n between omega thresholds and read off 2m+1 or 2m+2.

    Case ONE iff 2n <= omega(m) + omega(m+1); the comparison is exact
    integer arithmetic.
    """
    if n < 4:
        raise ValueError("prediction requires half-dimension n >= 4")
    m = 0
    while not (omega(m) < n <= omega(m + 1)):
        m += 1
    if 2 * n <= omega(m) + omega(m + 1):
        return ClassPrediction(n, m, "ONE", 2 * m + 1)
    return ClassPrediction(n, m, "TWO", 2 * m + 2)


# ---------------------------------------------------------------------------
# triple sets


def _pair_shell(n: int, r: int) -> list[tuple[int, int]]:
    """y-index pairs from the top omega(r) block, minus the block above."""
    lo_outer = n - omega(r) + 1
    lo_inner = n - omega(r - 1) + 1
    pairs = []
    for i in range(lo_outer, n + 1):
        for j in range(i + 1, n + 1):
            if i >= lo_inner and j >= lo_inner:
                continue
            pairs.append((i, j))
    return pairs


def _x_shell(n: int, r: int) -> list[int]:
    """x indices between the omega(r) and omega(r+1) blocks, descending."""
    return list(range(n - omega(r), n - omega(r + 1), -1))


@dataclass(frozen=True)
class TripleSet:
    """The triples (u, v, w) that receive value 1 in a minimal construction."""

    n: int
    m: int
    case: str
    triples: tuple[tuple[BasisVector, BasisVector, BasisVector], ...]

    def property_report(self) -> dict[str, bool]:
        """Structural properties of the triple set.

        generators: each triple is (u, y_j, y_k) with u among the admissible
        low generators, and pairs of x-generated triples lie in the outer
        pair shell; shell_bijection: shell-r+1 x-generators biject onto
        shell-r pairs below the outermost level; no_common_pair: no two
        triples share two entries; coverage: every basis vector except
        x_n and x_{n-1} occurs.
        """
        n, m = self.n, self.m
        k_low = n - omega(m)
        high_start = n - omega(m) + 1
        report = {}

        generators_ok = True
        for a, b, c in self.triples:
            if b.kind != "y" or c.kind != "y" or not (a.index < b.index < c.index):
                generators_ok = False
                break
            if a.kind == "x":
                if a.index > n - 2 or b.index < high_start:
                    generators_ok = False
                    break
            else:
                if self.case == "ONE":
                    if a.index > k_low or b.index < high_start:
                        generators_ok = False
                        break
                else:
                    if a.index > k_low:
                        generators_ok = False
                        break
        report["generators"] = generators_ok

        bijection_ok = True
        for r in range(1, m):
            shell_gens = set(_x_shell(n, r))
            shell_pairs = set(_pair_shell(n, r))
            seen_pairs = []
            for a, b, c in self.triples:
                if a.kind == "x" and a.index in shell_gens:
                    seen_pairs.append((b.index, c.index))
            if sorted(seen_pairs) != sorted(shell_pairs) or len(seen_pairs) != len(shell_gens):
                bijection_ok = False
        report["shell_bijection"] = bijection_ok

        sets = [frozenset(t) for t in self.triples]
        report["no_common_pair"] = all(
            len(s & t) <= 1 for s, t in itertools.combinations(sets, 2)
        )

        involved = {v for t in self.triples for v in t}
        required = {BasisVector("x", i) for i in range(1, n - 1)}
        required |= {BasisVector("y", i) for i in range(1, n + 1)}
        excluded = {BasisVector("x", n), BasisVector("x", n - 1)}
        report["coverage"] = required <= involved and not (involved & excluded)
        return report

    def satisfies_properties(self) -> bool:
        return all(self.property_report().values())

    def presentation(self, field: PrimeField) -> Presentation:
        items = [(a, b, c, 1) for a, b, c in self.triples]
        return Presentation.build(self.n, field, items)


def _as_triples(raw: list[tuple[tuple[str, int], int, int]]):
    out = []
    for (kind, gi), j, k in raw:
        out.append((BasisVector(kind, gi), BasisVector("y", j), BasisVector("y", k)))
    return tuple(sorted(out, key=lambda t: (t[0].kind, t[0].index, t[1].index, t[2].index)))


def _injections(gens, pairs, must_cover: set[int]):
    """Lazily yield injective assignments gen -> pair whose union of chosen
    pair entries covers must_cover; pairs are tried in the given order."""

    def feasible(uncovered: set[int], remaining: int) -> bool:
        return len(uncovered) <= 2 * remaining

    def rec(idx: int, used: set[tuple[int, int]], uncovered: set[int], acc):
        if idx == len(gens):
            if not uncovered:
                yield list(acc)
            return
        remaining = len(gens) - idx
        if not feasible(uncovered, remaining):
            return
        for pair in pairs:
            if pair in used:
                continue
            acc.append((gens[idx], pair))
            used.add(pair)
            yield from rec(idx + 1, used, uncovered - set(pair), acc)
            used.remove(pair)
            acc.pop()

    yield from rec(0, set(), set(must_cover), [])


def _base_assignments(n: int, m: int):
    """Shell-by-shell bijections below the outermost level.

    The first yield pairs descending generators with pairs in lexicographic
    order; later yields permute the pair order per shell.
    """
    levels = []
    for r in range(1, m):
        gens = _x_shell(n, r)
        pairs = _pair_shell(n, r)
        if len(gens) != len(pairs):
            raise ConstructionError(f"shell size mismatch at level {r}")
        levels.append((gens, pairs))
    if not levels:
        yield []
        return
    for combo in itertools.product(*[itertools.permutations(pairs) for _, pairs in levels]):
        assignment = []
        for (gens, _), perm in zip(levels, combo):
            assignment.extend((("x", g), i, j) for g, (i, j) in zip(gens, perm))
        yield assignment


def _w_completions(existing_sets: list[frozenset], lows: list[int], n: int):
    """Lazily yield all-y triples that involve every low y index.

    Candidates for the lowest uncovered index a are (a, b, c) with b
    ascending and c descending, then (i, a, c) with i descending and c
    descending; each must share at most one entry with every chosen triple.
    """

    def candidates(a: int):
        for b in range(a + 1, n + 1):
            for c in range(n, b, -1):
                yield (a, b, c)
        for i in range(a - 1, 0, -1):
            for c in range(n, a, -1):
                yield (i, a, c)

    def rec(chosen: list[tuple[int, int, int]], chosen_sets: list[frozenset], uncovered: set[int]):
        if not uncovered:
            yield list(chosen)
            return
        a = min(uncovered)
        for tri in candidates(a):
            tri_set = frozenset(BasisVector("y", i) for i in tri)
            if any(len(tri_set & s) > 1 for s in existing_sets):
                continue
            if any(len(tri_set & s) > 1 for s in chosen_sets):
                continue
            chosen.append(tri)
            chosen_sets.append(tri_set)
            yield from rec(chosen, chosen_sets, uncovered - set(tri))
            chosen_sets.pop()
            chosen.pop()

    yield from rec([], [], set(lows))


def _verified(tset: TripleSet, field: PrimeField, predicted: int) -> Presentation | None:
    pres = tset.presentation(field)
    if not validate_nilpotent_presentation(pres):
        return None
    alg = build_algebra(pres)
    low = lower_central_series(alg)
    if low.nilpotency_class != predicted:
        return None
    if alg.dim - low.lower[1].dim != 2:
        return None
    if _centralizer_above(alg, zero_space(alg)).dim != 2:
        return None
    return pres


def construct_minimal(n: int, field: PrimeField) -> tuple[TripleSet, Presentation]:
    """Build a rank-2 algebra of the predicted minimal class for dimension 2n.

    Deterministic: the first assignment in the pinned enumeration order that
    satisfies the triple-set properties and self-verifies is returned.
    """
    pred = predict_min_class(n)
    m = pred.m
    k_low = n - omega(m)
    pair_shell_m = _pair_shell(n, m)
    cover = set(range(n - omega(m) + 1, n - omega(m - 1) + 1))
    max_verifications = 5000

    if pred.case == "ONE":
        u_gens = []
        for k in range(k_low, 0, -1):
            u_gens.append(("x", k))
            u_gens.append(("y", k))
    else:
        u_gens = [("x", k) for k in range(k_low, 0, -1)]

    def candidates():
        for base in _base_assignments(n, m):
            for inj in _injections(u_gens, pair_shell_m, cover):
                psi_triples = base + [(g, i, j) for g, (i, j) in inj]
                if pred.case == "ONE":
                    yield psi_triples
                else:
                    existing = [
                        frozenset(
                            (
                                BasisVector(g[0], g[1]),
                                BasisVector("y", i),
                                BasisVector("y", j),
                            )
                        )
                        for g, i, j in psi_triples
                    ]
                    lows = list(range(1, k_low + 1))
                    for extra in _w_completions(existing, lows, n):
                        yield psi_triples + [(("y", a), b, c) for a, b, c in extra]

    verifications = 0
    for raw in candidates():
        tset = TripleSet(n, m, pred.case, _as_triples(raw))
        if not tset.satisfies_properties():
            continue
        verifications += 1
        if verifications > max_verifications:
            break
        pres = _verified(tset, field, pred.predicted_class)
        if pres is not None:
            return tset, pres
    raise ConstructionError(
        f"no verified minimal construction found for n={n} over {field!r}"
    )


# ---------------------------------------------------------------------------
# catalog of known minimal presentations


@dataclass(frozen=True)
class CatalogEntry:
    """A known minimal rank-2 presentation, optionally scaled by a unit r."""

    name: str
    n: int
    expected_class: int
    expected_rank: int
    parameterized: bool
    shape: tuple[tuple[str, str, str, object], ...]

    @property
    def dim(self) -> int:
        return 2 * self.n

    def presentation(self, field: PrimeField | None = None, r: int = 1) -> Presentation:
        field = field or PrimeField(3)
        rv = r % field.p
        if self.parameterized and rv == 0:
            raise ValueError(f"{self.name} requires a nonzero parameter r")
        items = []
        for a, b, c, value in self.shape:
            items.append((a, b, c, rv if value == "r" else int(value)))
        return Presentation.build(self.n, field, items)


_CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        "P8-2-1", 4, 5, 2, True,
        (("x2", "y3", "y4", "r"), ("x1", "y2", "y3", 1), ("y1", "y2", "y4", 1)),
    ),
    CatalogEntry(
        "P10-2-1", 5, 6, 2, False,
        (("x3", "y4", "y5", 1), ("x2", "y3", "y5", 1), ("x1", "y3", "y4", 1),
         ("y1", "y2", "y5", 1)),
    ),
    CatalogEntry(
        "P10-2-2", 5, 6, 2, True,
        (("x3", "y4", "y5", "r"), ("x2", "y3", "y5", 1), ("x1", "y3", "y4", 1),
         ("y1", "y2", "y3", 1)),
    ),
    CatalogEntry(
        "P12-2-1", 6, 7, 2, False,
        (("x4", "y5", "y6", 1), ("x3", "y4", "y6", 1), ("x2", "y4", "y5", 1),
         ("x1", "y2", "y4", 1), ("y1", "y2", "y3", 1)),
    ),
    CatalogEntry(
        "P14-2-1", 7, 7, 2, False,
        (("x5", "y6", "y7", 1), ("x4", "y5", "y6", 1), ("x3", "y5", "y7", 1),
         ("x2", "y3", "y5", 1), ("x1", "y3", "y6", 1), ("y1", "y4", "y5", 1),
         ("y2", "y4", "y6", 1)),
    ),
    CatalogEntry(
        "P16-2-1", 8, 7, 2, False,
        (("x6", "y7", "y8", 1), ("x5", "y6", "y8", 1), ("x4", "y6", "y7", 1),
         ("x3", "y5", "y8", 1), ("x2", "y5", "y7", 1), ("x1", "y5", "y6", 1),
         ("y1", "y4", "y8", 1), ("y2", "y4", "y7", 1), ("y3", "y4", "y6", 1)),
    ),
)


def catalog() -> list[CatalogEntry]:
    """All known minimal rank-2 presentations up to dimension 16."""
    return list(_CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    for entry in _CATALOG:
        if entry.name == name:
            return entry
    raise KeyError(f"unknown catalog entry {name!r}")


# ---------------------------------------------------------------------------
# scaling isomorphisms


@dataclass(frozen=True)
class ScalingWitness:
    """A symplectic monomial basis change x_i -> s_i x_i, y_i -> s_i^-1 y_i."""

    field: PrimeField
    scales: tuple[int, ...]

    def coordinate_scales(self) -> list[int]:
        out = []
        for s in self.scales:
            out.append(s % self.field.p)
            out.append(self.field.inv(s))
        return out


def _transform_values(tensor: StructureTensor, witness: ScalingWitness):
    scales = witness.coordinate_scales()
    p = witness.field.p
    return {
        key: value * scales[key[0]] * scales[key[1]] * scales[key[2]] % p
        for key, value in tensor.items()
    }


def verify_scaling_witness(a: Presentation, b: Presentation, witness: ScalingWitness) -> bool:
    """True iff the witness transforms a's full tensor exactly onto b's."""
    ta = StructureTensor.from_presentation(a)
    tb = StructureTensor.from_presentation(b)
    return _transform_values(ta, witness) == dict(tb.items())


def try_scaling_isomorphism(
    a: Presentation, b: Presentation, budget: int | None = None
) -> ScalingWitness | None:
    """Exhaustive search over diagonal symplectic scalings taking a to b.

    A scaling multiplies the tensor value at (c1, c2, c3) by the product of
    the three coordinate scales, so the support is preserved; if the two
    supports differ no diagonal witness exists.  budget caps the number of
    candidate tuples examined.  A returned witness is always re-verified on
    the full tensor.  Absence of a witness does not prove the algebras
    non-isomorphic.
    """
    if a.n != b.n or a.field != b.field:
        raise ValueError("presentations must share n and field")
    ta = StructureTensor.from_presentation(a)
    tb = StructureTensor.from_presentation(b)
    if ta.support() != tb.support():
        return None
    items_a = ta.items()
    target = dict(tb.items())
    field = a.field
    p = field.p
    tried = 0
    for scales in itertools.product(field.units(), repeat=a.n):
        if budget is not None and tried >= budget:
            return None
        tried += 1
        witness = ScalingWitness(field, scales)
        cs = witness.coordinate_scales()
        if all(
            value * cs[k[0]] * cs[k[1]] * cs[k[2]] % p == target[k] for k, value in items_a
        ):
            if verify_scaling_witness(a, b, witness):
                return witness
    return None


# ---------------------------------------------------------------------------
# fingerprints


def fingerprint(alg: Algebra) -> tuple:
    """Isomorphism invariants; unequal fingerprints certify non-isomorphism."""
    report = series_report(alg)
    lsq = report.lower[1] if len(report.lower) > 1 else report.lower[0]
    sq_product = product_space(alg, lsq, lsq)
    return (
        report.lower_dims,
        report.upper_dims,
        sq_product.dim,
        tuple(is_isotropic(alg, term) for term in report.lower),
        report.nilpotency_class,
        report.rank,
    )
