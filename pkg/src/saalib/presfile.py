"""Presentation file parsing and emission.

Line-oriented UTF-8 format; '#' starts a comment line and blank lines are
ignored:

    saa-presentation v1
    n <integer >= 1>
    p <prime>
    kind <general|nilpotent>
    triple <b> <b> <b> <value>     # <b> is x<i> or y<i>, value in [1, p)

Emission is canonical: triple entries in coordinate order with the sign
folded into the value, records sorted by (kind, indices), values reduced.
parse(emit(parse(text))) is the identity and emitted text is a fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    BasisVector,
    Presentation,
    PresentationTriple,
    validate_nilpotent_presentation,
)
from .linalg import PrimeField, is_prime

__all__ = ["ParseError", "PresentationFile", "parse_presentation_file",
           "parse_presentation", "emit_presentation"]

MAGIC = "saa-presentation v1"
KINDS = ("general", "nilpotent")


class ParseError(ValueError):
    """Syntax or validation error, carrying the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class PresentationFile:
    header: str
    n: int
    p: int
    kind: str
    presentation: Presentation


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def parse_presentation_file(text: str) -> PresentationFile:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "empty file")
    pos = 0

    def expect(tag: str) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(lines[-1][0], f"missing '{tag}' line")
        number, line = lines[pos]
        parts = line.split()
        if parts[0] != tag:
            raise ParseError(number, f"expected '{tag}', got {parts[0]!r}")
        pos += 1
        return number, parts

    number, parts = expect("saa-presentation")
    if " ".join(parts) != MAGIC:
        raise ParseError(number, f"unsupported header {' '.join(parts)!r}")

    number, parts = expect("n")
    if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
        raise ParseError(number, "n must be an integer >= 1")
    n = int(parts[1])

    number, parts = expect("p")
    if len(parts) != 2 or not parts[1].isdigit():
        raise ParseError(number, "p must be an integer")
    p = int(parts[1])
    if not is_prime(p):
        raise ParseError(number, f"p must be prime, got {p}")
    field = PrimeField(p)

    number, parts = expect("kind")
    if len(parts) != 2 or parts[1] not in KINDS:
        raise ParseError(number, f"kind must be one of {KINDS}")
    kind = parts[1]

    triples: list[PresentationTriple] = []
    seen: dict[frozenset, int] = {}
    for number, line in lines[pos:]:
        parts = line.split()
        if parts[0] != "triple":
            raise ParseError(number, f"expected 'triple', got {parts[0]!r}")
        if len(parts) != 5:
            raise ParseError(number, "triple needs three basis vectors and a value")
        vectors = []
        for token in parts[1:4]:
            try:
                v = BasisVector.parse(token)
            except ValueError as exc:
                raise ParseError(number, str(exc)) from exc
            if v.index > n:
                raise ParseError(number, f"basis vector {token} out of range for n={n}")
            vectors.append(v)
        if len({v.coordinate for v in vectors}) != 3:
            raise ParseError(number, "repeated basis vector in triple")
        key = frozenset(vectors)
        if key in seen:
            raise ParseError(number, f"duplicate triple (first seen on line {seen[key]})")
        seen[key] = number
        try:
            value = int(parts[4])
        except ValueError as exc:
            raise ParseError(number, f"bad value {parts[4]!r}") from exc
        if not 1 <= value < p:
            raise ParseError(number, f"value must lie in [1, {p}), got {value}")
        a, b, c = vectors
        if kind == "nilpotent":
            if b.kind != "y" or c.kind != "y" or not (a.index < b.index < c.index):
                raise ParseError(
                    number,
                    "nilpotent presentations allow only (x_i y_j, y_k) or "
                    "(y_i y_j, y_k) with i < j < k",
                )
        triples.append(PresentationTriple(a, b, c, field.element(value)))

    pres = Presentation(n, field, tuple(triples))
    return PresentationFile(MAGIC, n, p, kind, pres)


def parse_presentation(text: str) -> Presentation:
    return parse_presentation_file(text).presentation


def emit_presentation(pres: Presentation, kind: str | None = None) -> str:
    """Canonical text form; kind is derived from the triple shape if omitted."""
    if kind is None:
        kind = "nilpotent" if validate_nilpotent_presentation(pres) else "general"
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    lines = [MAGIC, f"n {pres.n}", f"p {pres.field.p}", f"kind {kind}"]
    for t in pres.canonical_triples():
        lines.append(f"triple {t.a} {t.b} {t.c} {t.value.residue}")
    return "\n".join(lines) + "\n"
