"""Exact linear algebra over prime fields GF(p).

Matrices carry fully reduced numpy int64 residues together with their
field, and every subspace is stored in reduced row echelon form, so
equality, hashing and chain comparisons are exact and deterministic.
The fixed coordinate convention everywhere in this package is

    x_1, y_1, x_2, y_2, ..., x_n, y_n  ->  coordinates 0, 1, ..., 2n-1

(x_i at 2(i-1), y_i at 2i-1 in 0-based indexing).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "is_prime",
    "PrimeField",
    "FieldElement",
    "Matrix",
    "rref",
    "nullspace",
    "Subspace",
    "subspace_sum",
    "subspace_intersect",
    "GramMatrix",
    "perp",
    "solve_against_form",
]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(p)."""

    p: int = 3

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"field order must be prime, got {self.p}")

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def element(self, value) -> "FieldElement":
        return FieldElement(int(value) % self.p, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1 % self.p, self)

    def inv(self, a: int) -> int:
        """Inverse of a unit mod p, by the extended Euclidean algorithm."""
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        r0, r1, s0, s1 = self.p, a, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        return s0 % self.p

    def units(self) -> range:
        return range(1, self.p)

    def reduce(self, data) -> np.ndarray:
        """Reduce arbitrary integer data to a read-only residue array."""
        arr = np.asarray(data, dtype=np.int64) % self.p
        arr.flags.writeable = False
        return arr

    def vector(self, values, length: int | None = None) -> np.ndarray:
        """Coerce a sequence of ints or FieldElements to a residue vector."""
        vals = [v.residue if isinstance(v, FieldElement) else int(v) for v in values]
        vec = self.reduce(vals)
        if vec.ndim != 1:
            raise ValueError("expected a one-dimensional vector")
        if length is not None and vec.shape[0] != length:
            raise ValueError(f"expected vector of length {length}, got {vec.shape[0]}")
        return vec


@dataclass(frozen=True)
class FieldElement:
    """A fully reduced residue in a prime field."""

    residue: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.residue < self.field.p:
            raise ValueError(f"residue {self.residue} not reduced mod {self.field.p}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.residue
        return int(other)

    def __add__(self, other):
        return FieldElement((self.residue + self._coerce(other)) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement((self.residue - self._coerce(other)) % self.field.p, self.field)

    def __rsub__(self, other):
        return FieldElement((self._coerce(other) - self.residue) % self.field.p, self.field)

    def __mul__(self, other):
        return FieldElement((self.residue * self._coerce(other)) % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.residue % self.field.p, self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.residue), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.residue * self.field.inv(o) % self.field.p, self.field)

    def __bool__(self) -> bool:
        return self.residue != 0

    def __int__(self) -> int:
        return self.residue

    def __repr__(self) -> str:
        return f"{self.residue} (mod {self.field.p})"


@dataclass(frozen=True, eq=False)
class Matrix:
    """A dense matrix of residues over one prime field."""

    field: PrimeField
    data: np.ndarray

    def __post_init__(self):
        arr = self.field.reduce(self.data)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, field: PrimeField, rows) -> "Matrix":
        arr = np.array([[int(v) for v in row] for row in rows], dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(len(rows), -1)
        return cls(field, arr)

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(int(self.data[i, j]), self.field)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.data.tolist()})"


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an integer array mod p.

    Returns (rref, pivot_columns). Rows of zeros sink to the bottom.
    """
    a = (np.asarray(a, dtype=np.int64) % p).copy()
    m, ncols = a.shape
    field = PrimeField(p)
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * field.inv(int(a[r, c])) % p
        col = a[:, c].copy()
        col[r] = 0
        a -= np.outer(col, a[r])
        a %= p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> Matrix:
    """The unique reduced row echelon form; row space is preserved."""
    arr, _ = _rref_array(m.data, m.field.p)
    return Matrix(m.field, arr)


def nullspace(m: Matrix) -> Matrix:
    """Rows spanning the right kernel {x : m @ x = 0}."""
    p = m.field.p
    a, pivots = _rref_array(m.data, p)
    ncols = m.cols
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for row_idx, f in enumerate(free):
        basis[row_idx, f] = 1
        for r, c in enumerate(pivots):
            basis[row_idx, c] = -a[r, f] % p
    return Matrix(m.field, basis)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F^ambient_dim, stored as a canonical RREF basis.

    Two subspaces are equal iff their canonical bases agree entrywise,
    which makes them usable as dict keys and in chain comparisons.
    """

    field: PrimeField
    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise ValueError("basis width does not match ambient dimension")

    @classmethod
    def from_vectors(cls, field: PrimeField, ambient_dim: int, vectors) -> "Subspace":
        rows = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim)
        arr, pivots = _rref_array(rows, field.p)
        return cls(field, ambient_dim, Matrix(field, arr[: len(pivots)]))

    @classmethod
    def zero(cls, field: PrimeField, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.zeros(field, 0, ambient_dim))

    @classmethod
    def full(cls, field: PrimeField, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def contains(self, vector) -> bool:
        vec = self.field.vector(vector, self.ambient_dim)
        stacked = np.vstack([self.basis.data, vec[None, :]])
        _, pivots = _rref_array(stacked, self.field.p)
        return len(pivots) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise ValueError("ambient mismatch")
        stacked = np.vstack([self.basis.data, other.basis.data])
        _, pivots = _rref_array(stacked, self.field.p)
        return len(pivots) == self.dim

    def basis_rows(self) -> np.ndarray:
        return self.basis.data

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field!r})"


def _require_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.field != b.field or a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient mismatch")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Canonical span of the union of the two bases."""
    _require_same_ambient(a, b)
    stacked = np.vstack([a.basis.data, b.basis.data])
    return Subspace.from_vectors(a.field, a.ambient_dim, stacked)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of row spaces.

    A vector lies in both spans iff it can be written c @ A = d @ B, so the
    kernel of [A^T | -B^T] yields the coefficient pairs.
    """
    _require_same_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.field, a.ambient_dim)
    stacked = np.hstack([a.basis.data.T, -b.basis.data.T % a.field.p])
    ker = nullspace(Matrix(a.field, stacked))
    if ker.rows == 0:
        return Subspace.zero(a.field, a.ambient_dim)
    coeffs = ker.data[:, : a.dim]
    vectors = coeffs @ a.basis.data % a.field.p
    return Subspace.from_vectors(a.field, a.ambient_dim, vectors)


class GramMatrix:
    """The standard symplectic form on 2n coordinates.

    Pairings on the standard basis: (x_i, y_i) = 1, (y_i, x_i) = -1 and all
    other basis pairings vanish; the matrix is invertible by construction.
    """

    def __init__(self, field: PrimeField, n: int):
        if n < 1:
            raise ValueError("half-dimension n must be at least 1")
        self.field = field
        self.n = n
        data = np.zeros((2 * n, 2 * n), dtype=np.int64)
        for i in range(n):
            data[2 * i, 2 * i + 1] = 1
            data[2 * i + 1, 2 * i] = -1 % field.p
        data.flags.writeable = False
        self.data = data

    @property
    def dim(self) -> int:
        return 2 * self.n

    def pairing(self, u, v) -> FieldElement:
        uu = self.field.vector(u, self.dim)
        vv = self.field.vector(v, self.dim)
        return self.field.element(int(uu @ self.data @ vv))

    def __eq__(self, other) -> bool:
        return isinstance(other, GramMatrix) and self.field == other.field and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.field.p, self.n))

    def __repr__(self) -> str:
        return f"GramMatrix(n={self.n}, {self.field!r})"


def perp(s: Subspace, g: GramMatrix) -> Subspace:
    """The orthogonal complement {v : (u, v) = 0 for all u in s}.

    dim s + dim perp(s) = 2n and perp(perp(s)) = s since the form is
    non-degenerate.
    """
    if s.ambient_dim != g.dim or s.field != g.field:
        raise ValueError("ambient mismatch")
    if s.dim == 0:
        return Subspace.full(s.field, s.ambient_dim)
    constraints = s.basis.data @ g.data % s.field.p
    ker = nullspace(Matrix(s.field, constraints))
    return Subspace.from_vectors(s.field, s.ambient_dim, ker.data)


def solve_against_form(g: GramMatrix, rhs) -> np.ndarray:
    """The unique v with (v, u_k) = rhs[k] for every standard basis vector u_k.

    With the standard form this is closed-form: the x_k coefficient of v is
    the required pairing against y_k, and the y_k coefficient is minus the
    required pairing against x_k.
    """
    r = g.field.vector(rhs, g.dim)
    out = np.zeros(g.dim, dtype=np.int64)
    out[0::2] = r[1::2]
    out[1::2] = -r[0::2] % g.field.p
    return g.field.reduce(out)
