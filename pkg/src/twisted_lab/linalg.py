"""Exact dense linear algebra over Q(zeta_m).

Vectors are lists of CycScalar, matrices are lists of rows.  Echelon forms
are fully reduced with a fixed left-to-right pivot order, so results are
canonical and independent of the order vectors were inserted in.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch
from .scalars import CycScalar, one, zero

Vector = list
Matrix = list


def zero_vector(d: int, m: int) -> Vector:
    z = zero(m)
    return [z] * d


def unit_vector(d: int, k: int, m: int) -> Vector:
    v = zero_vector(d, m)
    v[k] = one(m)
    return v


def zero_matrix(rows: int, cols: int, m: int) -> Matrix:
    z = zero(m)
    return [[z] * cols for _ in range(rows)]


def identity_matrix(n: int, m: int) -> Matrix:
    out = zero_matrix(n, n, m)
    o = one(m)
    for i in range(n):
        out[i][i] = o
    return out


def is_zero_vector(v: Sequence[CycScalar]) -> bool:
    return not any(v)


def vec_add(a: Sequence[CycScalar], b: Sequence[CycScalar]) -> Vector:
    return [x + y for x, y in zip(a, b)]


def vec_sub(a: Sequence[CycScalar], b: Sequence[CycScalar]) -> Vector:
    return [x - y for x, y in zip(a, b)]


def vec_scale(c: CycScalar, v: Sequence[CycScalar]) -> Vector:
    return [c * x if x else x for x in v]


def mat_mul(a: Matrix, b: Matrix, m: int) -> Matrix:
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = zero_matrix(n, cols, m)
    for i in range(n):
        row = a[i]
        acc = out[i]
        for t in range(k):
            c = row[t]
            if c:
                bt = b[t]
                for j in range(cols):
                    if bt[j]:
                        acc[j] = acc[j] + c * bt[j]
    return out


def mat_vec(a: Matrix, v: Sequence[CycScalar], m: int) -> Vector:
    z = zero(m)
    out = []
    for row in a:
        s = z
        for c, x in zip(row, v):
            if c and x:
                s = s + c * x
        out.append(s)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c: CycScalar, a: Matrix) -> Matrix:
    return [[c * x if x else x for x in row] for row in a]


def conj_transpose(a: Matrix, m: int) -> Matrix:
    if not a:
        return []
    return [[a[i][j].conj() for i in range(len(a))] for j in range(len(a[0]))]


def mat_key(a: Matrix) -> tuple:
    return tuple(tuple(x.sort_key() for x in row) for row in a)


class Echelon:
    """Incrementally maintained reduced row-echelon basis."""

    def __init__(self, dim: int, m: int):
        self.dim = dim
        self.m = m
        self._rows: dict[int, Vector] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def rows(self) -> list[Vector]:
        return [self._rows[p] for p in sorted(self._rows)]

    def reduce(self, v: Sequence[CycScalar]) -> Vector:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.dim}")
        v = list(v)
        for p, row in self._rows.items():
            c = v[p]
            if c:
                for k, r in enumerate(row):
                    if r:
                        v[k] = v[k] - c * r
        return v

    def contains(self, v: Sequence[CycScalar]) -> bool:
        return is_zero_vector(self.reduce(v))

    def add(self, v: Sequence[CycScalar]) -> bool:
        """Insert v; return True if the rank grew."""
        r = self.reduce(v)
        p = next((k for k, x in enumerate(r) if x), None)
        if p is None:
            return False
        inv = r[p].inv()
        r = [x * inv if x else x for x in r]
        for q, row in self._rows.items():
            c = row[p]
            if c:
                self._rows[q] = [a - c * b if b else a for a, b in zip(row, r)]
        self._rows[p] = r
        return True


def rref(rows: Iterable[Sequence[CycScalar]], dim: int, m: int) -> tuple[list[Vector], list[int]]:
    ech = Echelon(dim, m)
    for v in rows:
        ech.add(v)
    return ech.rows(), ech.pivots


def rank(a: Matrix, m: int) -> int:
    if not a:
        return 0
    return len(rref(a, len(a[0]), m)[0])


def null_space(a: Matrix, cols: int, m: int) -> list[Vector]:
    """Basis of {x : a x = 0}, one vector per free column."""
    rows, pivots = rref(a, cols, m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    o = one(m)
    for f in free:
        x = zero_vector(cols, m)
        x[f] = o
        for row, p in zip(rows, pivots):
            if row[f]:
                x[p] = -row[f]
        basis.append(x)
    return basis


def inverse(a: Matrix, m: int) -> Optional[Matrix]:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity_matrix(n, m))]
    rows, pivots = rref(aug, 2 * n, m)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        return None
    return [row[n:] for row in rows[:n]]


class Subspace:
    """Exact subspace of K^d stored as its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "conductor", "basis", "pivots", "_key")

    def __init__(self, ambient_dim: int, conductor: int, basis: list[Vector], pivots: list[int]):
        self.ambient_dim = ambient_dim
        self.conductor = conductor
        self.basis = basis
        self.pivots = pivots
        self._key = None

    @classmethod
    def span(cls, vectors: Iterable[Sequence[CycScalar]], ambient_dim: int, conductor: int) -> "Subspace":
        rows, pivots = rref(vectors, ambient_dim, conductor)
        return cls(ambient_dim, conductor, rows, pivots)

    @classmethod
    def from_echelon(cls, ech: Echelon) -> "Subspace":
        return cls(ech.dim, ech.m, ech.rows(), ech.pivots)

    @classmethod
    def zero_space(cls, d: int, m: int) -> "Subspace":
        return cls(d, m, [], [])

    @classmethod
    def full(cls, d: int, m: int) -> "Subspace":
        return cls(d, m, identity_matrix(d, m), list(range(d)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.basis)

    def echelon(self) -> Echelon:
        ech = Echelon(self.ambient_dim, self.conductor)
        ech._rows = {p: row for p, row in zip(self.pivots, self.basis)}
        return ech

    def reduce(self, v: Sequence[CycScalar]) -> Vector:
        return self.echelon().reduce(v)

    def contains(self, v: Sequence[CycScalar]) -> bool:
        return is_zero_vector(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.ambient_dim, tuple(self.pivots), mat_key(self.basis))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def solve(columns: list[Vector], target: Sequence[CycScalar], m: int) -> Optional[Vector]:
    """Coefficients t with sum_k t_k columns[k] = target, or None if unsolvable."""
    n = len(columns)
    rows = len(target)
    aug = [[columns[k][i] for k in range(n)] + [target[i]] for i in range(rows)]
    red, pivots = rref(aug, n + 1, m)
    if n in pivots:
        return None
    t = zero_vector(n, m)
    for row, p in zip(red, pivots):
        t[p] = row[n]
    return t
