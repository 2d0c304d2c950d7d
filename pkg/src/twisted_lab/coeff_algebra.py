"""The coefficient algebra A = M_{n_1} + ... + M_{n_k} over Q(zeta_m).

A is unital, so its multiplier algebra is A itself and the unitary
multipliers are just the unitaries of A.  Coordinates of an element are
its matrix-unit coefficients, block by block, row-major.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeMismatch
from .scalars import CycScalar, ScalarLike, as_scalar, one, zero


@dataclass(frozen=True)
class BlockShape:
    blocks: tuple[int, ...]

    def __post_init__(self):
        if not self.blocks or any(n < 1 for n in self.blocks):
            raise ValueError(f"invalid block sizes {self.blocks}")

    @classmethod
    def of(cls, blocks: Iterable[int]) -> "BlockShape":
        return cls(tuple(int(n) for n in blocks))

    @cached_property
    def dim(self) -> int:
        return sum(n * n for n in self.blocks)

    @cached_property
    def index(self) -> tuple[tuple[int, int, int], ...]:
        """Coordinate k -> (block, row, col)."""
        return tuple((b, i, j) for b, n in enumerate(self.blocks) for i in range(n) for j in range(n))

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for n in self.blocks:
            out.append(acc)
            acc += n * n
        return tuple(out)

    def coord(self, block: int, i: int, j: int) -> int:
        return self.offsets[block] + i * self.blocks[block] + j


class AlgElement:
    __slots__ = ("shape", "conductor", "mats", "_hash")

    def __init__(self, shape: BlockShape, conductor: int, mats):
        self.shape = shape
        self.conductor = conductor
        self.mats = tuple(tuple(tuple(row) for row in mat) for mat in mats)
        self._hash = None
        if len(self.mats) != len(shape.blocks) or any(
            len(mat) != n or any(len(row) != n for row in mat) for mat, n in zip(self.mats, shape.blocks)
        ):
            raise ShapeMismatch(f"blocks do not match shape {shape.blocks}")

    @classmethod
    def from_blocks(cls, shape: BlockShape, m: int, blocks: Sequence) -> "AlgElement":
        return cls(shape, m, [[[as_scalar(m, x) for x in row] for row in mat] for mat in blocks])

    @classmethod
    def from_coords(cls, shape: BlockShape, m: int, coords: Sequence[CycScalar]) -> "AlgElement":
        if len(coords) != shape.dim:
            raise ShapeMismatch(f"expected {shape.dim} coordinates, got {len(coords)}")
        mats, k = [], 0
        for n in shape.blocks:
            mats.append([list(coords[k + i * n: k + (i + 1) * n]) for i in range(n)])
            k += n * n
        return cls(shape, m, mats)

    @classmethod
    def scalar(cls, shape: BlockShape, m: int, c: ScalarLike) -> "AlgElement":
        c = as_scalar(m, c)
        z = zero(m)
        return cls(shape, m, [[[c if i == j else z for j in range(n)] for i in range(n)] for n in shape.blocks])

    def coords(self) -> list[CycScalar]:
        return [x for mat in self.mats for row in mat for x in row]

    def _check(self, other: "AlgElement"):
        if not isinstance(other, AlgElement) or other.shape != self.shape:
            raise ShapeMismatch("shapes differ")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(
            self.shape, self.conductor,
            [[[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)] for a, b in zip(self.mats, other.mats)],
        )

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.shape, self.conductor, [[[-x for x in row] for row in a] for a in self.mats])

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + (-other)

    def __mul__(self, other) -> "AlgElement":
        if not isinstance(other, AlgElement):
            c = as_scalar(self.conductor, other)
            return AlgElement(self.shape, self.conductor, [[[c * x for x in row] for row in a] for a in self.mats])
        self._check(other)
        z = zero(self.conductor)
        out = []
        for a, b in zip(self.mats, other.mats):
            n = len(a)
            block = []
            for i in range(n):
                ai = a[i]
                row = []
                for j in range(n):
                    s = z
                    for k in range(n):
                        if ai[k] and b[k][j]:
                            s = s + ai[k] * b[k][j]
                    row.append(s)
                block.append(row)
            out.append(block)
        return AlgElement(self.shape, self.conductor, out)

    def __rmul__(self, c) -> "AlgElement":
        return self * c

    def star(self) -> "AlgElement":
        return AlgElement(
            self.shape, self.conductor,
            [[[a[j][i].conj() for j in range(len(a))] for i in range(len(a))] for a in self.mats],
        )

    def is_zero(self) -> bool:
        return not any(x for mat in self.mats for row in mat for x in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgElement) and self.shape == other.shape and self.mats == other.mats

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self.mats))
        return self._hash

    def __repr__(self) -> str:
        blocks = [[[str(x) for x in row] for row in mat] for mat in self.mats]
        return f"AlgElement({blocks})"

    def to_json(self) -> list:
        return [[x.to_json() for row in mat for x in row] for mat in self.mats]

    def to_numpy(self) -> list[np.ndarray]:
        return [np.array([[x.embed() for x in row] for row in mat], dtype=complex) for mat in self.mats]


def alg_mul(a: AlgElement, b: AlgElement) -> AlgElement:
    return a * b


def alg_add(a: AlgElement, b: AlgElement) -> AlgElement:
    return a + b


def alg_star(a: AlgElement) -> AlgElement:
    return a.star()


def unit(shape: BlockShape, m: int) -> AlgElement:
    return AlgElement.scalar(shape, m, 1)


def is_unitary(u: AlgElement) -> bool:
    e = unit(u.shape, u.conductor)
    us = u.star()
    return u * us == e and us * u == e


def matrix_unit(shape: BlockShape, m: int, block: int, i: int, j: int) -> AlgElement:
    coords = [zero(m)] * shape.dim
    coords[shape.coord(block, i, j)] = one(m)
    return AlgElement.from_coords(shape, m, coords)


def basis(shape: BlockShape, m: int) -> list[AlgElement]:
    return [matrix_unit(shape, m, b, i, j) for b, i, j in shape.index]


def op_norm(a: AlgElement) -> float:
    """C*-norm: largest singular value over blocks (float diagnostic)."""
    return max(float(np.linalg.norm(mat, 2)) for mat in a.to_numpy())
