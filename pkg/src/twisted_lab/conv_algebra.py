"""The twisted convolution algebra l^1_{alpha,omega}(G, A) for finite G.

Haar measure is counting measure (weight 1 per point) and the modular
function is identically 1; neither is configurable.  The unit delta_e^1
stands in for a bounded approximate identity.

Coordinates use the basis delta_x (x) e_k with index x * dim(A) + k.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .coeff_algebra import AlgElement, basis as alg_basis, is_unitary, op_norm
from .errors import DimensionMismatch, NotUnitary, SystemMismatch
from .linalg import Matrix, Vector, zero_vector
from .scalars import CycScalar, ScalarLike, as_scalar, zero
from .twisted_action import TwistedSystem

HAAR_WEIGHT = 1
MODULAR_FUNCTION = 1


class ConvElement:
    __slots__ = ("system", "values", "_hash")

    def __init__(self, system: TwistedSystem, values: Sequence[AlgElement]):
        if len(values) != system.group.order:
            raise DimensionMismatch(f"need {system.group.order} values, got {len(values)}")
        self.system = system
        self.values = tuple(values)
        self._hash = None

    @classmethod
    def zero(cls, system: TwistedSystem) -> "ConvElement":
        z = system.unit_element * 0
        return cls(system, [z] * system.group.order)

    @classmethod
    def delta(cls, system: TwistedSystem, x: int, a: AlgElement | None = None) -> "ConvElement":
        z = system.unit_element * 0
        vals = [z] * system.group.order
        vals[x] = system.unit_element if a is None else a
        return cls(system, vals)

    @classmethod
    def unit(cls, system: TwistedSystem) -> "ConvElement":
        return cls.delta(system, system.group.identity)

    def __call__(self, x: int) -> AlgElement:
        return self.values[x]

    def _check(self, other: "ConvElement"):
        if not isinstance(other, ConvElement) or other.system is not self.system:
            raise SystemMismatch("elements belong to different systems")

    def __add__(self, other: "ConvElement") -> "ConvElement":
        self._check(other)
        return ConvElement(self.system, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ConvElement") -> "ConvElement":
        self._check(other)
        return ConvElement(self.system, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "ConvElement":
        return ConvElement(self.system, [-a for a in self.values])

    def scale(self, c: ScalarLike) -> "ConvElement":
        return ConvElement(self.system, [a * c for a in self.values])

    def __mul__(self, other):
        if isinstance(other, ConvElement):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def star(self) -> "ConvElement":
        return involve(self)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvElement) and other.system is self.system and self.values == other.values

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.values)
        return self._hash

    def __repr__(self) -> str:
        parts = [f"{x}: {a!r}" for x, a in enumerate(self.values) if not a.is_zero()]
        return "ConvElement({" + ", ".join(parts) + "})"

    def to_json(self) -> dict:
        return {str(x): a.to_json() for x, a in enumerate(self.values) if not a.is_zero()}


def convolve(phi: ConvElement, psi: ConvElement) -> ConvElement:
    """(phi * psi)(x) = sum_y phi(y) alpha_y(psi(y^-1 x)) omega(y, y^-1 x)."""
    phi._check(psi)
    sys_ = phi.system
    g = sys_.group
    out = [sys_.unit_element * 0 for _ in g.elements()]
    for y in g.elements():
        a = phi.values[y]
        if a.is_zero():
            continue
        yinv = g.inverses[y]
        for x in g.elements():
            z = g.table[yinv][x]
            b = psi.values[z]
            if b.is_zero():
                continue
            out[x] = out[x] + a * sys_.alpha(y, b) * sys_.cocycle(y, z)
    return ConvElement(sys_, out)


def involve(phi: ConvElement) -> ConvElement:
    """phi*(x) = Delta(x^-1) omega(x, x^-1)* alpha_x(phi(x^-1)*), with Delta = 1."""
    sys_ = phi.system
    g = sys_.group
    out = []
    for x in g.elements():
        xinv = g.inverses[x]
        a = phi.values[xinv]
        if a.is_zero():
            out.append(a)
            continue
        out.append(sys_.cocycle(x, xinv).star() * sys_.alpha(x, a.star()) * MODULAR_FUNCTION)
    return ConvElement(sys_, out)


def l1_norm(phi: ConvElement) -> float:
    return float(sum(op_norm(a) for a in phi.values if not a.is_zero())) * HAAR_WEIGHT


def multiplier_apply(u: AlgElement, y: int, phi: ConvElement) -> ConvElement:
    """m_{u,y}(phi)(x) = u alpha_y(phi(y^-1 x)) omega(y, y^-1 x)."""
    sys_ = phi.system
    if u.shape != sys_.shape or u.conductor != sys_.conductor:
        raise SystemMismatch("multiplier coefficient is not in the coefficient algebra")
    g = sys_.group
    yinv = g.inverses[y]
    out = []
    for x in g.elements():
        z = g.table[yinv][x]
        b = phi.values[z]
        out.append(b if b.is_zero() else u * sys_.alpha(y, b) * sys_.cocycle(y, z))
    return ConvElement(sys_, out)


def adjoint_label(system: TwistedSystem, u: AlgElement, y: int) -> tuple[AlgElement, int]:
    """(u', y') with m_{u,y}* = m_{u',y'}: u' = omega(y^-1, y)* alpha_{y^-1}(u*), y' = y^-1."""
    yinv = system.group.inverses[y]
    return system.cocycle(yinv, y).star() * system.alpha(yinv, u.star()), yinv


def multiplier_adjoint_apply(u: AlgElement, y: int, phi: ConvElement) -> ConvElement:
    if not is_unitary(u):
        raise NotUnitary("adjoint formula requires a unitary coefficient")
    v, yinv = adjoint_label(phi.system, u, y)
    return multiplier_apply(v, yinv, phi)


def to_vector(phi: ConvElement) -> Vector:
    return [c for a in phi.values for c in a.coords()]


def from_vector(system: TwistedSystem, v: Sequence[CycScalar]) -> ConvElement:
    k = system.shape.dim
    if len(v) != system.dim:
        raise DimensionMismatch(f"expected vector of length {system.dim}, got {len(v)}")
    return ConvElement(
        system,
        [AlgElement.from_coords(system.shape, system.conductor, v[x * k:(x + 1) * k]) for x in system.group.elements()],
    )


def _columns_to_matrix(cols: list[Vector]) -> Matrix:
    d = len(cols)
    return [[cols[j][i] for j in range(d)] for i in range(len(cols[0]) if cols else 0)]


def left_mult_matrix(phi: ConvElement) -> Matrix:
    alg = conv_algebra(phi.system)
    return _columns_to_matrix([to_vector(convolve(phi, b)) for b in alg.basis])


def right_mult_matrix(phi: ConvElement) -> Matrix:
    alg = conv_algebra(phi.system)
    return _columns_to_matrix([to_vector(convolve(b, phi)) for b in alg.basis])


def operator_matrix(system: TwistedSystem, op) -> Matrix:
    """Matrix of a linear operator on B in the delta basis."""
    alg = conv_algebra(system)
    return _columns_to_matrix([to_vector(op(b)) for b in alg.basis])


class ConvAlgebra:
    """Cached structure data of B for one system (basis, structure constants, star)."""

    def __init__(self, system: TwistedSystem):
        self.system = system
        self.dim = system.dim
        self.conductor = system.conductor

    @cached_property
    def basis(self) -> list[ConvElement]:
        es = alg_basis(self.system.shape, self.conductor)
        return [ConvElement.delta(self.system, x, e) for x in self.system.group.elements() for e in es]

    @cached_property
    def structure(self) -> list[list[list[tuple[int, CycScalar]]]]:
        """structure[i][j] = sparse coordinates of b_i * b_j."""
        out = []
        for bi in self.basis:
            row = []
            for bj in self.basis:
                v = to_vector(convolve(bi, bj))
                row.append([(k, c) for k, c in enumerate(v) if c])
            out.append(row)
        return out

    @cached_property
    def star_images(self) -> list[Vector]:
        return [to_vector(involve(b)) for b in self.basis]

    @cached_property
    def unit_vector(self) -> Vector:
        return to_vector(ConvElement.unit(self.system))

    def mul(self, u: Sequence[CycScalar], v: Sequence[CycScalar]) -> Vector:
        out = zero_vector(self.dim, self.conductor)
        st = self.structure
        nz_v = [(j, c) for j, c in enumerate(v) if c]
        for i, a in enumerate(u):
            if not a:
                continue
            row = st[i]
            for j, b in nz_v:
                ab = a * b
                for k, c in row[j]:
                    out[k] = out[k] + ab * c
        return out

    def left_basis(self, i: int, v: Sequence[CycScalar]) -> Vector:
        out = zero_vector(self.dim, self.conductor)
        row = self.structure[i]
        for j, b in enumerate(v):
            if b:
                for k, c in row[j]:
                    out[k] = out[k] + b * c
        return out

    def right_basis(self, j: int, v: Sequence[CycScalar]) -> Vector:
        out = zero_vector(self.dim, self.conductor)
        st = self.structure
        for i, a in enumerate(v):
            if a:
                for k, c in st[i][j]:
                    out[k] = out[k] + a * c
        return out

    def star(self, v: Sequence[CycScalar]) -> Vector:
        out = zero_vector(self.dim, self.conductor)
        for j, a in enumerate(v):
            if a:
                ac = a.conj()
                for k, c in enumerate(self.star_images[j]):
                    if c:
                        out[k] = out[k] + ac * c
        return out

    def is_commutative(self) -> bool:
        st = self.structure
        return all(st[i][j] == st[j][i] for i in range(self.dim) for j in range(i + 1, self.dim))


@lru_cache(maxsize=64)
def conv_algebra(system: TwistedSystem) -> ConvAlgebra:
    return ConvAlgebra(system)
