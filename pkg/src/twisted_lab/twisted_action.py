"""Twisted actions (G, alpha, omega, A) and exhaustive validation of the
cocycle identity, the twisted homomorphism law, and normalization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .coeff_algebra import AlgElement, BlockShape, basis, is_unitary, unit
from .errors import (
    AxiomIIIViolated,
    AxiomIIViolated,
    AxiomIViolated,
    AxiomViolation,
    ConductorIncompatible,
    NonUnitaryCocycleEntry,
    NotInvertible,
    NotMultiplicative,
    NotStarPreserving,
    NotUnital,
    ShapeMismatch,
)
from .groups import FiniteGroup, cyclic, direct_product
from .linalg import Matrix, identity_matrix, inverse, mat_mul, mat_vec
from .scalars import CycScalar


class AutoMap:
    """Linear map on A given by its matrix on coordinates (column j = image of e_j)."""

    __slots__ = ("shape", "conductor", "matrix", "_cache")

    def __init__(self, shape: BlockShape, conductor: int, matrix: Matrix):
        if len(matrix) != shape.dim or any(len(row) != shape.dim for row in matrix):
            raise ShapeMismatch(f"automorphism matrix must be {shape.dim}x{shape.dim}")
        self.shape = shape
        self.conductor = conductor
        self.matrix = [list(row) for row in matrix]
        self._cache: dict = {}

    @classmethod
    def identity(cls, shape: BlockShape, m: int) -> "AutoMap":
        return cls(shape, m, identity_matrix(shape.dim, m))

    @classmethod
    def from_function(cls, shape: BlockShape, m: int, f: Callable[[AlgElement], AlgElement]) -> "AutoMap":
        cols = [f(e).coords() for e in basis(shape, m)]
        return cls(shape, m, [[cols[j][i] for j in range(shape.dim)] for i in range(shape.dim)])

    @classmethod
    def inner(cls, u: AlgElement) -> "AutoMap":
        us = u.star()
        return cls.from_function(u.shape, u.conductor, lambda a: u * a * us)

    @classmethod
    def block_permutation(cls, shape: BlockShape, m: int, perm: Sequence[int]) -> "AutoMap":
        """Moves block i to block perm[i]; blocks must have matching sizes."""
        if sorted(perm) != list(range(len(shape.blocks))):
            raise ValueError(f"{list(perm)} is not a permutation of the blocks")
        if any(shape.blocks[i] != shape.blocks[p] for i, p in enumerate(perm)):
            raise ShapeMismatch("block permutation must preserve block sizes")

        def f(a: AlgElement) -> AlgElement:
            mats = [None] * len(perm)
            for i, p in enumerate(perm):
                mats[p] = a.mats[i]
            return AlgElement(shape, m, mats)

        return cls.from_function(shape, m, f)

    def __call__(self, a: AlgElement) -> AlgElement:
        hit = self._cache.get(a)
        if hit is None:
            hit = AlgElement.from_coords(self.shape, self.conductor, mat_vec(self.matrix, a.coords(), self.conductor))
            if len(self._cache) < 4096:
                self._cache[a] = hit
        return hit

    def compose(self, other: "AutoMap") -> "AutoMap":
        """self after other."""
        return AutoMap(self.shape, self.conductor, mat_mul(self.matrix, other.matrix, self.conductor))

    def __eq__(self, other) -> bool:
        return isinstance(other, AutoMap) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(tuple(tuple(r) for r in self.matrix))


def validate_automorphism(a_map: AutoMap, shape: Optional[BlockShape] = None) -> AutoMap:
    """Exact *-automorphism check on all basis pairs.

    Raises NotMultiplicative(i, j), NotStarPreserving(i), NotUnital or
    NotInvertible.
    """
    shape = shape or a_map.shape
    if a_map.shape != shape:
        raise ShapeMismatch("automorphism shape differs from algebra shape")
    m = a_map.conductor
    es = basis(shape, m)
    images = [a_map(e) for e in es]
    for i, ei in enumerate(es):
        for j, ej in enumerate(es):
            if a_map(ei * ej) != images[i] * images[j]:
                raise NotMultiplicative(f"alpha(e{i} e{j}) != alpha(e{i}) alpha(e{j})", pair=[i, j])
    for i, ei in enumerate(es):
        if a_map(ei.star()) != images[i].star():
            raise NotStarPreserving(f"alpha(e{i}*) != alpha(e{i})*", index=i)
    one_ = unit(shape, m)
    if a_map(one_) != one_:
        raise NotUnital("alpha(1) != 1")
    if inverse(a_map.matrix, m) is None:
        raise NotInvertible("automorphism matrix is singular")
    return a_map


class Cocycle:
    __slots__ = ("table",)

    def __init__(self, table: Sequence[Sequence[AlgElement]]):
        self.table = tuple(tuple(row) for row in table)

    def __call__(self, x: int, y: int) -> AlgElement:
        return self.table[x][y]

    def values(self) -> list[AlgElement]:
        seen: dict = {}
        for row in self.table:
            for v in row:
                seen.setdefault(v, None)
        return list(seen)

    def is_scalar_valued(self) -> bool:
        return all(v == AlgElement.scalar(v.shape, v.conductor, v.mats[0][0][0]) for v in self.values())

    @classmethod
    def trivial(cls, group: FiniteGroup, shape: BlockShape, m: int) -> "Cocycle":
        e = unit(shape, m)
        return cls([[e] * group.order for _ in group.elements()])


@dataclass
class TwistedSystem:
    group: FiniteGroup
    shape: BlockShape
    alphas: list
    omega: Cocycle
    conductor: int
    name: str = ""
    unit_element: AlgElement = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.alphas) != self.group.order:
            raise ValueError("need one automorphism per group element")
        if len(self.omega.table) != self.group.order:
            raise ValueError("cocycle table has wrong size")
        self.unit_element = unit(self.shape, self.conductor)

    def alpha(self, x: int, a: AlgElement) -> AlgElement:
        return self.alphas[x](a)

    def cocycle(self, x: int, y: int) -> AlgElement:
        return self.omega.table[x][y]

    @property
    def dim(self) -> int:
        return self.group.order * self.shape.dim

    # identity keeps caches keyed on systems cheap
    __hash__ = object.__hash__

    def __eq__(self, other):
        return self is other


@dataclass
class AxiomReport:
    passed: bool
    checked: dict
    violations: list

    def first(self) -> Optional[AxiomViolation]:
        return self.violations[0] if self.violations else None

    def raise_for_failure(self) -> None:
        if self.violations:
            raise self.violations[0]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checked": dict(self.checked),
            "violations": [v.as_dict() for v in self.violations],
        }


def validate_axioms(system: TwistedSystem) -> AxiomReport:
    """Exhaustive exact check of unitarity of omega and axioms (i)-(iii).

    On a passing system every triple and pair is visited; otherwise each
    axiom stops at its first witness.
    """
    g = system.group
    e = g.identity
    one_ = system.unit_element
    n = g.order
    violations: list[AxiomViolation] = []
    checked = {"unitary": 0, "iii": 0, "i": 0, "ii": 0}

    bad = None
    for x in range(n):
        for y in range(n):
            checked["unitary"] += 1
            if bad is None and not is_unitary(system.cocycle(x, y)):
                bad = NonUnitaryCocycleEntry(f"omega({x},{y}) is not unitary", pair=[x, y])
    if bad:
        violations.append(bad)

    bad = None
    if system.alphas[e] != AutoMap.identity(system.shape, system.conductor):
        bad = AxiomIIIViolated("alpha_e is not the identity", element=e, which="alpha")
    for x in range(n):
        checked["iii"] += 2
        if bad is None and system.cocycle(x, e) != one_:
            bad = AxiomIIIViolated(f"omega({x},e) != 1", x=x)
        if bad is None and system.cocycle(e, x) != one_:
            bad = AxiomIIIViolated(f"omega(e,{x}) != 1", y=x)
    if bad:
        violations.append(bad)

    bad = None
    table = g.table
    for x in range(n):
        ax = system.alphas[x]
        for y in range(n):
            w_xy = system.cocycle(x, y)
            xy = table[x][y]
            for z in range(n):
                checked["i"] += 1
                lhs = ax(system.cocycle(y, z)) * system.cocycle(x, table[y][z])
                rhs = w_xy * system.cocycle(xy, z)
                if lhs != rhs:
                    bad = AxiomIViolated(
                        f"alpha_{x}(omega({y},{z})) omega({x},{table[y][z]}) != "
                        f"omega({x},{y}) omega({xy},{z})",
                        triple=[x, y, z],
                    )
                    break
            if bad:
                break
        if bad:
            break
    if bad:
        violations.append(bad)

    bad = None
    es = basis(system.shape, system.conductor)
    for x in range(n):
        for y in range(n):
            w = system.cocycle(x, y)
            axy = system.alphas[table[x][y]]
            for k, a in enumerate(es):
                checked["ii"] += 1
                if system.alpha(x, system.alpha(y, a)) * w != w * axy(a):
                    bad = AxiomIIViolated(
                        f"alpha_{x} alpha_{y}(e{k}) omega({x},{y}) != omega({x},{y}) alpha_{table[x][y]}(e{k})",
                        x=x, y=y, basis_index=k,
                    )
                    break
            if bad:
                break
        if bad:
            break
    if bad:
        violations.append(bad)

    return AxiomReport(not violations, checked, violations)


def validate_system(system: TwistedSystem) -> TwistedSystem:
    """Raise on the first automorphism or axiom failure, otherwise return the system."""
    for a_map in system.alphas:
        validate_automorphism(a_map, system.shape)
    validate_axioms(system).raise_for_failure()
    return system


def trivial_system(group: FiniteGroup, shape: BlockShape, m: int, name: str = "") -> TwistedSystem:
    ident = AutoMap.identity(shape, m)
    return TwistedSystem(group, shape, [ident] * group.order, Cocycle.trivial(group, shape, m), m, name)


def bicharacter_cocycle(group: FiniteGroup, n: int, m: int, shape: BlockShape) -> Cocycle:
    """omega((a,b),(c,d)) = zeta_n^(b c) on Z_n x Z_n, indexed a*n + b."""
    if m % n:
        raise ConductorIncompatible(f"{n} does not divide conductor {m}", n=n, conductor=m)
    if group.table != direct_product(cyclic(n), cyclic(n)).table:
        raise ValueError(f"bicharacter cocycle needs the group Z{n} x Z{n}")
    zeta = CycScalar.root(m, m // n)
    table = []
    for x in range(n * n):
        b = x % n
        row = []
        for y in range(n * n):
            c = y // n
            row.append(AlgElement.scalar(shape, m, zeta ** ((b * c) % n)))
        table.append(row)
    return Cocycle(table)


def exterior_equivalent(system: TwistedSystem, v: Sequence[AlgElement]) -> TwistedSystem:
    """Perturb by unitaries v_x (v_e = 1):
    alpha'_x = Ad(v_x) alpha_x and omega'(x,y) = v_x alpha_x(v_y) omega(x,y) v_{xy}*."""
    g = system.group
    alphas = [AutoMap.inner(v[x]).compose(system.alphas[x]) for x in g.elements()]
    table = [
        [v[x] * system.alpha(x, v[y]) * system.cocycle(x, y) * v[g.table[x][y]].star() for y in g.elements()]
        for x in g.elements()
    ]
    return TwistedSystem(g, system.shape, alphas, Cocycle(table), system.conductor, system.name + "'")
