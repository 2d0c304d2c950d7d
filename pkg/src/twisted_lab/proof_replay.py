"""Replay of the semisimplicity argument on a quotient X = B / I.

Builds the left representation pi of B on X, the finite group K generated
by the induced multipliers pi(m_{w,y}), averages the standard Hermitian
form over K (normalized counting measure is the Haar measure of a finite
group), and checks that pi is a *-representation for the averaged form and
that Ker pi = I.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .coeff_algebra import AlgElement, is_unitary, matrix_unit
from .conv_algebra import ConvElement, adjoint_label, conv_algebra, to_vector
from .errors import CapExceeded, NotInvariant, NotUnitary
from .ideal_lab import QuotientAlgebra, quotient
from .linalg import (
    Matrix,
    Subspace,
    conj_transpose,
    identity_matrix,
    mat_add,
    mat_key,
    mat_mul,
    mat_scale,
    null_space,
    zero_matrix,
)
from .scalars import CycScalar
from .twisted_action import TwistedSystem

DEFAULT_CAP = 100_000
DEFAULT_WGEN = "cocycle,unit"
POSITIVITY_TOL = 1e-9


@dataclass
class Representation:
    system: TwistedSystem
    ideal: Subspace
    quotient: QuotientAlgebra
    pi_matrices: list  # one q x q matrix per basis element of B

    @property
    def q(self) -> int:
        return self.quotient.dim

    def pi(self, v: Sequence[CycScalar]) -> Matrix:
        m = self.system.conductor
        out = zero_matrix(self.q, self.q, m)
        for c, mat in zip(v, self.pi_matrices):
            if c:
                out = mat_add(out, mat_scale(c, mat))
        return out

    def pi_element(self, phi: ConvElement) -> Matrix:
        return self.pi(to_vector(phi))


def build_pi(system: TwistedSystem, ideal: Subspace) -> Representation:
    """pi(b)(psi + I) = b * psi + I for every basis element b of B."""
    quo = quotient(system, ideal)
    alg = conv_algebra(system)
    for k in range(alg.dim):
        for r, v in enumerate(ideal.basis):
            if not ideal.contains(alg.left_basis(k, v)):
                raise NotInvariant("left multiplication does not preserve I", basis_element=k, row=r)
    q = quo.dim
    mats = []
    lifts = [quo.lift([CycScalar.from_rational(alg.conductor, int(i == j)) for i in range(q)]) for j in range(q)]
    for k in range(alg.dim):
        cols = [quo.project(alg.left_basis(k, lifts[j])) for j in range(q)]
        mats.append([[cols[j][i] for j in range(q)] for i in range(q)])
    return Representation(system, ideal, quo, mats)


def check_multiplicative(rep: Representation) -> Optional[dict]:
    """pi(b_i) pi(b_j) = pi(b_i b_j) on all basis pairs; returns a witness or None."""
    alg = conv_algebra(rep.system)
    m = alg.conductor
    for i in range(alg.dim):
        for j in range(alg.dim):
            prod = [CycScalar.from_rational(m, 0)] * alg.dim
            for k, c in alg.structure[i][j]:
                prod[k] = c
            if mat_mul(rep.pi_matrices[i], rep.pi_matrices[j], m) != rep.pi(prod):
                return {"pair": [i, j]}
    return None


def wgen_unitaries(system: TwistedSystem, spec: str = DEFAULT_WGEN) -> list[AlgElement]:
    """Generating unitaries from a comma-separated spec.

    cocycle: every value of omega; unit: 1; signs: 1 - 2 E_pp for each
    diagonal matrix unit; perms: adjacent transpositions inside each block.
    """
    m = system.conductor
    shape = system.shape
    one_ = system.unit_element
    out: dict = {}
    for token in (t.strip() for t in spec.split(",") if t.strip()):
        if token == "cocycle":
            for v in system.omega.values():
                out.setdefault(v, None)
        elif token == "unit":
            out.setdefault(one_, None)
        elif token == "signs":
            for b, n in enumerate(shape.blocks):
                for i in range(n):
                    out.setdefault(one_ - matrix_unit(shape, m, b, i, i) * 2, None)
        elif token == "perms":
            for b, n in enumerate(shape.blocks):
                for i in range(n - 1):
                    u = one_ - matrix_unit(shape, m, b, i, i) - matrix_unit(shape, m, b, i + 1, i + 1)
                    u = u + matrix_unit(shape, m, b, i, i + 1) + matrix_unit(shape, m, b, i + 1, i)
                    out.setdefault(u, None)
        else:
            raise ValueError(f"unknown W_gen token {token!r}")
    return list(out)


@dataclass
class MultiplierGroup:
    operators: list
    generator_tags: list

    @property
    def order(self) -> int:
        return len(self.operators)


def multiplier_group(
    rep: Representation,
    w_gen: Optional[Iterable[AlgElement]] = None,
    cap: int = DEFAULT_CAP,
) -> MultiplierGroup:
    """BFS closure of {pi(m_{w,y})} and their inverses pi(m_{w,y}^*)."""
    system = rep.system
    m = system.conductor
    ws = list(w_gen) if w_gen is not None else wgen_unitaries(system)
    if system.unit_element not in ws:
        ws.append(system.unit_element)
    gens: dict = {}
    tags = []
    for w in ws:
        if not is_unitary(w):
            raise NotUnitary("W_gen entry is not unitary", element=repr(w))
        for y in system.group.elements():
            for u, z, kind in ((w, y, "m"), (*adjoint_label(system, w, y), "m*")):
                mat = rep.pi_element(ConvElement.delta(system, z, u))
                key = mat_key(mat)
                if key not in gens:
                    gens[key] = mat
                    tags.append({"w": ws.index(w), "y": y, "kind": kind})
    ident = identity_matrix(rep.q, m)
    seen = {mat_key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens.values():
                p = mat_mul(g, a, m)
                key = mat_key(p)
                if key not in seen:
                    seen[key] = p
                    nxt.append(p)
                    if len(seen) > cap:
                        raise CapExceeded(
                            f"multiplier group exceeds cap {cap}; shrink W_gen", cap=cap
                        )
        frontier = nxt
    ops = [seen[k] for k in sorted(seen)]
    return MultiplierGroup(ops, tags)


@dataclass
class AveragedForm:
    gram: Matrix
    conductor: int

    def is_hermitian(self) -> bool:
        return conj_transpose(self.gram, self.conductor) == self.gram

    def invariance_witness(self, group: MultiplierGroup) -> Optional[int]:
        for idx, t in enumerate(group.operators):
            lhs = mat_mul(mat_mul(conj_transpose(t, self.conductor), self.gram, self.conductor), t, self.conductor)
            if lhs != self.gram:
                return idx
        return None

    def min_eigenvalue(self) -> float:
        if not self.gram:
            return float("inf")
        arr = np.array([[x.embed() for x in row] for row in self.gram], dtype=complex)
        return float(np.linalg.eigvalsh(arr).min())


def average_form(group: MultiplierGroup, q: int, conductor: int) -> AveragedForm:
    """gram = (1/|K|) sum_T T^H T, starting from the standard Hermitian form."""
    acc = zero_matrix(q, q, conductor)
    for t in group.operators:
        acc = mat_add(acc, mat_mul(conj_transpose(t, conductor), t, conductor))
    scale = CycScalar.from_rational(conductor, Fraction(1, group.order))
    return AveragedForm(mat_scale(scale, acc), conductor)


def verify_star_property(rep: Representation, form: AveragedForm) -> Optional[dict]:
    """gram pi(b) = pi(b*)^H gram for every basis element b; returns a witness or None."""
    alg = conv_algebra(rep.system)
    m = alg.conductor
    g = form.gram
    for k in range(alg.dim):
        lhs = mat_mul(g, rep.pi_matrices[k], m)
        rhs = mat_mul(conj_transpose(rep.pi(alg.star_images[k]), m), g, m)
        if lhs != rhs:
            return {"basis_element": k}
    return None


def kernel_of_pi(rep: Representation) -> Subspace:
    alg = conv_algebra(rep.system)
    q = rep.q
    rows = [[mat[i][j] for mat in rep.pi_matrices] for i in range(q) for j in range(q)]
    if not rows:
        return Subspace.full(alg.dim, alg.conductor)
    return Subspace.span(null_space(rows, alg.dim, alg.conductor), alg.dim, alg.conductor)


@dataclass
class ReplayReport:
    ideal_dim: int
    codim: int
    K_order: int
    gram_hermitian: bool
    gram_K_invariant: bool
    gram_positive_definite: bool
    min_eigenvalue: Optional[float]
    pi_multiplicative: bool
    star_property: bool
    kernel_equals_ideal: bool
    witness: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all((
            self.gram_hermitian, self.gram_K_invariant, self.gram_positive_definite,
            self.pi_multiplicative, self.star_property, self.kernel_equals_ideal,
        ))

    def to_json(self) -> dict:
        return {
            "ideal_dim": self.ideal_dim,
            "codim": self.codim,
            "K_order": self.K_order,
            "gram_hermitian": self.gram_hermitian,
            "gram_K_invariant": self.gram_K_invariant,
            "gram_positive_definite": self.gram_positive_definite,
            "pi_multiplicative": self.pi_multiplicative,
            "star_property": self.star_property,
            "kernel_equals_ideal": self.kernel_equals_ideal,
            "witness": self.witness,
        }


def replay(
    system: TwistedSystem,
    ideal: Subspace,
    w_gen: Optional[Iterable[AlgElement]] = None,
    cap: int = DEFAULT_CAP,
) -> ReplayReport:
    rep = build_pi(system, ideal)
    group = multiplier_group(rep, w_gen, cap)
    form = average_form(group, rep.q, system.conductor)
    witness: dict = {}
    hermitian = form.is_hermitian()
    bad = form.invariance_witness(group)
    if bad is not None:
        witness["not_invariant_under"] = bad
    lam = form.min_eigenvalue()
    mult = check_multiplicative(rep)
    if mult:
        witness["pi_not_multiplicative"] = mult
    star = verify_star_property(rep, form)
    if star:
        witness["star_property"] = star
    kernel = kernel_of_pi(rep)
    if kernel != ideal:
        witness["kernel_dim"] = kernel.dim
    return ReplayReport(
        ideal_dim=ideal.dim,
        codim=ideal.codim,
        K_order=group.order,
        gram_hermitian=hermitian,
        gram_K_invariant=bad is None,
        gram_positive_definite=lam >= POSITIVITY_TOL,
        min_eigenvalue=None if rep.q == 0 else lam,
        pi_multiplicative=mult is None,
        star_property=star is None,
        kernel_equals_ideal=kernel == ideal,
        witness=witness,
    )
