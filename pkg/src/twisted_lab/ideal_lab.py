"""Exact ideal theory of B = l^1_{alpha,omega}(G, A) at finite scale.

Every subspace of a finite-dimensional B is closed and every ideal is
cofinite, so "closed cofinite two-sided ideal" ranges over all two-sided
ideals here.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .coeff_algebra import basis as alg_basis, matrix_unit
from .conv_algebra import ConvElement, conv_algebra, from_vector, multiplier_apply, to_vector
from .errors import NotAnIdeal, NotAssociative
from .linalg import Echelon, Subspace, Vector, null_space, solve, unit_vector, zero_vector
from .scalars import CycScalar, one, zero
from .twisted_action import TwistedSystem


@dataclass
class Verdict:
    ok: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.ok


def _vec(x, system: TwistedSystem) -> Vector:
    return to_vector(x) if isinstance(x, ConvElement) else list(x)


def span(vectors: Iterable, ambient_dim: int, conductor: int) -> Subspace:
    return Subspace.span(vectors, ambient_dim, conductor)


# ---------------------------------------------------------------- generation

def generate_two_sided_ideal(system: TwistedSystem, gens: Iterable) -> Subspace:
    """Least subspace containing gens and closed under multiplication by the
    basis on both sides (rank-growth fixpoint)."""
    alg = conv_algebra(system)
    ech = Echelon(alg.dim, alg.conductor)
    queue = []
    for g in gens:
        v = _vec(g, system)
        if ech.add(v):
            queue.append(v)
    while queue and len(ech) < alg.dim:
        v = queue.pop()
        for i in range(alg.dim):
            for w in (alg.left_basis(i, v), alg.right_basis(i, v)):
                if ech.add(w):
                    queue.append(w)
    return Subspace.from_echelon(ech)


def generate_left_ideal(system: TwistedSystem, gens: Iterable) -> Subspace:
    alg = conv_algebra(system)
    vecs = [_vec(g, system) for g in gens]
    return Subspace.span((alg.left_basis(i, v) for v in vecs for i in range(alg.dim)), alg.dim, alg.conductor)


def generate_right_ideal(system: TwistedSystem, gens: Iterable) -> Subspace:
    alg = conv_algebra(system)
    vecs = [_vec(g, system) for g in gens]
    return Subspace.span((alg.right_basis(i, v) for v in vecs for i in range(alg.dim)), alg.dim, alg.conductor)


# ---------------------------------------------------------------- membership tests

def is_left_ideal(system: TwistedSystem, s: Subspace) -> Verdict:
    alg = conv_algebra(system)
    for r, v in enumerate(s.basis):
        for i in range(alg.dim):
            if not s.contains(alg.left_basis(i, v)):
                return Verdict(False, {"side": "left", "basis_element": i, "row": r})
    return Verdict(True)


def is_right_ideal(system: TwistedSystem, s: Subspace) -> Verdict:
    alg = conv_algebra(system)
    for r, v in enumerate(s.basis):
        for i in range(alg.dim):
            if not s.contains(alg.right_basis(i, v)):
                return Verdict(False, {"side": "right", "basis_element": i, "row": r})
    return Verdict(True)


def is_two_sided(system: TwistedSystem, s: Subspace) -> Verdict:
    left = is_left_ideal(system, s)
    return left if not left else is_right_ideal(system, s)


def is_star_closed(system: TwistedSystem, s: Subspace) -> Verdict:
    alg = conv_algebra(system)
    for r, v in enumerate(s.basis):
        if not s.contains(alg.star(v)):
            return Verdict(False, {"row": r})
    return Verdict(True)


def is_translation_invariant(system: TwistedSystem, s: Subspace) -> Verdict:
    """m_{u,y}(S) in S for all y and u over a basis of A (enough by linearity in u).

    Evaluates the multiplier formula pointwise rather than through the
    structure constants used by the ideal tests.
    """
    us = alg_basis(system.shape, system.conductor)
    for r, v in enumerate(s.basis):
        phi = from_vector(system, v)
        for y in system.group.elements():
            for k, u in enumerate(us):
                if not s.contains(to_vector(multiplier_apply(u, y, phi))):
                    return Verdict(False, {"u": k, "y": y, "row": r})
    return Verdict(True)


# ---------------------------------------------------------------- algebras from structure constants

class RawAlgebra:
    """Finite-dimensional associative algebra given by structure constants
    structure[i][j][k] = k-th coordinate of e_i e_j."""

    def __init__(self, dim: int, conductor: int, structure: Sequence, check: bool = True):
        self.dim = dim
        self.conductor = conductor
        self.structure = [[list(structure[i][j]) for j in range(dim)] for i in range(dim)]
        if check:
            self.check_associative()

    def mul(self, u: Sequence[CycScalar], v: Sequence[CycScalar]) -> Vector:
        out = zero_vector(self.dim, self.conductor)
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.structure[i][j]):
                    if c:
                        out[k] = out[k] + ab * c
        return out

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i, self.conductor)

    def left_matrix(self, i: int) -> list:
        """Matrix of L_{e_i}: entry (k, j) = c_ij^k."""
        st = self.structure[i]
        return [[st[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def check_associative(self) -> None:
        es = [self.basis_vector(i) for i in range(self.dim)]
        prods = [[self.structure[i][j] for j in range(self.dim)] for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if self.mul(prods[i][j], es[k]) != self.mul(es[i], prods[j][k]):
                        raise NotAssociative(f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})", triple=[i, j, k])

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "conductor": self.conductor,
            "structure": [[[c.to_json() for c in self.structure[i][j]] for j in range(self.dim)] for i in range(self.dim)],
        }


class QuotientAlgebra(RawAlgebra):
    """B / I on the complement coordinates (non-pivot columns of I)."""

    def __init__(self, system: TwistedSystem, ideal: Subspace):
        alg = conv_algebra(system)
        self.system = system
        self.ideal = ideal
        pivots = set(ideal.pivots)
        self.section = [c for c in range(alg.dim) if c not in pivots]
        self._ech = ideal.echelon()
        q = len(self.section)
        structure = [
            [self.project(_dense(alg.structure[ci][cj], alg.dim, alg.conductor)) for cj in self.section]
            for ci in self.section
        ]
        super().__init__(q, system.conductor, structure)
        # column j = image of the j-th quotient basis vector under the induced star
        cols = [self.project(alg.star_images[c]) for c in self.section]
        self.star_matrix = [[cols[j][i] for j in range(q)] for i in range(q)]

    def project(self, v: Sequence[CycScalar]) -> Vector:
        r = self._ech.reduce(v)
        return [r[c] for c in self.section]

    def lift(self, coords: Sequence[CycScalar]) -> Vector:
        v = zero_vector(self.ideal.ambient_dim, self.conductor)
        for c, x in zip(self.section, coords):
            v[c] = x
        return v


def _dense(sparse, d: int, m: int) -> Vector:
    v = zero_vector(d, m)
    for k, c in sparse:
        v[k] = c
    return v


def algebra_of(system: TwistedSystem) -> QuotientAlgebra:
    return quotient(system, Subspace.zero_space(system.dim, system.conductor))


def quotient(system: TwistedSystem, ideal: Subspace) -> QuotientAlgebra:
    verdict = is_two_sided(system, ideal)
    if not verdict:
        raise NotAnIdeal("subspace is not a two-sided ideal", **verdict.witness)
    return QuotientAlgebra(system, ideal)


# ---------------------------------------------------------------- radical, center, products

def trace_form(q: RawAlgebra) -> list:
    """Gram matrix Tr(L_{e_i} L_{e_j})."""
    n = q.dim
    st = q.structure
    z = zero(q.conductor)
    gram = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = z
            for k in range(n):
                for l in range(n):
                    a = st[i][l][k]
                    if a:
                        b = st[j][k][l]
                        if b:
                            s = s + a * b
            gram[i][j] = gram[j][i] = s
    return gram


def radical(q: RawAlgebra) -> Subspace:
    """Jacobson radical as the null space of the trace form (characteristic 0)."""
    if q.dim == 0:
        return Subspace.zero_space(0, q.conductor)
    gram = trace_form(q)
    return Subspace.span(null_space(gram, q.dim, q.conductor), q.dim, q.conductor)


def is_semisimple(q: RawAlgebra) -> bool:
    return radical(q).dim == 0


def raw_quotient(q: RawAlgebra, ideal: Subspace) -> RawAlgebra:
    """q / ideal on the non-pivot coordinates; ideal must be two-sided."""
    ech = ideal.echelon()
    pivots = set(ideal.pivots)
    section = [c for c in range(q.dim) if c not in pivots]
    for c in range(q.dim):
        e = q.basis_vector(c)
        for r, v in enumerate(ideal.basis):
            if not (ech.contains(q.mul(e, v)) and ech.contains(q.mul(v, e))):
                raise NotAnIdeal("subspace is not a two-sided ideal", basis_element=c, row=r)

    def project(v):
        red = ech.reduce(v)
        return [red[c] for c in section]

    structure = [[project(q.structure[i][j]) for j in section] for i in section]
    return RawAlgebra(len(section), q.conductor, structure)


def center(q: RawAlgebra) -> Subspace:
    n = q.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([q.structure[i][j][k] - q.structure[j][i][k] for i in range(n)])
    if not rows:
        return Subspace.zero_space(0, q.conductor)
    return Subspace.span(null_space(rows, n, q.conductor), n, q.conductor)


def center_dim(q: RawAlgebra) -> int:
    return center(q).dim


def ideal_product(system: TwistedSystem, i: Subspace, j: Subspace) -> Subspace:
    """span{ab : a in I, b in J}, re-closed as a two-sided ideal when both inputs are ideals."""
    alg = conv_algebra(system)
    prods = Subspace.span((alg.mul(a, b) for a in i.basis for b in j.basis), alg.dim, alg.conductor)
    if is_two_sided(system, i) and is_two_sided(system, j):
        return generate_two_sided_ideal(system, prods.basis)
    return prods


# ---------------------------------------------------------------- random sampling

def _random_scalar(rng: random.Random, m: int) -> CycScalar:
    kind = rng.random()
    if kind < 0.5:
        return CycScalar.root(m, rng.randrange(m)) * rng.choice((1, -1))
    return CycScalar.from_rational(m, rng.choice((-2, -1, 1, 2, 3)))


def random_generator(system: TwistedSystem, rng: random.Random) -> ConvElement:
    """Seeded generator mixing sparse elements and products of binomials
    delta_e - lambda delta_x^u (the latter tend to be zero divisors, which is
    what produces proper ideals in a semisimple algebra)."""
    alg = conv_algebra(system)
    m = system.conductor
    g = system.group
    r = rng.random()
    if r < 0.03:
        return ConvElement.zero(system)
    if r < 0.35:
        v = zero_vector(alg.dim, m)
        for _ in range(rng.randint(1, 3)):
            v[rng.randrange(alg.dim)] = _random_scalar(rng, m)
        return from_vector(system, v)
    coeffs = [system.unit_element] + _diagonal_units(system)
    out = ConvElement.unit(system)
    for _ in range(rng.randint(1, 3)):
        x = rng.randrange(g.order)
        u = rng.choice(coeffs)
        lam = CycScalar.root(m, rng.randrange(m))
        factor = ConvElement.unit(system) - ConvElement.delta(system, x, u * lam)
        out = out * factor if rng.random() < 0.5 else factor * out
    return out


def _diagonal_units(system: TwistedSystem) -> list:
    shape = system.shape
    if shape.dim == 1:
        return []
    return [matrix_unit(shape, system.conductor, b, i, i) for b, n in enumerate(shape.blocks) for i in range(n)]


@dataclass
class IdealRecord:
    ideal: Subspace
    hits: int = 1
    star_closed: Optional[bool] = None
    radical_dim: Optional[int] = None
    idempotent: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "dim": self.ideal.dim,
            "codim": self.ideal.codim,
            "hits": self.hits,
            "star_closed": self.star_closed,
            "radical_dim": self.radical_dim,
            "idempotent": self.idempotent,
        }


@dataclass
class ScanReport:
    seed: int
    count: int
    ideals: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.star_closed and r.radical_dim == 0 and r.idempotent for r in self.ideals)

    def to_json(self) -> dict:
        return {"seed": self.seed, "count": self.count, "ideals": [r.to_json() for r in self.ideals]}


def analyse_ideal(system: TwistedSystem, ideal: Subspace, record: Optional[IdealRecord] = None) -> IdealRecord:
    record = record or IdealRecord(ideal, hits=0)
    record.star_closed = bool(is_star_closed(system, ideal))
    record.radical_dim = radical(quotient(system, ideal)).dim
    record.idempotent = ideal_product(system, ideal, ideal) == ideal
    return record


def scan_ideals(system: TwistedSystem, seed: int, count: int) -> list[IdealRecord]:
    """Distinct two-sided ideals generated by `count` seeded random generators,
    in order of first appearance."""
    rng = random.Random(seed)
    found: dict = {}
    for _ in range(count):
        ideal = generate_two_sided_ideal(system, [random_generator(system, rng)])
        rec = found.get(ideal)
        if rec is None:
            found[ideal] = IdealRecord(ideal)
        else:
            rec.hits += 1
    return list(found.values())


def random_ideal_scan(system: TwistedSystem, seed: int, count: int) -> ScanReport:
    records = scan_ideals(system, seed, count)
    for rec in records:
        analyse_ideal(system, rec.ideal, rec)
    records.sort(key=lambda r: (r.ideal.dim, r.ideal.key()))
    return ScanReport(seed, count, records)


def sample_subspaces(system: TwistedSystem, seed: int, count: int) -> list[Subspace]:
    """Mixed sample for the translation-invariance test: left, right and
    two-sided ideals plus plain random spans (mostly not ideals)."""
    rng = random.Random(seed)
    alg = conv_algebra(system)
    out: list[Subspace] = [Subspace.zero_space(alg.dim, alg.conductor), Subspace.full(alg.dim, alg.conductor)]
    kinds = ("left", "right", "two", "span")
    k = 0
    while len(out) < count:
        kind = kinds[k % len(kinds)]
        k += 1
        gens = [random_generator(system, rng) for _ in range(rng.randint(1, 2))]
        if kind == "left":
            out.append(generate_left_ideal(system, gens))
        elif kind == "right":
            out.append(generate_right_ideal(system, gens))
        elif kind == "two":
            out.append(generate_two_sided_ideal(system, gens))
        else:
            out.append(Subspace.span((to_vector(x) for x in gens), alg.dim, alg.conductor))
    return out


# ---------------------------------------------------------------- exhaustive enumeration (commutative)

def _poly_eval(alg_mul, coeffs: Sequence[CycScalar], x: Vector, e: Vector) -> Vector:
    # Horner with e as the unit of the ambient component
    acc = [c * coeffs[-1] for c in e]
    for c in reversed(coeffs[:-1]):
        acc = alg_mul(acc, x)
        acc = [a + c * b for a, b in zip(acc, e)]
    return acc


def _minimal_polynomial(alg_mul, x: Vector, e: Vector, m: int) -> list[CycScalar]:
    """Monic minimal polynomial of x in the unital algebra with unit e (low-first)."""
    powers = [e]
    while True:
        powers.append(alg_mul(powers[-1], x))
        coeffs = solve(powers[:-1], powers[-1], m)
        if coeffs is not None:
            return [-c for c in coeffs] + [one(m)]


def factor_over_cyclotomic(coeffs: Sequence[CycScalar], m: int) -> list[tuple[list[CycScalar], int]]:
    """Irreducible factorization over Q(zeta_m) (sympy); low-first coefficient lists."""
    import sympy as sp
    from fractions import Fraction

    from .scalars import cyclotomic_polynomial, euler_phi

    t = sp.Symbol("t")
    phi = euler_phi(m)
    if phi == 1:
        dom = sp.QQ
        poly = sp.Poly([sp.Rational(c.coeffs[0].numerator, c.coeffs[0].denominator) for c in reversed(coeffs)], t, domain=dom)
    else:
        dom = sp.QQ.algebraic_field(sp.exp(2 * sp.pi * sp.I / m))
        if [int(c) for c in reversed(dom.mod.to_list())] != list(cyclotomic_polynomial(m)):
            raise ArithmeticError("unexpected defining polynomial for the cyclotomic field")
        elems = [dom([sp.QQ(f.numerator, f.denominator) for f in reversed(c.coeffs)]) for c in reversed(coeffs)]
        poly = sp.Poly(elems, t, domain=dom)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        cs = []
        for a in reversed(f.rep.to_list()):
            if phi == 1:
                cs.append(CycScalar.from_rational(m, Fraction(int(a.numerator), int(a.denominator))))
            else:
                cs.append(CycScalar(m, [Fraction(int(q.numerator), int(q.denominator)) for q in reversed(a.to_list())]))
        out.append((cs, mult))
    return out


def primitive_components(system: TwistedSystem, seed: int = 0) -> list[Subspace]:
    """Minimal ideals of a commutative semisimple B, by splitting along
    factors of minimal polynomials."""
    alg = conv_algebra(system)
    if not alg.is_commutative():
        raise ValueError("exhaustive enumeration needs a commutative algebra")
    m, d = alg.conductor, alg.dim
    rng = random.Random(seed)
    queue = [Subspace.full(d, m)]
    done: list[Subspace] = []
    while queue:
        comp = queue.pop()
        rows = comp.basis
        unit_coeffs = solve(
            [[c for j in range(len(rows)) for c in alg.mul(r, rows[j])] for r in rows],
            [c for r in rows for c in r], m,
        )
        if unit_coeffs is None:
            raise ArithmeticError("component has no unit; algebra is not semisimple")
        e = zero_vector(d, m)
        for t, r in zip(unit_coeffs, rows):
            e = [a + t * b for a, b in zip(e, r)]
        candidates = iter(rows)
        for attempt in range(64):
            x = next(candidates, None)
            if x is None:
                x = zero_vector(d, m)
                for r in rows:
                    x = [a + CycScalar.from_rational(m, rng.randint(-5, 5)) * b for a, b in zip(x, r)]
            p = _minimal_polynomial(alg.mul, x, e, m)
            factors = factor_over_cyclotomic(p, m)
            if any(mult > 1 for _, mult in factors):
                raise ArithmeticError("minimal polynomial is not squarefree; algebra is not semisimple")
            if len(factors) > 1:
                for f, _ in factors:
                    y = _poly_eval(alg.mul, f, x, e)
                    cols = [alg.mul(y, r) for r in rows]
                    ker = null_space([[cols[k][i] for k in range(len(rows))] for i in range(d)], len(rows), m)
                    vecs = []
                    for t in ker:
                        v = zero_vector(d, m)
                        for tk, r in zip(t, rows):
                            if tk:
                                v = [a + tk * b for a, b in zip(v, r)]
                        vecs.append(v)
                    queue.append(Subspace.span(vecs, d, m))
                break
            if len(p) - 1 == len(rows):
                done.append(comp)
                break
        else:
            raise ArithmeticError("could not decide whether a component is a field")
    done.sort(key=lambda s: s.key())
    return done


def enumerate_ideals(system: TwistedSystem) -> list[Subspace]:
    """All two-sided ideals of a commutative semisimple B: sums of minimal ideals."""
    comps = primitive_components(system)
    alg = conv_algebra(system)
    out = []
    for mask in itertools.product((0, 1), repeat=len(comps)):
        vecs = [v for bit, c in zip(mask, comps) if bit for v in c.basis]
        out.append(Subspace.span(vecs, alg.dim, alg.conductor))
    out.sort(key=lambda s: (s.dim, s.key()))
    return out
