import itertools
import random

import pytest

from twisted_lab.coeff_algebra import AlgElement, BlockShape, basis, unit
from twisted_lab.errors import (
    AxiomIIIViolated,
    AxiomIIViolated,
    AxiomIViolated,
    ConductorIncompatible,
    NonUnitaryCocycleEntry,
    NotInvertible,
    NotMultiplicative,
    NotStarPreserving,
    NotUnital,
)
from twisted_lab.groups import cyclic, dihedral, direct_product
from twisted_lab.scalars import CycScalar
from twisted_lab.twisted_action import (
    AutoMap,
    Cocycle,
    TwistedSystem,
    bicharacter_cocycle,
    exterior_equivalent,
    trivial_system,
    validate_automorphism,
    validate_axioms,
    validate_system,
)

from conftest import NEGATIVE, POSITIVE, m2_twisted, shipped

M2 = BlockShape.of([2])
CC = BlockShape.of([1, 1])
C = BlockShape.of([1])


def pauli(m=4):
    x = AlgElement.from_blocks(M2, m, [[[0, 1], [1, 0]]])
    z = AlgElement.from_blocks(M2, m, [[[1, 0], [0, -1]]])
    return x, z


def axiom_i_holds(system, x, y, z):
    t = system.group.table
    lhs = system.alpha(x, system.cocycle(y, z)) * system.cocycle(x, t[y][z])
    return lhs == system.cocycle(x, y) * system.cocycle(t[x][y], z)


def axiom_ii_holds(system, x, y, a):
    t = system.group.table
    w = system.cocycle(x, y)
    return system.alpha(x, system.alpha(y, a)) * w == w * system.alpha(t[x][y], a)


class TestAutomorphisms:
    def test_identity_on_m2(self):
        validate_automorphism(AutoMap.identity(M2, 1))

    def test_swap_on_c_plus_c(self):
        validate_automorphism(AutoMap.block_permutation(CC, 1, [1, 0]))

    def test_transpose_is_anti_multiplicative(self):
        transpose = AutoMap.from_function(M2, 1, lambda a: AlgElement(M2, 1, [list(zip(*a.mats[0]))]))
        with pytest.raises(NotMultiplicative) as info:
            validate_automorphism(transpose)
        i, j = info.value.witness["pair"]
        es = basis(M2, 1)
        assert transpose(es[i] * es[j]) != transpose(es[i]) * transpose(es[j])
        assert transpose(es[i] * es[j]) == transpose(es[j]) * transpose(es[i])

    def test_inner_by_unitary_is_valid(self):
        x, z = pauli()
        validate_automorphism(AutoMap.inner(x * z))

    def test_conjugation_by_non_unitary_breaks_star(self):
        s = AlgElement.from_blocks(M2, 1, [[[1, 0], [0, 2]]])
        s_inv = AlgElement.from_blocks(M2, 1, [[[1, 0], [0, CycScalar.from_rational(1, 1) / 2]]])
        similarity = AutoMap.from_function(M2, 1, lambda a: s * a * s_inv)
        with pytest.raises(NotStarPreserving):
            validate_automorphism(similarity)

    def test_projection_is_not_unital(self):
        proj = AutoMap.from_function(CC, 1, lambda a: AlgElement(CC, 1, [a.mats[0], [[a.mats[1][0][0] * 0]]]))
        with pytest.raises(NotUnital):
            validate_automorphism(proj)

    def test_diagonal_embedding_is_not_invertible(self):
        diag = AutoMap.from_function(CC, 1, lambda a: AlgElement(CC, 1, [a.mats[0], a.mats[0]]))
        with pytest.raises(NotInvertible):
            validate_automorphism(diag)


class TestAxioms:
    @pytest.mark.parametrize("group", [cyclic(1), cyclic(5), dihedral(3), direct_product(cyclic(2), cyclic(3))])
    @pytest.mark.parametrize("blocks", [[1], [2], [1, 2]])
    def test_trivial_systems_pass(self, group, blocks):
        report = validate_axioms(trivial_system(group, BlockShape.of(blocks), 1))
        assert report.passed
        n = group.order
        assert report.checked["i"] == n ** 3

    def test_pauli_passes_all_64_triples(self):
        report = validate_axioms(shipped("pauli_z2z2"))
        assert report.passed and report.checked["i"] == 64

    def test_pauli_table_matches_sign_formula(self):
        s = shipped("pauli_z2z2")
        for x, y in itertools.product(range(4), repeat=2):
            b, c = x % 2, y // 2
            assert s.cocycle(x, y) == unit(C, 2) * (-1) ** (b * c)

    def test_broken_pauli_witness_is_genuine_and_first(self):
        s = shipped("pauli_broken")
        report = validate_axioms(s)
        assert not report.passed
        err = report.first()
        assert isinstance(err, AxiomIViolated)
        triple = err.witness["triple"]
        assert not axiom_i_holds(s, *triple)
        first = next(t for t in itertools.product(range(4), repeat=3) if not axiom_i_holds(s, *t))
        assert list(first) == triple

    def test_broken_swap_violates_axiom_ii(self):
        s = shipped("swap_z3_broken")
        report = validate_axioms(s)
        err = report.first()
        assert isinstance(err, AxiomIIViolated)
        w = err.witness
        a = basis(s.shape, s.conductor)[w["basis_index"]]
        assert not axiom_ii_holds(s, w["x"], w["y"], a)
        with pytest.raises(AxiomIIViolated):
            report.raise_for_failure()

    @pytest.mark.parametrize("name", POSITIVE)
    def test_shipped_instances_validate(self, name):
        validate_system(shipped(name))

    @pytest.mark.parametrize("name", NEGATIVE)
    def test_negative_fixtures_fail(self, name):
        assert not validate_axioms(shipped(name)).passed

    def test_axiom_ii_with_unit_is_tautological(self):
        for name in POSITIVE:
            s = shipped(name)
            e = s.unit_element
            assert all(axiom_ii_holds(s, x, y, e) for x in s.group.elements() for y in s.group.elements())

    def test_normalization_holds_on_validated_systems(self):
        for s in [shipped(n) for n in POSITIVE] + [m2_twisted()]:
            g = s.group
            assert s.alphas[g.identity] == AutoMap.identity(s.shape, s.conductor)
            assert all(s.cocycle(x, g.identity) == s.unit_element == s.cocycle(g.identity, x) for x in g.elements())

    def test_non_normalized_cocycle(self):
        g = cyclic(2)
        e = unit(C, 1)
        s = TwistedSystem(g, C, [AutoMap.identity(C, 1)] * 2, Cocycle([[e, e], [-e, e]]), 1)
        err = validate_axioms(s).violations
        assert any(isinstance(v, AxiomIIIViolated) for v in err)

    def test_alpha_of_identity_must_be_trivial(self):
        g = cyclic(2)
        swap = AutoMap.block_permutation(CC, 1, [1, 0])
        s = TwistedSystem(g, CC, [swap, swap], Cocycle.trivial(g, CC, 1), 1)
        assert isinstance(validate_axioms(s).violations[0], AxiomIIIViolated)

    def test_non_unitary_cocycle_entry(self):
        g = cyclic(2)
        e = unit(C, 1)
        s = TwistedSystem(g, C, [AutoMap.identity(C, 1)] * 2, Cocycle([[e, e], [e, e * 2]]), 1)
        first = validate_axioms(s).first()
        assert isinstance(first, NonUnitaryCocycleEntry) and first.witness["pair"] == [1, 1]


class TestBicharacter:
    def test_n2_is_the_pauli_cocycle(self):
        g = direct_product(cyclic(2), cyclic(2))
        assert bicharacter_cocycle(g, 2, 2, C).table == shipped("pauli_z2z2").omega.table

    def test_n1_is_trivial(self):
        g = direct_product(cyclic(1), cyclic(1))
        assert bicharacter_cocycle(g, 1, 5, C).table == Cocycle.trivial(g, C, 5).table

    def test_n3_passes_729_triples(self):
        report = validate_axioms(shipped("nc_torus_3"))
        assert report.passed and report.checked["i"] == 729

    def test_n3_values_are_cube_roots(self):
        s = shipped("nc_torus_3")
        z = CycScalar.root(3)
        for x, y in itertools.product(range(9), repeat=2):
            assert s.cocycle(x, y) == unit(C, 3) * z ** ((x % 3) * (y // 3))

    def test_incompatible_conductor(self):
        g = direct_product(cyclic(3), cyclic(3))
        with pytest.raises(ConductorIncompatible):
            bicharacter_cocycle(g, 3, 4, C)

    def test_wrong_group(self):
        with pytest.raises(ValueError):
            bicharacter_cocycle(cyclic(4), 2, 2, C)


class TestExteriorEquivalence:
    def test_pauli_perturbed_by_roots_of_unity(self):
        base = shipped("pauli_z2z2")
        rng = random.Random(1)
        lifted = TwistedSystem(base.group, C, [AutoMap.identity(C, 4)] * 4,
                               bicharacter_cocycle(base.group, 2, 4, C), 4)
        for _ in range(10):
            v = [unit(C, 4)] + [unit(C, 4) * CycScalar.root(4, rng.randrange(4)) for _ in range(3)]
            moved = exterior_equivalent(lifted, v)
            assert validate_axioms(moved).passed

    def test_m2_system_perturbed_by_pauli_matrices(self):
        x, z = pauli()
        g = direct_product(cyclic(2), cyclic(2))
        base = trivial_system(g, M2, 4)
        words = [unit(M2, 4), z, x, x * z]
        moved = exterior_equivalent(base, words)
        validate_system(moved)
        assert not moved.alphas[1] == moved.alphas[0]
        twice = exterior_equivalent(moved, [unit(M2, 4), x, z * CycScalar.root(4), z * x])
        validate_system(twice)

    def test_non_scalar_cocycle_instance(self):
        s = m2_twisted()
        validate_system(s)
        assert not s.omega.is_scalar_valued()
        assert s.cocycle(1, 1) == AlgElement.from_blocks(M2, 4, [[[1, 0], [0, -1]]])
