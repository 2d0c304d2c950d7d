import itertools
import json
import random

import pytest
import sympy

from twisted_lab.conv_algebra import ConvElement, conv_algebra, to_vector
from twisted_lab.errors import DimensionMismatch, NotAnIdeal, NotAssociative
from twisted_lab.groups import cyclic
from twisted_lab.coeff_algebra import BlockShape
from twisted_lab.ideal_lab import (
    RawAlgebra,
    algebra_of,
    center_dim,
    enumerate_ideals,
    generate_left_ideal,
    generate_two_sided_ideal,
    ideal_product,
    is_left_ideal,
    is_right_ideal,
    is_star_closed,
    is_translation_invariant,
    is_two_sided,
    quotient,
    radical,
    random_ideal_scan,
    random_generator,
    raw_quotient,
    sample_subspaces,
    span,
)
from twisted_lab.instances import load_raw_algebra, resolve
from twisted_lab.linalg import Subspace
from twisted_lab.scalars import CycScalar
from twisted_lab.twisted_action import trivial_system

from conftest import SEED, m2_twisted, random_conv, shipped, systems_under_test
from radical_oracle import nilpotent_radical

RAW = ["upper_triangular_2x2", "dual_numbers", "m2", "q2", "truncated_x3"]


def q(m, *coeffs):
    return CycScalar(m, coeffs)


def z2():
    return trivial_system(cyclic(2), BlockShape.of([1]), 1, "z2")


def delta_vec(system, x):
    return to_vector(ConvElement.delta(system, x))


class TestSpan:
    def test_full_space(self):
        s = span([[q(1, 1), q(1, 0)], [q(1, 1), q(1, 1)]], 2, 1)
        assert s.dim == 2 and s == Subspace.full(2, 1)

    def test_multiple_collapses(self):
        v = [q(1, 3), q(1, -1), q(1, 2)]
        assert span([v, [c * 2 for c in v]], 3, 1).dim == 1

    def test_rank_over_gaussian_rationals(self):
        i = CycScalar.root(4)
        one = q(4, 1)
        assert span([[one, i], [i, -one]], 2, 4).dim == 1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            span([[q(1, 1)] * 3], 2, 1)


class TestGeneration:
    def test_unit_generates_everything(self, system):
        ideal = generate_two_sided_ideal(system, [ConvElement.unit(system)])
        assert ideal.dim == system.dim

    def test_z2_sum_generates_a_line(self):
        s = z2()
        ideal = generate_two_sided_ideal(s, [ConvElement.delta(s, 0) + ConvElement.delta(s, 1)])
        assert ideal.dim == 1
        assert is_two_sided(s, ideal)

    def test_pauli_is_simple(self, rng):
        s = shipped("pauli_z2z2")
        for _ in range(30):
            phi = random_conv(rng, s)
            if phi.is_zero():
                continue
            assert generate_two_sided_ideal(s, [phi]).dim == 4

    def test_generated_ideals_are_two_sided(self, system, rng):
        for _ in range(10):
            ideal = generate_two_sided_ideal(system, [random_generator(system, rng)])
            assert is_two_sided(system, ideal)
            assert is_left_ideal(system, ideal) and is_right_ideal(system, ideal)

    def test_single_delta_is_not_an_ideal(self):
        s = z2()
        line = span([delta_vec(s, 0)], 2, 1)
        verdict = is_left_ideal(s, line)
        assert not verdict
        # the witness product really leaves the subspace
        alg = conv_algebra(s)
        w = verdict.witness
        assert not line.contains(alg.left_basis(w["basis_element"], line.basis[w["row"]]))
        assert not is_two_sided(s, line)


class TestTranslationInvariance:
    def test_single_delta_is_not_invariant(self):
        s = z2()
        verdict = is_translation_invariant(s, span([delta_vec(s, 0)], 2, 1))
        assert not verdict and verdict.witness["y"] == 1

    def test_full_space_is_invariant(self, system):
        assert is_translation_invariant(system, Subspace.full(system.dim, system.conductor))

    def test_left_ideals_are_the_invariant_subspaces(self, system):
        subspaces = sample_subspaces(system, SEED, 24)
        kinds = set()
        for s in subspaces:
            left = bool(is_left_ideal(system, s))
            kinds.add(left)
            assert left == bool(is_translation_invariant(system, s))
        assert kinds == {True, False}


class TestQuotient:
    def test_zero_ideal_gives_structure_of_b(self, system):
        alg = conv_algebra(system)
        qa = algebra_of(system)
        assert qa.dim == alg.dim
        for i in range(alg.dim):
            for j in range(alg.dim):
                dense = [CycScalar.from_rational(system.conductor, 0)] * alg.dim
                for k, c in alg.structure[i][j]:
                    dense[k] = c
                assert qa.structure[i][j] == dense

    def test_z2_quotient_is_one_dimensional(self):
        s = z2()
        ideal = span([[q(1, 1), q(1, 1)]], 2, 1)
        qa = quotient(s, ideal)
        # coordinate is delta_1 + I and delta_1 delta_1 = delta_0 = -delta_1 mod I,
        # so B/I is Q with unit -(delta_1 + I)
        assert qa.section == [1]
        assert qa.dim == 1 and qa.structure == [[[q(1, -1)]]]
        minus_one = [q(1, -1)]
        assert qa.mul(minus_one, [q(1, 5)]) == [q(1, 5)]

    def test_full_ideal_gives_zero_algebra(self, system):
        assert quotient(system, Subspace.full(system.dim, system.conductor)).dim == 0

    def test_not_an_ideal(self):
        s = z2()
        with pytest.raises(NotAnIdeal):
            quotient(s, span([delta_vec(s, 0)], 2, 1))

    def test_star_matrix_is_an_involution(self, system, rng):
        m = system.conductor
        for rec in random_ideal_scan(system, SEED, 20).ideals:
            qa = quotient(system, rec.ideal)
            for k in range(qa.dim):
                col = [qa.star_matrix[i][k] for i in range(qa.dim)]
                back = [sum((qa.star_matrix[i][j] * col[j].conj() for j in range(qa.dim)), CycScalar.from_rational(m, 0))
                        for i in range(qa.dim)]
                assert back == [CycScalar.from_rational(m, int(i == k)) for i in range(qa.dim)]


class TestRadical:
    @pytest.mark.parametrize("name", RAW)
    def test_matches_nilpotent_oracle(self, name):
        data = json.loads(resolve(name, "raw").read_text())
        expected = nilpotent_radical(data["structure"])
        got = radical(load_raw_algebra(name))
        as_rationals = [[sympy.Rational(c.coeffs[0].numerator, c.coeffs[0].denominator) for c in v] for v in got.basis]
        assert as_rationals == expected

    def test_frozen_radical_dimensions(self):
        dims = {name: radical(load_raw_algebra(name)).dim for name in RAW}
        assert dims == {"upper_triangular_2x2": 1, "dual_numbers": 1, "m2": 0, "q2": 0, "truncated_x3": 2}

    @pytest.mark.parametrize("name", RAW)
    def test_quotient_by_radical_is_semisimple(self, name):
        qa = load_raw_algebra(name)
        assert radical(raw_quotient(qa, radical(qa))).dim == 0

    def test_pauli_algebra_is_semisimple(self):
        assert radical(algebra_of(shipped("pauli_z2z2"))).dim == 0

    def test_non_associative_structure(self):
        z, o = q(1, 0), q(1, 1)
        # e0 e0 = e1, e1 e0 = e0, everything else 0
        structure = [[[z, o], [z, z]], [[o, z], [z, z]]]
        with pytest.raises(NotAssociative) as info:
            RawAlgebra(2, 1, structure)
        assert info.value.witness["triple"] == [0, 0, 0]


def conjugacy_class_count(group):
    seen, classes = set(), 0
    for x in group.elements():
        if x in seen:
            continue
        classes += 1
        seen |= {group.mul(group.mul(g, x), group.inv(g)) for g in group.elements()}
    return classes


class TestCenter:
    def test_m2_raw(self):
        assert center_dim(load_raw_algebra("m2")) == 1

    @pytest.mark.parametrize("name", ["group_z4_trivial", "dihedral3_trivial"])
    def test_group_algebra_center_counts_classes(self, name):
        s = shipped(name)
        assert center_dim(algebra_of(s)) == conjugacy_class_count(s.group)

    @pytest.mark.parametrize("name", ["pauli_z2z2", "nc_torus_3", "swap_z2"])
    def test_full_matrix_algebras_have_scalar_center(self, name):
        assert center_dim(algebra_of(shipped(name))) == 1

    def test_m2_twisted_center(self):
        # exterior equivalent to M2 tensor Q(i)[Z2], i.e. M2 + M2
        assert center_dim(algebra_of(m2_twisted())) == 2


class TestIdealStructure:
    def test_scanned_ideals_are_star_ideals_with_semisimple_quotient(self, system):
        report = random_ideal_scan(system, SEED, 60)
        assert report.passed
        for rec in report.ideals:
            assert rec.star_closed and rec.radical_dim == 0 and rec.idempotent

    def test_scan_is_deterministic(self, system):
        a = random_ideal_scan(system, 3, 30).to_json()
        b = random_ideal_scan(system, 3, 30).to_json()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
        assert set(a["ideals"][0]) >= {"dim", "codim", "star_closed", "radical_dim", "idempotent"}

    def test_product_of_full_algebra(self, system):
        full = Subspace.full(system.dim, system.conductor)
        assert ideal_product(system, full, full) == full

    def test_left_ideals_need_not_be_star_closed(self):
        # one-sided ideals of M2 are never *-closed
        s = shipped("pauli_z2z2")
        rng = random.Random(2)
        hits = 0
        for _ in range(20):
            left = generate_left_ideal(s, [random_generator(s, rng)])
            if 0 < left.dim < 4:
                hits += 1
                assert not is_two_sided(s, left)
        assert hits > 0


def character_ideals_z4():
    """All 16 ideals of Q(i)[Z4] as spans of subsets of the character idempotents."""
    s = shipped("group_z4_trivial")
    i = CycScalar.root(4)
    idempotents = []
    for k in range(4):
        idempotents.append([(i ** (-k * x)) * CycScalar.from_rational(4, 1) / 4 for x in range(4)])
    out = set()
    for mask in itertools.product((0, 1), repeat=4):
        out.add(span([e for bit, e in zip(mask, idempotents) if bit], 4, 4))
    return s, out


class TestEnumeration:
    def test_z4_has_sixteen_character_ideals(self):
        s, expected = character_ideals_z4()
        got = enumerate_ideals(s)
        assert len(got) == 16 and set(got) == expected

    def test_z4_scan_finds_all_sixteen(self):
        s, expected = character_ideals_z4()
        found = {rec.ideal for rec in random_ideal_scan(s, SEED, 200).ideals}
        assert found == expected

    def test_z3_over_rationals_has_two_components(self):
        s = trivial_system(cyclic(3), BlockShape.of([1]), 1)
        got = enumerate_ideals(s)
        o = q(1, 1)
        trivial_char = span([[o, o, o]], 3, 1)
        augmentation = span([[o, -o, q(1, 0)], [q(1, 0), o, -o]], 3, 1)
        assert set(got) == {Subspace.zero_space(3, 1), trivial_char, augmentation, Subspace.full(3, 1)}

    def test_enumerated_ideals_are_star_closed_with_semisimple_quotient(self):
        s = shipped("group_z4_trivial")
        for ideal in enumerate_ideals(s):
            assert is_star_closed(s, ideal)
            assert radical(quotient(s, ideal)).dim == 0

    def test_noncommutative_rejected(self):
        with pytest.raises(ValueError):
            enumerate_ideals(shipped("pauli_z2z2"))


def test_systems_under_test_are_semisimple():
    for s in systems_under_test():
        assert radical(algebra_of(s)).dim == 0
