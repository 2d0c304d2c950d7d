import random
from functools import lru_cache

import pytest

from twisted_lab.coeff_algebra import AlgElement, BlockShape
from twisted_lab.conv_algebra import ConvElement
from twisted_lab.groups import cyclic
from twisted_lab.instances import load_system
from twisted_lab.scalars import CycScalar, euler_phi
from twisted_lab.twisted_action import exterior_equivalent, trivial_system

POSITIVE = ["group_z4_trivial", "pauli_z2z2", "nc_torus_3", "swap_z2", "dihedral3_trivial"]
NEGATIVE = ["pauli_broken", "swap_z3_broken"]
SEED = 20240611


@lru_cache(maxsize=None)
def shipped(name):
    return load_system(name)


@lru_cache(maxsize=None)
def m2_twisted():
    """Z2 acting on M2 by Ad(diag(1, i)) with the non-scalar cocycle value diag(1, -1)."""
    shape = BlockShape.of([2])
    base = trivial_system(cyclic(2), shape, 4, "m2_trivial")
    v = AlgElement.from_blocks(shape, 4, [[[1, 0], [0, CycScalar.root(4, 1)]]])
    return exterior_equivalent(base, [base.unit_element, v])


def systems_under_test():
    return [shipped(n) for n in POSITIVE] + [m2_twisted()]


def random_scalar(rng, m, height=3, density=0.7):
    if rng.random() > density:
        return CycScalar.from_rational(m, 0)
    return CycScalar(m, [rng.randint(-height, height) for _ in range(euler_phi(m))])


def random_alg(rng, shape, m, **kw):
    return AlgElement.from_coords(shape, m, [random_scalar(rng, m, **kw) for _ in range(shape.dim)])


def random_conv(rng, system, **kw):
    return ConvElement(
        system,
        [random_alg(rng, system.shape, system.conductor, **kw) for _ in system.group.elements()],
    )


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(params=POSITIVE + ["m2_twisted"])
def system(request):
    return m2_twisted() if request.param == "m2_twisted" else shipped(request.param)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
