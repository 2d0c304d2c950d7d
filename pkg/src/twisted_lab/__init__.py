"""Exact verification toolkit for twisted convolution algebras
l^1_{alpha,omega}(G, A) over finite groups and finite-dimensional A."""

from .coeff_algebra import AlgElement, BlockShape
from .conv_algebra import ConvElement, convolve, involve
from .groups import FiniteGroup, cyclic, dihedral, direct_product, validate_table
from .linalg import Subspace
from .scalars import CycScalar, make_root
from .twisted_action import TwistedSystem, validate_axioms

__version__ = "0.1.0"
SCHEMA = "twisted-lab/1"
