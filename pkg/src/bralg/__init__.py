"""Exact computations with BR algebras R(t, sigma, H, J) and their weight modules."""

from .bralgebra import BRAlgebra, GradedElement, gk_dimension, is_central, is_gwa, lift_automorphism, multiply
from .config import AlgebraConfig, load_config, load_fixture, parse_config
from .groebner import Ideal
from .polyring import PolyRing, Polynomial, RingAutomorphism
from .scalars import FieldElement, FieldSpec
from .spectrum import OrbitPoint, OrbitView, in_SB, is_break, nonsimplicity_witness, orbit, point_action

__all__ = [
    "AlgebraConfig",
    "BRAlgebra",
    "FieldElement",
    "FieldSpec",
    "GradedElement",
    "Ideal",
    "OrbitPoint",
    "OrbitView",
    "PolyRing",
    "Polynomial",
    "RingAutomorphism",
    "gk_dimension",
    "in_SB",
    "is_break",
    "is_central",
    "is_gwa",
    "lift_automorphism",
    "load_config",
    "load_fixture",
    "multiply",
    "nonsimplicity_witness",
    "orbit",
    "parse_config",
    "point_action",
]

__version__ = "0.1.0"
