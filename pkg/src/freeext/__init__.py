"""Exact Macaulay-duality toolkit for free extensions of graded Artinian Gorenstein algebras."""

from .algebra import ArtinianAlgebra, from_dual_generator, quotient
from .duality import GradedIdeal, annihilator, colon, derivates, ideal_from_generators, perp
from .exactfield import GF, QQ, FieldSpec
from .extension import ExtensionInput, assemble_F, expand_in_T, full_report, lift_element
from .lefschetz import conjugate, has_sljt, is_strong_lefschetz, jordan_type
from .ring import DualPoly, Poly, RingSpec, contract

__version__ = "0.1.0"

__all__ = [
    "ArtinianAlgebra",
    "DualPoly",
    "ExtensionInput",
    "FieldSpec",
    "GF",
    "GradedIdeal",
    "Poly",
    "QQ",
    "RingSpec",
    "annihilator",
    "assemble_F",
    "colon",
    "conjugate",
    "contract",
    "derivates",
    "expand_in_T",
    "from_dual_generator",
    "full_report",
    "has_sljt",
    "ideal_from_generators",
    "is_strong_lefschetz",
    "jordan_type",
    "lift_element",
    "perp",
    "quotient",
]
