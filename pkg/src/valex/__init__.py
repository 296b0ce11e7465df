"""Virtual Alexander polynomials, their twisted versions and braid pipelines."""

from .braid import VirtualBraid, parse_braid
from .errors import InputError, InvariantViolation
from .groupword import GroupWord, Representation, parse_representation, parse_word
from .invariants import (
    crossing_bounds,
    h_poly,
    normalized_h,
    normalized_twisted_h,
    skein_check,
    twisted_h,
)
from .laurent import LaurentPoly, PolyMatrix, UnitGroup, parse_poly
from .presentation import Presentation, delta_ell, parse_presentation

__version__ = "0.1.0"

__all__ = [
    "GroupWord",
    "InputError",
    "InvariantViolation",
    "LaurentPoly",
    "PolyMatrix",
    "Presentation",
    "Representation",
    "UnitGroup",
    "VirtualBraid",
    "crossing_bounds",
    "delta_ell",
    "h_poly",
    "normalized_h",
    "normalized_twisted_h",
    "parse_braid",
    "parse_poly",
    "parse_presentation",
    "parse_representation",
    "parse_word",
    "skein_check",
    "twisted_h",
]
