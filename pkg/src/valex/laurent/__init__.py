"""Laurent polynomial arithmetic in s, t, q over Z and F_p."""

from .gcd import gcd_many, poly_gcd, unique_up_to_units
from .matrix import PolyMatrix, det_bareiss, det_cofactor
from .poly import LaurentPoly, QProfile, divides, exact_quotient, order_key, parse_poly
from .units import UnitGroup, equal_up_to_units, normalize_canonical, unit_ratio

__all__ = [
    "LaurentPoly",
    "PolyMatrix",
    "QProfile",
    "UnitGroup",
    "det_bareiss",
    "det_cofactor",
    "divides",
    "equal_up_to_units",
    "exact_quotient",
    "gcd_many",
    "normalize_canonical",
    "order_key",
    "parse_poly",
    "poly_gcd",
    "unique_up_to_units",
    "unit_ratio",
]


def S(p: int = 0) -> LaurentPoly:
    return LaurentPoly.var("s", p)


def T(p: int = 0) -> LaurentPoly:
    return LaurentPoly.var("t", p)


def Q(p: int = 0) -> LaurentPoly:
    return LaurentPoly.var("q", p)
