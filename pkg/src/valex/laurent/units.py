"""Unit groups, canonical representatives and equality up to units."""

from __future__ import annotations

from dataclasses import dataclass

from .poly import LaurentPoly, order_key

_NAMES = {
    "full": "FullMonomial",
    "st": "StQuarter",
    "twisted": "TwistedMonomial",
    "twisted_st": "TwistedSt",
}


@dataclass(frozen=True)
class UnitGroup:
    """The indeterminacy an invariant is defined up to.

    ``full``        c * s^i t^j q^k, c a unit of the coefficient ring
    ``st``          (st)^i
    ``twisted``     c * (s^a t^b q^c)^n
    ``twisted_st``  c * (st)^(j n)
    """

    kind: str
    n: int = 1

    def __post_init__(self):
        if self.kind not in _NAMES:
            raise ValueError(f"unknown unit group {self.kind!r}")
        if self.n < 1:
            raise ValueError("degree must be positive")

    @classmethod
    def full(cls) -> "UnitGroup":
        return cls("full")

    @classmethod
    def st(cls) -> "UnitGroup":
        return cls("st")

    @classmethod
    def twisted(cls, n: int) -> "UnitGroup":
        return cls("twisted", n)

    @classmethod
    def twisted_st(cls, n: int) -> "UnitGroup":
        return cls("twisted_st", n)

    @property
    def normalized(self) -> bool:
        return self.kind in ("st", "twisted_st")

    def __str__(self) -> str:
        name = _NAMES[self.kind]
        return f"{name}({self.n})" if self.kind.startswith("twisted") else name

    @classmethod
    def from_string(cls, text: str) -> "UnitGroup":
        text = text.strip()
        for kind, name in _NAMES.items():
            if text == name:
                return cls(kind)
            if text.startswith(name + "(") and text.endswith(")"):
                return cls(kind, int(text[len(name) + 1 : -1]))
        raise ValueError(f"unknown unit group {text!r}")

    def admits(self, unit: LaurentPoly) -> bool:
        """Whether a monomial unit belongs to this group."""
        if not unit.is_unit():
            return False
        ((e, c),) = unit.terms.items()
        if self.kind in ("st",) and c != 1:
            return False
        n = self.n
        if self.kind == "full":
            return True
        if self.kind == "st":
            return e[0] == e[1] and e[2] == 0
        if self.kind == "twisted":
            return all(x % n == 0 for x in e)
        return e[0] == e[1] and e[2] == 0 and e[0] % n == 0


def _fix_coefficient(f: LaurentPoly) -> LaurentPoly:
    _, c = f.leading()
    if f.p:
        return f if c == 1 else f * pow(c, -1, f.p)
    return -f if c < 0 else f


def normalize_canonical(f: LaurentPoly, group: UnitGroup) -> LaurentPoly:
    """Deterministic representative of the orbit of ``f`` under ``group``.

    Exponents are shifted as far towards zero as the group allows and, where
    the group contains coefficient units, the lex-leading coefficient is made
    positive (over Z) or one (over F_p).
    """
    if f.is_zero():
        return f
    m = f.min_exponents()
    n = group.n
    if group.kind == "full":
        return _fix_coefficient(f.shift(-m[0], -m[1], -m[2]))
    if group.kind == "st":
        return f.shift(-m[0], -m[0], 0)
    if group.kind == "twisted":
        return _fix_coefficient(f.shift(-n * (m[0] // n), -n * (m[1] // n), -n * (m[2] // n)))
    j = m[0] // n
    return _fix_coefficient(f.shift(-j * n, -j * n, 0))


def unit_ratio(f: LaurentPoly, g: LaurentPoly):
    """The only possible unit u with g == u * f, read off the leading terms.

    Multiplying by a monomial preserves the monomial order, so a unit relating
    f and g must carry lead(f) to lead(g).  Returns None if no unit fits.
    """
    ef, cf = f.leading()
    eg, cg = g.leading()
    p = f.p
    if p:
        c = cg * pow(cf, -1, p) % p
    else:
        if cg == cf:
            c = 1
        elif cg == -cf:
            c = -1
        else:
            return None
    return LaurentPoly.monomial(eg[0] - ef[0], eg[1] - ef[1], eg[2] - ef[2], c, p)


def equal_up_to_units(f: LaurentPoly, g: LaurentPoly, group: UnitGroup) -> bool:
    if f.p != g.p:
        raise ValueError("coefficient rings differ")
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    if len(f) != len(g):
        return False
    u = unit_ratio(f, g)
    if u is None or not group.admits(u):
        return False
    return u * f == g


def sorted_terms(f: LaurentPoly):
    return sorted(f.terms.items(), key=lambda ec: order_key(ec[0]), reverse=True)
