"""
Exact Laurent polynomials in the variables s, t, q.

A polynomial is stored as a dict mapping an exponent triple ``(e_s, e_t, e_q)``
to a nonzero coefficient.  The coefficient ring is either the integers
(``p == 0``) or the prime field F_p (``p`` prime), in which case coefficients
are kept reduced to ``0 .. p-1``.

Monomials are ordered lexicographically with q > t > s, that is by the tuple
``(e_q, e_t, e_s)``.  This order is compatible with multiplication by
monomials, which the division and unit-matching code relies on.
"""

from __future__ import annotations

import ast
import heapq
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple

Exp = Tuple[int, int, int]

VARS = ("s", "t", "q")
_ZERO_EXP: Exp = (0, 0, 0)


def order_key(e: Exp) -> Tuple[int, int, int]:
    """Sort key of a monomial exponent: lex with q > t > s."""
    return (e[2], e[1], e[0])


def _reduce(c: int, p: int) -> int:
    return c % p if p else c


def _inverse_mod(c: int, p: int) -> int:
    return pow(c, -1, p)


class QProfile(NamedTuple):
    """q-width and extreme q-degrees of one representative."""

    width: int
    deg_q: int
    deg_qinv: int
    zero: bool


class LaurentPoly:
    """Immutable exact Laurent polynomial in s, t, q over Z or F_p."""

    __slots__ = ("_terms", "_p", "_hash")

    def __init__(self, terms: Optional[Mapping[Exp, int]] = None, p: int = 0):
        clean: Dict[Exp, int] = {}
        if terms:
            for e, c in terms.items():
                e = (int(e[0]), int(e[1]), int(e[2]))
                c = _reduce(int(c) + clean.get(e, 0), p)
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        self._terms = clean
        self._p = p
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exp, int], p: int) -> "LaurentPoly":
        # trusted constructor: terms already reduced and free of zeros
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._p = p
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, p: int = 0) -> "LaurentPoly":
        return cls._raw({}, p)

    @classmethod
    def one(cls, p: int = 0) -> "LaurentPoly":
        return cls._raw({_ZERO_EXP: 1}, p)

    @classmethod
    def constant(cls, c: int, p: int = 0) -> "LaurentPoly":
        return cls({_ZERO_EXP: c}, p)

    @classmethod
    def monomial(cls, es: int = 0, et: int = 0, eq: int = 0, c: int = 1, p: int = 0) -> "LaurentPoly":
        return cls({(es, et, eq): c}, p)

    @classmethod
    def var(cls, name: str, p: int = 0) -> "LaurentPoly":
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return cls._raw({tuple(e): 1}, p)

    @classmethod
    def parse(cls, text: str, p: int = 0) -> "LaurentPoly":
        return parse_poly(text, p)

    # basic accessors

    @property
    def p(self) -> int:
        return self._p

    @property
    def terms(self) -> Mapping[Exp, int]:
        return self._terms

    def items(self) -> Iterator[Tuple[Exp, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        """True for c * s^a t^b q^c with c nonzero."""
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Units of the Laurent ring: a monomial times a unit of the coefficient ring."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return bool(self._p) or c in (1, -1)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._terms.get(_ZERO_EXP, 0)

    def leading(self) -> Tuple[Exp, int]:
        """Leading monomial and coefficient under lex order q > t > s."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=order_key)
        return e, self._terms[e]

    def min_exponents(self) -> Exp:
        ts = self._terms
        if not ts:
            return _ZERO_EXP
        return (min(e[0] for e in ts), min(e[1] for e in ts), min(e[2] for e in ts))

    def max_exponents(self) -> Exp:
        ts = self._terms
        if not ts:
            return _ZERO_EXP
        return (max(e[0] for e in ts), max(e[1] for e in ts), max(e[2] for e in ts))

    def degree_in(self, var: int) -> int:
        return max(e[var] for e in self._terms) if self._terms else -1

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for e in self._terms:
            for i in range(3):
                if e[i]:
                    used.add(VARS[i])
        return tuple(v for v in VARS if v in used)

    # ring operations

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other._p != self._p:
                raise ValueError(f"coefficient rings differ (p={self._p} vs p={other._p})")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self._p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        p = self._p
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = _reduce(out.get(e, 0) + c, p)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, p)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        p = self._p
        return LaurentPoly._raw({e: _reduce(-c, p) for e, c in self._terms.items()}, p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._p
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({}, p)
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Exp, int] = {}
        for (e1, c1) in b.items():
            for (e2, c2) in a.items():
                k = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[k] = out.get(k, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return LaurentPoly._raw(out, p)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.one(self._p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit; raises ValueError otherwise."""
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        ((e, c),) = self._terms.items()
        cinv = _inverse_mod(c, self._p) if self._p else c
        return LaurentPoly._raw({(-e[0], -e[1], -e[2]): cinv}, self._p)

    def scale(self, c: int) -> "LaurentPoly":
        return self * c

    def shift(self, es: int, et: int, eq: int) -> "LaurentPoly":
        """Multiply by the monomial s^es t^et q^eq."""
        return LaurentPoly._raw(
            {(e[0] + es, e[1] + et, e[2] + eq): c for e, c in self._terms.items()}, self._p
        )

    def mod(self, p: int) -> "LaurentPoly":
        """Reduce an integer polynomial into F_p."""
        if self._p and self._p != p:
            raise ValueError("can only reduce integer polynomials")
        return LaurentPoly(self._terms, p)

    # comparisons

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self._p)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._p == other._p and self._terms == other._terms

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._terms.items()), self._p))
        return self._hash

    # derived operations

    def substitute_monomial(self, images: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Ring map sending each named variable to a monomial image.

        Variables not mentioned are fixed.  Images must be single terms whose
        coefficient is a unit, e.g. ``{"s": s*q**-1, "t": t*q, "q": 1}``.
        """
        imgs = []
        for i, v in enumerate(VARS):
            img = images.get(v)
            if img is None:
                e = [0, 0, 0]
                e[i] = 1
                imgs.append((tuple(e), 1))
                continue
            if isinstance(img, int):
                img = LaurentPoly.constant(img, self._p)
            if img._p != self._p:
                raise ValueError("image lives in a different coefficient ring")
            if not img.is_unit():
                raise ValueError(f"image of {v} must be a monomial unit, got {img}")
            ((e, c),) = img._terms.items()
            imgs.append((e, c))
        out: Dict[Exp, int] = {}
        p = self._p
        for e, c in self._terms.items():
            ne = [0, 0, 0]
            coeff = c
            for i in range(3):
                ie, ic = imgs[i]
                k = e[i]
                if k:
                    for j in range(3):
                        ne[j] += k * ie[j]
                    if ic != 1:
                        if k > 0:
                            coeff *= ic ** k
                        else:
                            coeff *= (_inverse_mod(ic, p) if p else ic) ** (-k)
            key = tuple(ne)
            out[key] = out.get(key, 0) + coeff
        return LaurentPoly(out, p)

    def q_profile(self) -> QProfile:
        if not self._terms:
            return QProfile(0, 0, 0, True)
        qs = [e[2] for e in self._terms]
        hi, lo = max(qs), min(qs)
        return QProfile(hi - lo, hi, -lo, False)

    def evaluate(self, s, t, q):
        """Numeric evaluation; exponents may be negative so values must be invertible."""
        total = 0
        for (a, b, c), coeff in self._terms.items():
            total += coeff * s ** a * t ** b * q ** c
        return total

    # text form

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, key=order_key, reverse=True):
            c = self._terms[e]
            neg = c < 0
            mag = -c if neg else c
            factors = []
            for name, k in zip(VARS, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        ring = f", p={self._p}" if self._p else ""
        return f"LaurentPoly({self.to_text()!r}{ring})"


def exact_quotient(f: LaurentPoly, d: LaurentPoly) -> Optional[LaurentPoly]:
    """Return h with f == d * h, or None when d does not divide f.

    Both inputs are shifted to honest polynomials, after which Laurent
    divisibility agrees with polynomial divisibility because the shifted
    divisor has no monomial factor.
    """
    if d._p != f._p:
        raise ValueError("coefficient rings differ")
    if not d._terms:
        raise ZeroDivisionError("division by the zero polynomial")
    p = f._p
    if not f._terms:
        return LaurentPoly._raw({}, p)
    if len(d._terms) == 1:
        ((de, dc),) = d._terms.items()
        if p:
            inv = _inverse_mod(dc, p)
            out = {(e[0] - de[0], e[1] - de[1], e[2] - de[2]): c * inv % p for e, c in f._terms.items()}
        else:
            out = {}
            for e, c in f._terms.items():
                if c % dc:
                    return None
                out[(e[0] - de[0], e[1] - de[1], e[2] - de[2])] = c // dc
        return LaurentPoly._raw(out, p)

    dm = d.min_exponents()
    fm = f.min_exponents()
    D = [((e[0] - dm[0], e[1] - dm[1], e[2] - dm[2]), c) for e, c in d._terms.items()]
    D.sort(key=lambda ec: order_key(ec[0]), reverse=True)
    (dl, dlc), rest = D[0], D[1:]
    dinv = _inverse_mod(dlc, p) if p else None
    r: Dict[Exp, int] = {(e[0] - fm[0], e[1] - fm[1], e[2] - fm[2]): c for e, c in f._terms.items()}
    heap = [(-e[2], -e[1], -e[0]) for e in r]
    heapq.heapify(heap)
    quot: Dict[Exp, int] = {}
    last = None
    while heap:
        k = heapq.heappop(heap)
        if k == last:
            continue
        last = k
        m = (-k[2], -k[1], -k[0])
        c = r.pop(m, 0)
        if not c:
            continue
        e = (m[0] - dl[0], m[1] - dl[1], m[2] - dl[2])
        if e[0] < 0 or e[1] < 0 or e[2] < 0:
            return None
        if p:
            qc = c * dinv % p
        else:
            if c % dlc:
                return None
            qc = c // dlc
        quot[e] = qc
        for de, dc in rest:
            key = (e[0] + de[0], e[1] + de[1], e[2] + de[2])
            v = r.get(key, 0) - qc * dc
            if p:
                v %= p
            if v:
                if key not in r:
                    heapq.heappush(heap, (-key[2], -key[1], -key[0]))
                r[key] = v
            else:
                r.pop(key, None)
    off = (fm[0] - dm[0], fm[1] - dm[1], fm[2] - dm[2])
    return LaurentPoly._raw({(e[0] + off[0], e[1] + off[1], e[2] + off[2]): c for e, c in quot.items()}, p)


def divides(d: LaurentPoly, f: LaurentPoly) -> Tuple[bool, Optional[LaurentPoly]]:
    """Exact divisibility test; returns ``(True, f/d)`` or ``(False, None)``."""
    q = exact_quotient(f, d)
    return (q is not None, q)


# parsing


def _poly_from_ast(node, p: int) -> LaurentPoly:
    if isinstance(node, ast.Expression):
        return _poly_from_ast(node.body, p)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return LaurentPoly.constant(node.value, p)
    if isinstance(node, ast.Name):
        if node.id not in VARS:
            raise ValueError(f"unknown variable {node.id!r}")
        return LaurentPoly.var(node.id, p)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _poly_from_ast(node.operand, p)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            k = _int_from_ast(node.right)
            return _poly_from_ast(node.left, p) ** k
        left = _poly_from_ast(node.left, p)
        right = _poly_from_ast(node.right, p)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
    raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")


def _int_from_ast(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _int_from_ast(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    raise ValueError("exponents must be integer literals")


def parse_poly(text: str, p: int = 0) -> LaurentPoly:
    """Parse the text form, also accepting parentheses and products.

    >>> parse_poly("(s - q)*(1 - s*t)").to_text()
    's*t*q - q - s^2*t + s'
    """
    src = text.strip().replace("^", "**")
    if not src:
        raise ValueError("empty polynomial")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}") from exc
    return _poly_from_ast(tree, p)


def sum_polys(polys: Iterable[LaurentPoly], p: int = 0) -> LaurentPoly:
    out: Dict[Exp, int] = {}
    for f in polys:
        if f._p != p:
            raise ValueError("coefficient rings differ")
        for e, c in f._terms.items():
            out[e] = out.get(e, 0) + c
    return LaurentPoly(out, p)
