"""
Multivariate gcd over Z[s,t,q] or F_p[s,t,q] by recursive primitive PRS.

Polynomials are viewed in the tower ((R[s])[t])[q]: the content with respect
to the main variable is a gcd one level down, and the primitive parts are
reduced with pseudo-remainders.  Laurent inputs are shifted to honest
polynomials first; the answer is only meaningful up to units anyway.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List

from .poly import LaurentPoly, exact_quotient
from .units import UnitGroup, normalize_canonical

_FULL = UnitGroup.full()


def _shift0(f: LaurentPoly) -> LaurentPoly:
    m = f.min_exponents()
    if m == (0, 0, 0):
        return f
    return f.shift(-m[0], -m[1], -m[2])


def _coeffs(f: LaurentPoly, v: int) -> Dict[int, LaurentPoly]:
    groups: Dict[int, dict] = {}
    for e, c in f.items():
        k = e[v]
        e2 = list(e)
        e2[v] = 0
        groups.setdefault(k, {})[tuple(e2)] = c
    return {k: LaurentPoly._raw(d, f.p) for k, d in groups.items()}


def _lc(f: LaurentPoly, v: int, d: int) -> LaurentPoly:
    out = {}
    for e, c in f.items():
        if e[v] == d:
            e2 = list(e)
            e2[v] = 0
            out[tuple(e2)] = c
    return LaurentPoly._raw(out, f.p)


def _int_content(f: LaurentPoly) -> int:
    g = 0
    for c in f.terms.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _div(f: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    q = exact_quotient(f, d)
    if q is None:
        raise ArithmeticError("internal error: inexact division in gcd")
    return _shift0(q)


def _content(f: LaurentPoly, v: int) -> LaurentPoly:
    cs = sorted(_coeffs(f, v).values(), key=len)
    c = cs[0]
    for x in cs[1:]:
        if c.is_unit():
            break
        c = _gcd_rec(c, x, v - 1)
    return _shift0(c)


def _pp(f: LaurentPoly, v: int) -> LaurentPoly:
    return _div(f, _content(f, v))


def _prem(a: LaurentPoly, b: LaurentPoly, v: int) -> LaurentPoly:
    db = b.degree_in(v)
    lb = _lc(b, v, db)
    r = a
    while r and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = _lc(r, v, dr)
        sh = [0, 0, 0]
        sh[v] = dr - db
        r = r * lb - (lr * b).shift(*sh)
    return r


def _const_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    if f.p:
        return LaurentPoly.one(f.p)
    return LaurentPoly.constant(math.gcd(_int_content(f), _int_content(g)))


def _gcd_rec(f: LaurentPoly, g: LaurentPoly, v: int) -> LaurentPoly:
    # f, g nonzero polynomials in the variables 0..v
    f, g = _shift0(f), _shift0(g)
    if v < 0 or f.is_monomial() or g.is_monomial():
        return _const_gcd(f, g)
    df, dg = f.degree_in(v), g.degree_in(v)
    if df == 0 and dg == 0:
        return _gcd_rec(f, g, v - 1)
    cf = _content(f, v) if df else f
    cg = _content(g, v) if dg else g
    c = _gcd_rec(cf, cg, v - 1)
    if df == 0 or dg == 0:
        return c
    a, b = _div(f, cf), _div(g, cg)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    h = None
    if exact_quotient(a, b) is not None:
        h = b
    else:
        while True:
            if b.degree_in(v) == 0:
                break
            r = _shift0(_prem(a, b, v))
            if r.is_zero():
                h = b
                break
            a, b = b, _pp(r, v)
    if h is None:
        return c
    return c * _pp(h, v)


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """gcd of two Laurent polynomials, in canonical FullMonomial form."""
    if f.p != g.p:
        raise ValueError("coefficient rings differ")
    if f.is_zero():
        return normalize_canonical(g, _FULL)
    if g.is_zero():
        return normalize_canonical(f, _FULL)
    return normalize_canonical(_gcd_rec(f, g, 2), _FULL)


def gcd_many(polys: Iterable[LaurentPoly], p: int = 0) -> LaurentPoly:
    """gcd of a family, stopping early once a unit is reached."""
    acc = LaurentPoly.zero(p)
    for f in polys:
        if f.is_zero():
            continue
        if acc.is_zero():
            acc = normalize_canonical(f, _FULL)
        elif exact_quotient(f, acc) is None:
            acc = poly_gcd(acc, f)
        if acc.is_unit():
            break
    return acc


def unique_up_to_units(polys: Iterable[LaurentPoly]) -> List[LaurentPoly]:
    """Distinct nonzero canonical representatives, in first-seen order."""
    seen = {}
    for f in polys:
        if f.is_zero():
            continue
        c = normalize_canonical(f, _FULL)
        seen.setdefault(c, None)
    return list(seen)
