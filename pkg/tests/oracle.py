"""
Independent reference computations built on sympy.

Nothing here imports the package: words are plain strings, the Fox calculus
is redone from the definition and determinants and gcds come from sympy.
"""

from __future__ import annotations

import itertools
import re
from functools import reduce

import sympy

s, t, q = sympy.symbols("s t q")
GENS = (s, t, q)
_TOK = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def word(text):
    """'a b^-1 s^2' -> [('a', 1), ('b', -1), ('s', 1), ('s', 1)]."""
    out = []
    for tok in text.split():
        m = _TOK.match(tok)
        g, e = m.group(1), int(m.group(2) or 1)
        out.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return out


def relator(text):
    if "=" in text:
        lhs, rhs = text.split("=")
        return [(g, -e) for g, e in reversed(word(lhs))] + word(rhs)
    return word(text)


def image(g):
    return {"s": s, "q": q}.get(g, t)


def fox_abelian(w, g):
    """Abelianized Fox derivative of a letter list with respect to g."""
    acc, prefix = 0, sympy.Integer(1)
    for h, e in w:
        if e == 1:
            if h == g:
                acc += prefix
            prefix *= image(h)
        else:
            prefix /= image(h)
            if h == g:
                acc -= prefix
    return sympy.expand(acc)


def matrix(meridians, relators, with_sq=True):
    gens = list(meridians) + ["s", "q"]
    rels = [relator(r) for r in relators]
    if with_sq:
        rels.append(word("s q s^-1 q^-1"))
    return sympy.Matrix([[fox_abelian(r, g) for g in gens] for r in rels])


def to_poly(expr):
    """Clear denominators by a monomial and return a sympy Poly in s, t, q."""
    num, _ = sympy.fraction(sympy.together(sympy.expand(expr)))
    return sympy.Poly(sympy.expand(num) + s - s, *GENS)


def canon(expr):
    """Orbit representative under multiplication by +- monomials."""
    p = to_poly(expr)
    if p.is_zero:
        return sympy.Integer(0)
    _, p = p.terms_gcd()
    if p.LC() < 0:
        p = -p
    return p.as_expr()


def elementary(meridians, relators, ell, with_sq=True):
    """gcd of the (g - 1 - ell)-minors, g = number of generators with s, q."""
    M = matrix(meridians, relators, with_sq)
    size = len(meridians) + 2 - 1 - ell
    if size <= 0:
        return sympy.Integer(1)
    if size > min(M.shape):
        return sympy.Integer(0)
    dets = []
    for rows in itertools.combinations(range(M.rows), size):
        for cols in itertools.combinations(range(M.cols), size):
            d = to_poly(M.extract(list(rows), list(cols)).det(method="berkowitz"))
            if not d.is_zero:
                dets.append(d)
    if not dets:
        return sympy.Integer(0)
    return canon(reduce(sympy.gcd, dets).as_expr())


def same_up_to_units(a, b):
    return sympy.expand(canon(a) - canon(b)) == 0
