"""
Dense matrices of Laurent polynomials.

Two determinant kernels are provided and are expected to agree:
cofactor expansion with memoized minors, and fraction-free Bareiss
elimination.  ``det()`` picks cofactor up to size 8 and Bareiss above.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .poly import Exp, LaurentPoly, exact_quotient

CUTOFF = 8


def _accumulate(pairs, p: int) -> LaurentPoly:
    """Sum of sign * f * g over the given triples, in a single dict."""
    out: Dict[Exp, int] = {}
    for sign, f, g in pairs:
        a, b = f.terms, g.terms
        if not a or not b:
            continue
        for e1, c1 in a.items():
            c1 = sign * c1
            for e2, c2 in b.items():
                k = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[k] = out.get(k, 0) + c1 * c2
    if p:
        return LaurentPoly._raw({e: c % p for e, c in out.items() if c % p}, p)
    return LaurentPoly._raw({e: c for e, c in out.items() if c}, p)


class PolyMatrix:
    """Immutable matrix with LaurentPoly entries over a common ring."""

    __slots__ = ("rows", "cols", "p", "_e")

    def __init__(self, entries: Sequence[Sequence], p: int = 0, cols: int = None):
        rows = [list(r) for r in entries]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else (cols or 0)
        self.p = p
        conv = []
        for r in rows:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
            row = []
            for x in r:
                if isinstance(x, int):
                    x = LaurentPoly.constant(x, p)
                elif x.p != p:
                    raise ValueError("entry lives in a different coefficient ring")
                row.append(x)
            conv.append(tuple(row))
        self._e = tuple(conv)

    @classmethod
    def identity(cls, n: int, p: int = 0) -> "PolyMatrix":
        one, zero = LaurentPoly.one(p), LaurentPoly.zero(p)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], p)

    @classmethod
    def zeros(cls, r: int, c: int, p: int = 0) -> "PolyMatrix":
        zero = LaurentPoly.zero(p)
        return cls([[zero] * c for _ in range(r)], p, cols=c)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["PolyMatrix"]], p: int = 0) -> "PolyMatrix":
        out = []
        for brow in blocks:
            h = brow[0].rows
            for i in range(h):
                row = []
                for b in brow:
                    if b.rows != h:
                        raise ValueError("block heights differ")
                    row.extend(b._e[i])
                out.append(row)
        return cls(out, p)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> LaurentPoly:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> Tuple[LaurentPoly, ...]:
        return self._e[i]

    def entries(self) -> Tuple[Tuple[LaurentPoly, ...], ...]:
        return self._e

    def _check(self, other: "PolyMatrix"):
        if not isinstance(other, PolyMatrix):
            raise TypeError("expected PolyMatrix")
        if other.p != self.p:
            raise ValueError("coefficient rings differ")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)], self.p, self.cols)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)], self.p, self.cols)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix([[-a for a in r] for r in self._e], self.p, self.cols)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        colsT = list(zip(*other._e)) if other.rows else [()] * other.cols
        p = self.p
        out = []
        for r in self._e:
            out.append([_accumulate(((1, a, b) for a, b in zip(r, c)), p) for c in colsT])
        return PolyMatrix(out, p, other.cols)

    def scale(self, f) -> "PolyMatrix":
        return PolyMatrix([[a * f for a in r] for r in self._e], self.p, self.cols)

    def map(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> "PolyMatrix":
        return PolyMatrix([[fn(a) for a in r] for r in self._e], self.p, self.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(c) for c in zip(*self._e)], self.p, self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self._e[i][j] for j in cols] for i in rows], self.p, len(cols))

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.p == other.p and self._e == other._e

    def __hash__(self) -> int:
        return hash((self._e, self.p))

    def is_identity(self) -> bool:
        return self == PolyMatrix.identity(self.rows, self.p) if self.rows == self.cols else False

    def det(self, kernel: str = "auto") -> LaurentPoly:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if kernel == "auto":
            kernel = "cofactor" if self.rows <= CUTOFF else "bareiss"
        if kernel == "cofactor":
            return det_cofactor(self)
        if kernel == "bareiss":
            return det_bareiss(self)
        raise ValueError(f"unknown determinant kernel {kernel!r}")

    def minors(self, size: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...], LaurentPoly]]:
        """All size x size minors, as (rows, cols, determinant)."""
        for rs in combinations(range(self.rows), size):
            for cs in combinations(range(self.cols), size):
                yield rs, cs, self.submatrix(rs, cs).det()

    def to_text(self) -> str:
        return "\n".join("[" + ", ".join(a.to_text() for a in r) + "]" for r in self._e)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"


def det_cofactor(m: PolyMatrix) -> LaurentPoly:
    """Laplace expansion along rows, memoizing minors by their column set."""
    n, p, a = m.rows, m.p, m._e
    one = LaurentPoly.one(p)
    if n == 0:
        return one
    memo: Dict[int, LaurentPoly] = {}

    def rec(r: int, mask: int) -> LaurentPoly:
        if r == n:
            return one
        hit = memo.get(mask)
        if hit is not None:
            return hit
        pairs = []
        idx = 0
        row = a[r]
        for j in range(n):
            if mask >> j & 1:
                e = row[j]
                if e:
                    sub = rec(r + 1, mask & ~(1 << j))
                    if sub:
                        pairs.append((-1 if idx & 1 else 1, e, sub))
                idx += 1
        val = _accumulate(pairs, p)
        memo[mask] = val
        return val

    return rec(0, (1 << n) - 1)


def det_bareiss(m: PolyMatrix) -> LaurentPoly:
    """Fraction-free Gaussian elimination with exact division."""
    n, p = m.rows, m.p
    if n == 0:
        return LaurentPoly.one(p)
    a: List[List[LaurentPoly]] = [list(r) for r in m._e]
    sign = 1
    prev = LaurentPoly.one(p)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero(p)
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = _accumulate(((1, a[i][j], piv), (-1, aik, a[k][j])), p)
                if num:
                    q = exact_quotient(num, prev)
                    if q is None:
                        raise ArithmeticError("internal error: Bareiss division not exact")
                    a[i][j] = q
                else:
                    a[i][j] = num
            a[i][k] = LaurentPoly.zero(p)
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d
