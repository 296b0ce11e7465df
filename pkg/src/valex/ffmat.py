"""Small square matrices over F_p, stored as tuples of tuples of ints."""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence, Tuple

Mat = Tuple[Tuple[int, ...], ...]


def as_mat(rows: Sequence[Sequence[int]], p: int) -> Mat:
    m = tuple(tuple(int(x) % p for x in r) for r in rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    return m


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def is_identity(a: Mat) -> bool:
    return a == identity(len(a))


def mul(a: Mat, b: Mat, p: int) -> Mat:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(a[i], bt[j])) % p for j in range(n)) for i in range(n))


def det(a: Mat, p: int) -> int:
    n = len(a)
    m = [list(r) for r in a]
    d = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] % p), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            d = -d
        d = d * m[k][k] % p
        inv = pow(m[k][k], -1, p)
        for i in range(k + 1, n):
            f = m[i][k] * inv % p
            if f:
                for j in range(k, n):
                    m[i][j] = (m[i][j] - f * m[k][j]) % p
    return d % p


def inv(a: Mat, p: int) -> Mat:
    n = len(a)
    m = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(a)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] % p), None)
        if piv is None:
            raise ValueError("matrix is singular mod p")
        m[k], m[piv] = m[piv], m[k]
        c = pow(m[k][k], -1, p)
        m[k] = [x * c % p for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[k])]
    return tuple(tuple(r[n:]) for r in m)


def power(a: Mat, k: int, p: int) -> Mat:
    if k < 0:
        a, k = inv(a, p), -k
    out = identity(len(a))
    while k:
        if k & 1:
            out = mul(out, a, p)
        a = mul(a, a, p)
        k >>= 1
    return out


def flat(a: Mat) -> Tuple[int, ...]:
    return tuple(x for r in a for x in r)


def all_matrices(n: int, p: int) -> Iterator[Mat]:
    """Every n x n matrix over F_p in lexicographic order of entries."""
    for entries in product(range(p), repeat=n * n):
        yield tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))


def general_linear(n: int, p: int) -> list:
    return [m for m in all_matrices(n, p) if det(m, p)]


def special_linear(n: int, p: int) -> list:
    return [m for m in all_matrices(n, p) if det(m, p) == 1]


def to_text(a: Mat) -> str:
    return "[" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in a) + "]"
