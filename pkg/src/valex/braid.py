"""
Virtual braids, their action on the free group and the virtual Burau maps.

A braid on k strands is a word in the letters ``b<i>`` (sigma_i), ``B<i>``
(sigma_i^-1) and ``v<i>`` (tau_i), 1 <= i < k.  Braids act on the right on
the free group F(x_1, .., x_k, s, q): the image of a word under a product
is computed letter by letter from the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from . import ffmat
from .errors import InputError
from .groupword import GroupWord, Representation, abelian_fox_row, twisted_fox_row
from .laurent import LaurentPoly, PolyMatrix
from .presentation import Presentation

Letter = Tuple[str, int]
KINDS = ("b", "B", "v")
_LETTER = re.compile(r"^([bBv])(\d+)$")


def strand(i: int) -> str:
    return f"x{i}"


@dataclass(frozen=True)
class BraidStats:
    writhe: int
    virtual: int
    components: int
    length: int


@dataclass(frozen=True)
class VirtualBraid:
    strands: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((k, int(i)) for k, i in self.letters))
        if self.strands < 1:
            raise InputError("a braid needs at least one strand")
        for kind, i in self.letters:
            if kind not in KINDS:
                raise InputError(f"unknown braid letter kind {kind!r}")
            if not 1 <= i < self.strands:
                raise InputError(f"letter {kind}{i} out of range for {self.strands} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "VirtualBraid") -> "VirtualBraid":
        if other.strands != self.strands:
            raise InputError("cannot multiply braids on different numbers of strands")
        return VirtualBraid(self.strands, self.letters + other.letters)

    def inverse(self) -> "VirtualBraid":
        flip = {"b": "B", "B": "b", "v": "v"}
        return VirtualBraid(self.strands, tuple((flip[k], i) for k, i in reversed(self.letters)))

    def with_strands(self, k: int) -> "VirtualBraid":
        return VirtualBraid(k, self.letters)

    def shifted(self, by: int = 1) -> "VirtualBraid":
        """Same braid on strands by+1 .. by+k of a braid with by more strands."""
        return VirtualBraid(self.strands + by, tuple((k, i + by) for k, i in self.letters))

    def append(self, kind: str, i: int) -> "VirtualBraid":
        return VirtualBraid(self.strands, self.letters + ((kind, i),))

    def stats(self) -> BraidStats:
        wr = sum(1 for k, _ in self.letters if k == "b") - sum(1 for k, _ in self.letters if k == "B")
        v = sum(1 for k, _ in self.letters if k == "v")
        return BraidStats(wr, v, len(self.permutation_cycles()), len(self.letters))

    def permutation(self) -> List[int]:
        """Where each strand position ends up; every letter swaps i and i+1."""
        perm = list(range(self.strands))
        for _, i in self.letters:
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return perm

    def permutation_cycles(self) -> List[Tuple[int, ...]]:
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = []
        for start in range(self.strands):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = perm[j]
            cycles.append(tuple(cyc))
        return cycles

    def to_text(self) -> str:
        return " ".join([f"k={self.strands}"] + [f"{k}{i}" for k, i in self.letters])

    __str__ = to_text


def parse_braid(text: str) -> VirtualBraid:
    """Parse ``[k=<n>] letter letter ...``; k defaults to the largest index plus one."""
    k = None
    letters = []
    for tok in text.replace(",", " ").split():
        if tok.startswith("k="):
            try:
                k = int(tok[2:])
            except ValueError:
                raise InputError(f"bad strand count {tok!r}") from None
            continue
        m = _LETTER.match(tok)
        if not m:
            raise InputError(f"bad braid letter {tok!r}")
        i = int(m.group(2))
        if i < 1:
            raise InputError(f"bad braid letter {tok!r}")
        letters.append((m.group(1), i))
    if k is None:
        k = max((i for _, i in letters), default=0) + 1
    return VirtualBraid(k, tuple(letters))


# action on the free group


def _x(i: int, e: int = 1) -> GroupWord:
    return GroupWord.gen(strand(i), e)


_S, _Si = GroupWord.gen("s"), GroupWord.gen("s", -1)
_Q, _Qi = GroupWord.gen("q"), GroupWord.gen("q", -1)


def letter_images(kind: str, i: int) -> Dict[str, GroupWord]:
    """Images of x_i and x_{i+1} under one generator; other letters are fixed."""
    a, b = strand(i), strand(i + 1)
    xi, xj = _x(i), _x(i + 1)
    if kind == "b":
        return {a: _S * xj * _Si, b: xj * xi * _S * _x(i + 1, -1) * _Si}
    if kind == "B":
        return {a: _Si * _x(i, -1) * _S * xj * xi, b: _Si * xi * _S}
    return {a: _Q * xj * _Qi, b: _Qi * xi * _Q}


def fundamental_action(beta: VirtualBraid) -> List[GroupWord]:
    """The words x_j^beta, j = 1..k."""
    images = [_x(j) for j in range(1, beta.strands + 1)]
    for kind, i in beta.letters:
        sub = letter_images(kind, i)
        images = [w.substitute(sub) for w in images]
    return images


def action_on_word(beta: VirtualBraid, w: GroupWord) -> GroupWord:
    images = fundamental_action(beta)
    return w.substitute({strand(j + 1): images[j] for j in range(beta.strands)})


def closure_presentation(beta: VirtualBraid) -> Presentation:
    """Generators x_1..x_k, relators x_i^-1 x_i^beta, plus [s,q]."""
    images = fundamental_action(beta)
    rels = tuple(_x(j + 1, -1) * images[j] for j in range(beta.strands))
    return Presentation(tuple(strand(j) for j in range(1, beta.strands + 1)), rels, name=f"closure of {beta}")


# untwisted Burau


def generator_block(kind: str, p: int = 0) -> Tuple[Tuple[LaurentPoly, LaurentPoly], Tuple[LaurentPoly, LaurentPoly]]:
    s, t, q = (LaurentPoly.var(v, p) for v in "stq")
    one, zero = LaurentPoly.one(p), LaurentPoly.zero(p)
    if kind == "b":
        return ((zero, s), (t, one - s * t))
    if kind == "B":
        si, ti = s.inverse(), t.inverse()
        return ((one - si * ti, ti), (si, zero))
    return ((zero, q), (q.inverse(), zero))


def burau_matrix(beta: VirtualBraid, p: int = 0) -> PolyMatrix:
    """Psi(beta) as the left to right product of the generator matrices."""
    k = beta.strands
    one, zero = LaurentPoly.one(p), LaurentPoly.zero(p)
    m = [[one if r == c else zero for c in range(k)] for r in range(k)]
    blocks = {kind: generator_block(kind, p) for kind in KINDS}
    for kind, i in beta.letters:
        (g00, g01), (g10, g11) = blocks[kind]
        a, b = i - 1, i
        for row in m:
            x, y = row[a], row[b]
            row[a] = x * g00 + y * g10
            row[b] = x * g01 + y * g11
    return PolyMatrix(m, p)


def burau_generator_matrix(kind: str, i: int, k: int, p: int = 0) -> PolyMatrix:
    return burau_matrix(VirtualBraid(k, ((kind, i),)), p)


def burau_via_fox(beta: VirtualBraid, p: int = 0) -> PolyMatrix:
    """Psi(beta) as the abelianized Fox Jacobian of x_j -> x_j^beta."""
    gens = [strand(j) for j in range(1, beta.strands + 1)]
    return PolyMatrix([abelian_fox_row(w, gens, p) for w in fundamental_action(beta)], p)


# twisted Burau


def push_images(letters: Sequence[Letter], images: Dict[str, ffmat.Mat], p: int) -> Dict[str, ffmat.Mat]:
    """Strand images of ``gamma_* rho`` for gamma with the given letters.

    Works on bare matrices, one letter at a time from the right, using the
    images of x_i and x_{i+1} written out by hand (see ``letter_images``).
    """
    m = dict(images)
    mul, inv = ffmat.mul, ffmat.inv
    S, Q = m["s"], m["q"]
    Si, Qi = inv(S, p), inv(Q, p)
    for kind, i in reversed(letters):
        a, b = strand(i), strand(i + 1)
        A, B = m[a], m[b]
        if kind == "b":
            m[a] = mul(mul(S, B, p), Si, p)
            m[b] = mul(mul(mul(B, A, p), S, p), mul(inv(B, p), Si, p), p)
        elif kind == "B":
            m[a] = mul(mul(mul(Si, inv(A, p), p), S, p), mul(B, A, p), p)
            m[b] = mul(mul(Si, A, p), S, p)
        else:
            m[a] = mul(mul(Q, B, p), Qi, p)
            m[b] = mul(mul(Qi, A, p), Q, p)
    return m


def push_forward(gamma: VirtualBraid, rho: Representation) -> Representation:
    """gamma_* rho, i.e. x_i -> rho(x_i^gamma); s and q are unchanged."""
    return Representation(rho.p, rho.n, push_images(gamma.letters, rho.images, rho.p))


def push_forward_via_words(gamma: VirtualBraid, rho: Representation) -> Representation:
    images = fundamental_action(gamma)
    return rho.with_images(**{strand(j + 1): rho(w) for j, w in enumerate(images)})


def is_compatible(beta: VirtualBraid, rho: Representation) -> List[int]:
    """Strands i with rho(x_i^beta) != rho(x_i); empty means beta_* rho = rho."""
    pushed = push_images(beta.letters, rho.images, rho.p)
    return [j for j in range(1, beta.strands + 1) if pushed[strand(j)] != rho.images[strand(j)]]


def _generator_twisted_block(kind: str, i: int, rho: Representation) -> PolyMatrix:
    sub = letter_images(kind, i)
    gens = [strand(i), strand(i + 1)]
    rows = [twisted_fox_row(sub[g], gens, rho) for g in gens]
    return PolyMatrix.from_blocks(rows, rho.p)


def twisted_generator_matrix(kind: str, i: int, k: int, rho: Representation) -> PolyMatrix:
    """Psi_rho of a single letter as an nk x nk matrix."""
    n, p = rho.n, rho.p
    out = PolyMatrix.identity(n * k, p)
    blk = _generator_twisted_block(kind, i, rho)
    e = [list(r) for r in out.entries()]
    off = (i - 1) * n
    for r in range(2 * n):
        for c in range(2 * n):
            e[off + r][off + c] = blk[r, c]
    return PolyMatrix(e, p)


def twisted_burau(beta: VirtualBraid, rho: Representation) -> PolyMatrix:
    """Psi_rho(beta) through Psi_rho(g beta') = Psi_{beta'_* rho}(g) Psi_rho(beta')."""
    n, p, k = rho.n, rho.p, beta.strands
    rows = [list(r) for r in PolyMatrix.identity(n * k, p).entries()]
    cur = rho
    for kind, i in reversed(beta.letters):
        blk = _generator_twisted_block(kind, i, cur)
        off = (i - 1) * n
        band = rows[off : off + 2 * n]
        new = []
        for r in range(2 * n):
            brow = blk.row(r)
            out_row = []
            for c in range(n * k):
                acc = LaurentPoly.zero(p)
                for m in range(2 * n):
                    f = brow[m]
                    if f:
                        g = band[m][c]
                        if g:
                            acc = acc + f * g
                out_row.append(acc)
            new.append(out_row)
        rows[off : off + 2 * n] = new
        sub = letter_images(kind, i)
        cur = cur.with_images(**{g: cur(w) for g, w in sub.items()})
    return PolyMatrix(rows, p)


def twisted_burau_via_fox(beta: VirtualBraid, rho: Representation) -> PolyMatrix:
    """rho-tilde applied to the whole Fox Jacobian of Phi(beta)."""
    gens = [strand(j) for j in range(1, beta.strands + 1)]
    blocks = [twisted_fox_row(w, gens, rho) for w in fundamental_action(beta)]
    return PolyMatrix.from_blocks(blocks, rho.p)


def twisted_burau_product(beta: VirtualBraid, rho: Representation) -> PolyMatrix:
    """Product of per-letter matrices, each twisted by the push forward of the rest."""
    n, p, k = rho.n, rho.p, beta.strands
    out = PolyMatrix.identity(n * k, p)
    cur = rho
    for kind, i in reversed(beta.letters):
        out = twisted_generator_matrix(kind, i, k, cur) @ out
        cur = push_forward(VirtualBraid(k, ((kind, i),)), cur)
    return out


# Markov moves


def conjugate(beta: VirtualBraid, gamma: VirtualBraid) -> VirtualBraid:
    return gamma * beta * gamma.inverse()


_STAB = {"virtual": "v", "positive": "B", "negative": "b"}


def stabilize(beta: VirtualBraid, kind: str) -> VirtualBraid:
    """Right stabilization into k+1 strands: virtual tau_k, positive sigma_k^-1, negative sigma_k."""
    try:
        letter = _STAB[kind]
    except KeyError:
        raise InputError(f"unknown stabilization {kind!r}") from None
    k = beta.strands
    return beta.with_strands(k + 1).append(letter, k)


def destabilize(beta: VirtualBraid) -> Tuple[str, VirtualBraid]:
    """Undo a right stabilization; the last letter must be the only use of strand k."""
    k = beta.strands
    if k < 2 or not beta.letters:
        raise InputError("braid is not a stabilization")
    last_kind, last_i = beta.letters[-1]
    if last_i != k - 1 or any(i == k - 1 for _, i in beta.letters[:-1]):
        raise InputError("braid is not a right stabilization")
    kind = {v: name for name, v in _STAB.items()}[last_kind]
    return kind, VirtualBraid(k - 1, beta.letters[:-1])


def exchange_pair(alpha: VirtualBraid, beta: VirtualBraid, side: str) -> Tuple[VirtualBraid, VirtualBraid]:
    """The two sides of an exchange move in VB_{k+1}.

    ``right``: alpha, beta live on strands 1..k and the pair is
    (alpha sigma_k beta sigma_k^-1, alpha tau_k beta tau_k).
    ``left``: alpha, beta live on strands 2..k+1 and sigma_1, tau_1 are used.
    """
    if alpha.strands != beta.strands:
        raise InputError("exchange move needs alpha and beta on the same strands")
    k1 = alpha.strands
    if side == "right":
        j = k1 - 1
        if any(i == j for _, i in alpha.letters + beta.letters):
            raise InputError(f"alpha and beta must avoid strand {k1} for a right exchange")
    elif side == "left":
        j = 1
        if any(i == 1 for _, i in alpha.letters + beta.letters):
            raise InputError("alpha and beta must avoid strand 1 for a left exchange")
    else:
        raise InputError(f"unknown exchange side {side!r}")

    def mk(a: str, b: str) -> VirtualBraid:
        return VirtualBraid(k1, alpha.letters + ((a, j),) + beta.letters + ((b, j),))

    return mk("b", "B"), mk("v", "v")


# twisted extensions for stabilization and exchange


def extend_for_stabilization(beta: VirtualBraid, rho: Representation, kind: str) -> Representation:
    """rho' on the stabilized braid, with rho'(x_{k+1}) read off the new strand."""
    k = beta.strands
    xk = _x(k)
    if kind == "virtual":
        w = _Qi * xk * _Q
    elif kind in ("positive", "negative"):
        w = _Si * xk * _S
    else:
        raise InputError(f"unknown stabilization {kind!r}")
    return rho.with_images(**{strand(k + 1): rho(w)})


def exchange_representation(rho1: Representation, k1: int, side: str) -> Representation:
    """Turn a representation compatible with the sigma side into one for the tau side."""
    if side == "right":
        kk, kn = _x(k1 - 1), _x(k1)
        w = _Qi * _Si * GroupWord.gen(strand(k1 - 1), -1) * _S * kn * kk * _Q
        return rho1.with_images(**{strand(k1): rho1(w)})
    if side == "left":
        w = _Q * _Si * _x(1) * _S * _Qi
        return rho1.with_images(**{strand(1): rho1(w)})
    raise InputError(f"unknown exchange side {side!r}")


def stabilization_factor_twisted(beta: VirtualBraid, rho: Representation, kind: str) -> LaurentPoly:
    """The factor by which det(Psi_rho - I) changes under a stabilization."""
    n, p = rho.n, rho.p
    sign = LaurentPoly.constant(-1, p) ** n
    if kind in ("virtual", "positive"):
        return sign
    d = ffmat.det(rho(_x(beta.strands) * _S), p)
    st = LaurentPoly.monomial(1, 1, 0, 1, p)
    return sign * st ** n * d


def raw_value(beta: VirtualBraid, p: int = 0) -> LaurentPoly:
    """det(Psi(beta) - I)."""
    m = burau_matrix(beta, p)
    return (m - PolyMatrix.identity(beta.strands, p)).det()


def stabilization_factor(kind: str, p: int = 0) -> LaurentPoly:
    if kind in ("virtual", "positive"):
        return LaurentPoly.constant(-1, p)
    return -LaurentPoly.monomial(1, 1, 0, 1, p)


def letters_supported(beta: VirtualBraid) -> Sequence[int]:
    return sorted({i for _, i in beta.letters})
