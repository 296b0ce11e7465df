"""
Finite-field representations of virtual knot groups.

Groups of matrices are turned into multiplication tables once, so searches
work on small integers.  Presentation searches assign s and q first, then the
meridians in order, and test each relator as soon as all of its generators
have images.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import ffmat
from .braid import VirtualBraid, extend_for_stabilization, push_images, strand
from .errors import InputError
from .groupword import GroupWord, Representation
from .presentation import Presentation

DEFAULT_CAP = 10**8


class MatrixGroup:
    """A finite matrix group with its multiplication table."""

    def __init__(self, elements: Sequence[ffmat.Mat], p: int):
        self.p = p
        self.elements = list(elements)
        self.n = len(self.elements[0])
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.mul = [[self.index[ffmat.mul(a, b, p)] for b in self.elements] for a in self.elements]
        self.inv = [self.index[ffmat.inv(a, p)] for a in self.elements]
        self.one = self.index[ffmat.identity(self.n)]

    @classmethod
    def named(cls, name: str, n: int, p: int) -> "MatrixGroup":
        name = name.upper()
        if name == "SL":
            return cls(ffmat.special_linear(n, p), p)
        if name == "GL":
            return cls(ffmat.general_linear(n, p), p)
        raise InputError(f"unknown target group {name!r}; use SL or GL")

    def __len__(self) -> int:
        return len(self.elements)

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv[a], -e
        out = self.one
        for _ in range(e):
            out = self.mul[out][a]
        return out

    def commute(self, a: int, b: int) -> bool:
        return self.mul[a][b] == self.mul[b][a]


def _eval(word: Sequence[Tuple[str, int]], assign: Dict[str, int], G: MatrixGroup, cache: Dict) -> int:
    out = G.one
    mul = G.mul
    for g, e in word:
        key = (assign[g], e)
        m = cache.get(key)
        if m is None:
            m = cache[key] = G.power(assign[g], e)
        out = mul[out][m]
    return out


def enumerate_reps(
    pres: Presentation,
    target: str = "SL",
    n: int = 2,
    p: int = 2,
    cap: int = DEFAULT_CAP,
    fixed: Optional[Dict[str, ffmat.Mat]] = None,
    dedupe: bool = False,
) -> List[Representation]:
    """Every assignment of the generators into the target killing all relators.

    ``fixed`` pins some generators to given matrices.  Results are sorted by
    the flattened images of the meridians, then s, then q.
    """
    G = MatrixGroup.named(target, n, p)
    gens = list(pres.generators)
    fixed = {g: G.index[ffmat.as_mat(m, p)] for g, m in (fixed or {}).items()}
    for g in fixed:
        if g not in gens:
            raise InputError(f"fixed image for unknown generator {g!r}")
    free = [g for g in gens if g not in fixed]
    space = len(G) ** len(free)
    if space > cap:
        raise InputError(f"search space {len(G)}^{len(free)} = {space} exceeds the cap {cap}")

    order = [g for g in pres.reserved if g in free] + [g for g in pres.meridians if g in free]
    pos = {g: i for i, g in enumerate(order)}
    # a relator is checked once its last generator (in search order) is set
    checks: List[List[List[Tuple[str, int]]]] = [[] for _ in order]
    always: List[List[Tuple[str, int]]] = []
    for r in pres.relators:
        word = r.syllables
        idx = [pos[g] for g in r.generators() if g in pos]
        (checks[max(idx)] if idx else always).append(word)
    commute_at = None
    if pres.has_commutator_row and ("s" in free or "q" in free):
        commute_at = max(pos.get("s", -1), pos.get("q", -1))

    assign = dict(fixed)
    cache: Dict = {}
    if any(_eval(w, assign, G, cache) != G.one for w in always):
        return []
    if pres.has_commutator_row and commute_at is None and not G.commute(assign["s"], assign["q"]):
        return []

    found: List[Dict[str, int]] = []

    def rec(level: int) -> None:
        if level == len(order):
            found.append(dict(assign))
            return
        g = order[level]
        for e in range(len(G)):
            assign[g] = e
            if level == commute_at and not G.commute(assign["s"], assign["q"]):
                continue
            if all(_eval(w, assign, G, cache) == G.one for w in checks[level]):
                rec(level + 1)
        del assign[g]

    rec(0)
    out = [Representation(p, n, {g: G.elements[a[g]] for g in gens}) for a in found]
    key = lambda r: tuple(ffmat.flat(r.images[g]) for g in gens)
    out.sort(key=key)
    if dedupe:
        out = _dedupe(out, gens, p, n)
    return out


def conjugate_rep(rho: Representation, g: ffmat.Mat) -> Representation:
    gi = ffmat.inv(g, rho.p)
    return Representation(rho.p, rho.n, {k: ffmat.mul(ffmat.mul(g, m, rho.p), gi, rho.p) for k, m in rho.images.items()})


def _dedupe(reps: List[Representation], gens: Sequence[str], p: int, n: int) -> List[Representation]:
    conj = ffmat.general_linear(n, p)
    key = lambda r: tuple(ffmat.flat(r.images[g]) for g in gens)
    seen = set()
    out = []
    for r in reps:
        orbit = {key(conjugate_rep(r, g)) for g in conj}
        canon = min(orbit)
        if canon not in seen:
            seen.add(canon)
            out.append(r)
    return out


def extend_by_definitions(pres: Presentation, rho: Representation) -> Representation:
    """Fill in meridians that some relator defines as ``x^-1 w``.

    Used when a representation is given on a generating subset, as when a
    presentation solves its extra meridians in terms of the others.
    """
    imgs = dict(rho.images)
    progress = True
    while progress:
        progress = False
        for r in pres.relators:
            if not r.syllables:
                continue
            g, e = r.syllables[0]
            rest = GroupWord(r.syllables[1:])
            if g in imgs or e != -1 or g in rest.generators():
                continue
            if all(h in imgs for h in rest.generators()):
                imgs[g] = Representation(rho.p, rho.n, imgs)(rest)
                progress = True
    return Representation(rho.p, rho.n, imgs)


# braid compatible representations


@dataclass(frozen=True)
class Compatibility:
    compatible: bool
    failing: Tuple[int, ...]
    missing: Tuple[str, ...] = ()

    def to_text(self) -> str:
        if self.missing:
            return f"missing images for {', '.join(self.missing)}\n"
        if self.compatible:
            return "compatible\n"
        return "not compatible; failing strands " + " ".join(map(str, self.failing)) + "\n"


def check_braid_compatible(beta: VirtualBraid, rho: Representation) -> Compatibility:
    need = [strand(j) for j in range(1, beta.strands + 1)] + ["s", "q"]
    missing = tuple(g for g in need if g not in rho.images)
    if missing:
        return Compatibility(False, (), missing)
    pushed = push_images(beta.letters, rho.images, rho.p)
    bad = tuple(j for j in range(1, beta.strands + 1) if pushed[strand(j)] != rho.images[strand(j)])
    return Compatibility(not bad, bad)


def stabilization_extension(beta: VirtualBraid, rho: Representation, kind: str) -> Representation:
    """The extension of rho to the stabilized braid."""
    return extend_for_stabilization(beta, rho, kind)


def _push_indices(letters, assign: List[int], S: int, Q: int, G: MatrixGroup) -> List[int]:
    m = list(assign)
    mul, inv = G.mul, G.inv
    Si, Qi = inv[S], inv[Q]
    for kind, i in reversed(letters):
        a, b = i - 1, i
        A, B = m[a], m[b]
        if kind == "b":
            m[a] = mul[mul[S][B]][Si]
            m[b] = mul[mul[mul[B][A]][S]][mul[inv[B]][Si]]
        elif kind == "B":
            m[a] = mul[mul[mul[Si][inv[A]]][S]][mul[B][A]]
            m[b] = mul[mul[Si][A]][S]
        else:
            m[a] = mul[mul[Q][B]][Qi]
            m[b] = mul[mul[Qi][A]][Q]
    return m


def compatible_reps(
    beta: VirtualBraid,
    target: str = "SL",
    n: int = 2,
    p: int = 2,
    s_q: Optional[Iterable[Tuple[ffmat.Mat, ffmat.Mat]]] = None,
    cap: int = DEFAULT_CAP,
) -> List[Representation]:
    """All rho with beta_* rho = rho, optionally for prescribed (rho(s), rho(q))."""
    G = MatrixGroup.named(target, n, p)
    k = beta.strands
    if s_q is None:
        pairs = [(a, b) for a in range(len(G)) for b in range(len(G)) if G.commute(a, b)]
    else:
        pairs = [(G.index[ffmat.as_mat(a, p)], G.index[ffmat.as_mat(b, p)]) for a, b in s_q]
    space = len(pairs) * len(G) ** k
    if space > cap:
        raise InputError(f"search space {space} exceeds the cap {cap}")
    out = []
    for S, Q in pairs:
        for xs in itertools.product(range(len(G)), repeat=k):
            if _push_indices(beta.letters, list(xs), S, Q, G) == list(xs):
                imgs = {strand(j + 1): G.elements[x] for j, x in enumerate(xs)}
                imgs["s"], imgs["q"] = G.elements[S], G.elements[Q]
                out.append(Representation(p, n, imgs))
    return out
