"""
Free group words, the integral group ring, Fox derivatives and their
evaluations under the abelianization and under a representation.

The generators ``s`` and ``q`` are special: the abelian map sends them to
the variables s and q, and every other generator (a meridian) to t.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from . import ffmat
from .ffmat import Mat
from .laurent import LaurentPoly, PolyMatrix

RESERVED = ("s", "q")
Syllable = Tuple[str, int]

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^\{?(-?\d+)\}?)?$")


def _push(stack: List[Syllable], g: str, e: int) -> None:
    if not e:
        return
    if stack and stack[-1][0] == g:
        e += stack[-1][1]
        stack.pop()
        if e:
            stack.append((g, e))
    else:
        stack.append((g, e))


class GroupWord:
    """Freely reduced word, stored as syllables ``(generator, exponent)``."""

    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables: Iterable[Syllable] = ()):
        stack: List[Syllable] = []
        for g, e in syllables:
            _push(stack, g, int(e))
        self.syllables: Tuple[Syllable, ...] = tuple(stack)
        self._hash = None

    @classmethod
    def _raw(cls, syl: Tuple[Syllable, ...]) -> "GroupWord":
        w = cls.__new__(cls)
        w.syllables = syl
        w._hash = None
        return w

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "GroupWord":
        return cls(((name, exp),))

    @classmethod
    def identity(cls) -> "GroupWord":
        return cls._raw(())

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if not other.syllables:
            return self
        if not self.syllables:
            return other
        stack = list(self.syllables)
        it = iter(other.syllables)
        for g, e in it:
            if stack and stack[-1][0] == g:
                _push(stack, g, e)
                # cancellation may cascade only while whole syllables vanish
                if stack and stack[-1][0] == g:
                    stack.extend(it)
                    break
                continue
            stack.append((g, e))
            stack.extend(it)
            break
        return GroupWord._raw(tuple(stack))

    def inverse(self) -> "GroupWord":
        return GroupWord._raw(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "GroupWord":
        base = self if k >= 0 else self.inverse()
        out = GroupWord.identity()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def letters(self) -> Iterator[Syllable]:
        """Letters one at a time, as ``(generator, +1 or -1)``."""
        for g, e in self.syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, step

    def generators(self) -> Tuple[str, ...]:
        seen = {}
        for g, _ in self.syllables:
            seen.setdefault(g, None)
        return tuple(seen)

    def exponent_sum(self, name: str) -> int:
        return sum(e for g, e in self.syllables if g == name)

    def substitute(self, images: Mapping[str, "GroupWord"]) -> "GroupWord":
        """Apply the endomorphism sending each named generator to its image."""
        stack: List[Syllable] = []
        for g, e in self.syllables:
            img = images.get(g)
            if img is None:
                _push_word(stack, ((g, e),))
                continue
            piece = img.syllables if e > 0 else img.inverse().syllables
            for _ in range(abs(e)):
                _push_word(stack, piece)
        return GroupWord._raw(tuple(stack))

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupWord) and self.syllables == other.syllables

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.syllables)
        return self._hash

    def __lt__(self, other: "GroupWord") -> bool:
        return self.syllables < other.syllables

    def to_text(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"GroupWord({self.to_text()!r})"


def _push_word(stack: List[Syllable], syl: Sequence[Syllable]) -> None:
    for g, e in syl:
        _push(stack, g, e)


def parse_word(text: str) -> GroupWord:
    """Parse whitespace separated tokens ``name``, ``name^-1``, ``name^k``.

    ``*`` may also separate tokens and ``1`` denotes the empty word.
    """
    syl = []
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad token {tok!r} in word {text!r}")
        name, exp = m.group(1), m.group(2)
        syl.append((name, int(exp) if exp is not None else 1))
    return GroupWord(syl)


class GroupRingElem:
    """Finite Z-linear combination of free group words."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[GroupWord, int]] = None):
        self.coeffs: Dict[GroupWord, int] = {w: c for w, c in (coeffs or {}).items() if c}

    @classmethod
    def of(cls, w: GroupWord, c: int = 1) -> "GroupRingElem":
        return cls({w: c})

    @classmethod
    def one(cls) -> "GroupRingElem":
        return cls({GroupWord.identity(): 1})

    def _add_into(self, out: Dict[GroupWord, int], other: "GroupRingElem", sign: int) -> None:
        for w, c in other.coeffs.items():
            v = out.get(w, 0) + sign * c
            if v:
                out[w] = v
            else:
                out.pop(w, None)

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        out = dict(self.coeffs)
        self._add_into(out, other, 1)
        return GroupRingElem(out)

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        out = dict(self.coeffs)
        self._add_into(out, other, -1)
        return GroupRingElem(out)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem({w: -c for w, c in self.coeffs.items()})

    def __mul__(self, other) -> "GroupRingElem":
        if isinstance(other, int):
            return GroupRingElem({w: c * other for w, c in self.coeffs.items()})
        if isinstance(other, GroupWord):
            other = GroupRingElem.of(other)
        out: Dict[GroupWord, int] = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                w = w1 * w2
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElem(out)

    def __rmul__(self, other) -> "GroupRingElem":
        if isinstance(other, int):
            return self * other
        if isinstance(other, GroupWord):
            return GroupRingElem.of(other) * self
        return NotImplemented

    def substitute(self, images: Mapping[str, GroupWord]) -> "GroupRingElem":
        out: Dict[GroupWord, int] = {}
        for w, c in self.coeffs.items():
            w2 = w.substitute(images)
            out[w2] = out.get(w2, 0) + c
        return GroupRingElem(out)

    def augmentation(self) -> int:
        return sum(self.coeffs.values())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElem) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __len__(self) -> int:
        return len(self.coeffs)

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for w in sorted(self.coeffs, key=lambda w: (len(w), w.syllables)):
            c = self.coeffs[w]
            mag = str(abs(c)) + "*" if abs(c) != 1 else ""
            parts.append(("-" if c < 0 else "+") + " " + mag + w.to_text())
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __str__ = to_text

    def __repr__(self) -> str:
        return f"GroupRingElem({self.to_text()!r})"


def fox_derivative(w: GroupWord, g: str) -> GroupRingElem:
    """Left Fox derivative d w / d g."""
    out: Dict[GroupWord, int] = {}
    prefix: List[Syllable] = []
    for x, k in w.syllables:
        if x == g:
            base = tuple(prefix)
            if k > 0:
                for i in range(k):
                    key = GroupWord._raw(base + ((g, i),)) if i else GroupWord._raw(base)
                    out[key] = out.get(key, 0) + 1
            else:
                for i in range(1, -k + 1):
                    key = GroupWord._raw(base + ((g, -i),))
                    out[key] = out.get(key, 0) - 1
        prefix.append((x, k))
    return GroupRingElem(out)


def fox_jacobian(words: Sequence[GroupWord], gens: Sequence[str]) -> List[List[GroupRingElem]]:
    return [[fox_derivative(w, g) for g in gens] for w in words]


# evaluations


def abelian_exponent(w: GroupWord) -> Tuple[int, int, int]:
    """Exponents (e_s, e_t, e_q) of the abelian image of a word."""
    es = et = eq = 0
    for g, e in w.syllables:
        if g == "s":
            es += e
        elif g == "q":
            eq += e
        else:
            et += e
    return (es, et, eq)


def _abelian_key(g: str) -> int:
    return 0 if g == "s" else 2 if g == "q" else 1


def abelian_eval(e: GroupRingElem, p: int = 0) -> LaurentPoly:
    """Image under meridians -> t, s -> s, q -> q."""
    out: Dict[Tuple[int, int, int], int] = {}
    for w, c in e.coeffs.items():
        k = abelian_exponent(w)
        out[k] = out.get(k, 0) + c
    return LaurentPoly(out, p)


def abelian_fox_row(w: GroupWord, gens: Sequence[str], p: int = 0) -> List[LaurentPoly]:
    """All evaluated derivatives of one word in a single left-to-right pass."""
    index = {g: i for i, g in enumerate(gens)}
    acc: List[Dict[Tuple[int, int, int], int]] = [{} for _ in gens]
    cur = [0, 0, 0]
    for g, step in w.letters():
        v = _abelian_key(g)
        j = index.get(g)
        if step < 0:
            cur[v] -= 1
        if j is not None:
            k = (cur[0], cur[1], cur[2])
            acc[j][k] = acc[j].get(k, 0) + step
        if step > 0:
            cur[v] += 1
    return [LaurentPoly(d, p) for d in acc]


@dataclass(frozen=True)
class Representation:
    """Assignment of invertible n x n matrices over F_p to named generators."""

    p: int
    n: int
    images: Mapping[str, Mat]
    _inv: Dict[str, Mat] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"representations are over F_p; got p = {self.p}")
        fixed = {}
        for g, m in self.images.items():
            m = ffmat.as_mat(m, self.p)
            if len(m) != self.n:
                raise ValueError(f"image of {g} is not {self.n}x{self.n}")
            if not ffmat.det(m, self.p):
                raise ValueError(f"image of {g} is singular mod {self.p}")
            fixed[g] = m
        object.__setattr__(self, "images", dict(sorted(fixed.items())))

    def __hash__(self) -> int:
        return hash((self.p, self.n, tuple(self.images.items())))

    def generators(self) -> Tuple[str, ...]:
        return tuple(self.images)

    def matrix(self, g: str, e: int = 1) -> Mat:
        try:
            m = self.images[g]
        except KeyError:
            raise KeyError(f"representation has no image for generator {g!r}") from None
        if e == 1:
            return m
        if e == -1:
            inv = self._inv.get(g)
            if inv is None:
                inv = ffmat.inv(m, self.p)
                self._inv[g] = inv
            return inv
        return ffmat.power(m, e, self.p)

    def __call__(self, w: GroupWord) -> Mat:
        out = ffmat.identity(self.n)
        for g, e in w.syllables:
            out = ffmat.mul(out, self.matrix(g, e), self.p)
        return out

    def with_images(self, **updates: Mat) -> "Representation":
        imgs = dict(self.images)
        imgs.update(updates)
        return Representation(self.p, self.n, imgs)

    def restrict(self, gens: Iterable[str]) -> "Representation":
        return Representation(self.p, self.n, {g: self.images[g] for g in gens})

    def kills(self, w: GroupWord) -> bool:
        return ffmat.is_identity(self(w))

    def to_text(self) -> str:
        lines = [f"p = {self.p}", f"n = {self.n}"]
        for g, m in self.images.items():
            lines.append(f"{g} = {ffmat.to_text(m)}")
        return "\n".join(lines) + "\n"


def parse_representation(text: str) -> Representation:
    """Parse ``p = ..``, ``n = ..`` and ``gen = [[..],[..]]`` lines."""
    import ast

    fields: Dict[str, object] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad representation line {raw!r}")
        key, val = (x.strip() for x in line.split("=", 1))
        try:
            fields[key] = ast.literal_eval(val)
        except (ValueError, SyntaxError) as exc:
            raise ValueError(f"bad value in line {raw!r}") from exc
    try:
        p, n = int(fields.pop("p")), int(fields.pop("n"))
    except KeyError as exc:
        raise ValueError(f"representation is missing field {exc.args[0]!r}") from None
    return Representation(p, n, {g: m for g, m in fields.items()})


def _mono_block(m: Mat, k: Tuple[int, int, int], c: int, acc: List[List[Dict]], p: int) -> None:
    for a, row in enumerate(m):
        for b, x in enumerate(row):
            if x:
                d = acc[a][b]
                d[k] = (d.get(k, 0) + c * x) % p


def _block_to_matrix(acc: List[List[Dict]], p: int) -> PolyMatrix:
    return PolyMatrix([[LaurentPoly(d, p) for d in row] for row in acc], p)


def twisted_eval(e: GroupRingElem, rho: Representation) -> PolyMatrix:
    """Omega(e) = sum of m_i rho(w_i) alpha(w_i), an n x n matrix over F_p[s,t,q]."""
    n, p = rho.n, rho.p
    acc = [[{} for _ in range(n)] for _ in range(n)]
    for w, c in e.coeffs.items():
        _mono_block(rho(w), abelian_exponent(w), c, acc, p)
    return _block_to_matrix(acc, p)


def twisted_fox_row(w: GroupWord, gens: Sequence[str], rho: Representation) -> List[PolyMatrix]:
    """Omega of every derivative of one word, in a single pass."""
    n, p = rho.n, rho.p
    index = {g: i for i, g in enumerate(gens)}
    acc = [[[{} for _ in range(n)] for _ in range(n)] for _ in gens]
    cur = [0, 0, 0]
    mat = ffmat.identity(n)
    for g, step in w.letters():
        v = _abelian_key(g)
        j = index.get(g)
        if step < 0:
            cur[v] -= 1
            mat = ffmat.mul(mat, rho.matrix(g, -1), p)
        if j is not None:
            _mono_block(mat, (cur[0], cur[1], cur[2]), step, acc[j], p)
        if step > 0:
            cur[v] += 1
            mat = ffmat.mul(mat, rho.matrix(g, 1), p)
    return [_block_to_matrix(a, p) for a in acc]
