"""
Finite presentations of virtual knot groups and their Alexander matrices.

A presentation has meridian generators, the two distinguished generators
``s`` and ``q``, and relators.  The commutator ``[s,q] = s q s^-1 q^-1`` is
appended once when ``include_sq_commutator`` is set.

Two Jacobians are built from the Fox calculus under the abelian map:

``A``  rows are the non-commutator relators, columns the meridians;
``M``  rows are all relators, columns all generators including s and q.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from .errors import InputError, InvariantViolation
from .groupword import (
    RESERVED,
    GroupWord,
    Representation,
    abelian_exponent,
    abelian_fox_row,
    parse_word,
    twisted_fox_row,
)
from .laurent import LaurentPoly, PolyMatrix, gcd_many, unique_up_to_units

SQ_COMMUTATOR = GroupWord((("s", 1), ("q", 1), ("s", -1), ("q", -1)))


@dataclass(frozen=True)
class Presentation:
    meridians: Tuple[str, ...]
    relators: Tuple[GroupWord, ...]
    include_sq_commutator: bool = True
    reserved: Tuple[str, ...] = RESERVED
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "meridians", tuple(self.meridians))
        object.__setattr__(self, "relators", tuple(self.relators))
        object.__setattr__(self, "reserved", tuple(self.reserved))
        if len(set(self.meridians)) != len(self.meridians):
            raise InputError("duplicate meridian generator")
        for g in self.meridians:
            if g in RESERVED:
                raise InputError(f"{g!r} is reserved and cannot be a meridian")
        known = set(self.meridians) | set(self.reserved)
        for r in self.relators:
            for g in r.generators():
                if g not in known:
                    raise InputError(f"relator {r} uses unknown generator {g!r}")

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.meridians + self.reserved

    @property
    def has_commutator_row(self) -> bool:
        return self.include_sq_commutator and set(RESERVED) <= set(self.reserved)

    @property
    def all_relators(self) -> Tuple[GroupWord, ...]:
        if self.has_commutator_row:
            return self.relators + (SQ_COMMUTATOR,)
        return self.relators

    @property
    def is_square(self) -> bool:
        """Relators (without [s,q]) match meridians one to one."""
        return len(self.relators) == len(self.meridians)

    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"# {self.name}")
        lines.append("gens " + " ".join(self.meridians))
        for r in self.relators:
            lines.append("rel " + r.to_text())
        if not self.include_sq_commutator:
            lines.append("no-sq-commutator")
        return "\n".join(lines) + "\n"


def parse_presentation(text: str, name: str = "") -> Presentation:
    """Read ``gens``, ``rel`` and ``no-sq-commutator`` lines.

    A relator may also be written as an equation ``x = w``, which stands for
    the relator ``x^-1 w``.
    """
    meridians: Optional[List[str]] = None
    relators: List[GroupWord] = []
    include = True
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "gens":
                if meridians is not None:
                    raise InputError("gens given twice")
                meridians = rest.split()
            elif head == "rel":
                if "=" in rest:
                    lhs, rhs = rest.split("=", 1)
                    relators.append(parse_word(lhs).inverse() * parse_word(rhs))
                else:
                    relators.append(parse_word(rest))
            elif head == "no-sq-commutator":
                include = False
            else:
                raise InputError(f"unknown directive {head!r}")
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    if meridians is None:
        raise InputError("presentation has no gens line")
    return Presentation(tuple(meridians), tuple(relators), include, name=name)


def _check_commutator_row(row: Sequence[LaurentPoly], gens: Sequence[str], p: int) -> None:
    s = LaurentPoly.var("s", p)
    q = LaurentPoly.var("q", p)
    zero = LaurentPoly.zero(p)
    want = [1 - q if g == "s" else s - 1 if g == "q" else zero for g in gens]
    if list(row) != want:
        raise InvariantViolation("[s,q] row of the Alexander matrix is not (0,...,0,1-q,s-1)")


def alexander_matrices(pres: Presentation, p: int = 0) -> Tuple[PolyMatrix, PolyMatrix]:
    gens = pres.generators
    rows = [abelian_fox_row(r, gens, p) for r in pres.all_relators]
    if pres.has_commutator_row:
        _check_commutator_row(rows[-1], gens, p)
    k = len(pres.meridians)
    M = PolyMatrix(rows, p, cols=len(gens))
    A = PolyMatrix([row[:k] for row in rows[: len(pres.relators)]], p, cols=k)
    return A, M


def twisted_alexander_matrices(pres: Presentation, rho: Representation) -> Tuple[PolyMatrix, PolyMatrix]:
    """Block versions of A and M with every entry replaced by its n x n image."""
    gens = pres.generators
    blocks = [twisted_fox_row(r, gens, rho) for r in pres.all_relators]
    n, p = rho.n, rho.p
    k = len(pres.meridians)
    M = PolyMatrix.from_blocks(blocks, p) if blocks else PolyMatrix.zeros(0, n * len(gens), p)
    A_blocks = [row[:k] for row in blocks[: len(pres.relators)]]
    A = PolyMatrix.from_blocks(A_blocks, p) if A_blocks and k else PolyMatrix.zeros(0, 0, p)
    return A, M


@dataclass(frozen=True)
class IdealReport:
    level: int
    minor_size: int
    generators: Tuple[LaurentPoly, ...]
    delta: LaurentPoly


def ideal_from_matrix(M: PolyMatrix, size: int, level: int) -> IdealReport:
    p = M.p
    if size <= 0:
        return IdealReport(level, size, (), LaurentPoly.one(p))
    if size > M.rows or size > M.cols:
        return IdealReport(level, size, (), LaurentPoly.zero(p))
    gens = tuple(unique_up_to_units(d for _, _, d in M.minors(size)))
    return IdealReport(level, size, gens, gcd_many(gens, p))


def delta_ell(pres: Presentation, ell: int, p: int = 0) -> IdealReport:
    """gcd of the (g-1-ell)-minors of M, g the number of generators with s, q."""
    if ell < 0:
        raise InputError("level must be nonnegative")
    _, M = alexander_matrices(pres, p)
    return ideal_from_matrix(M, len(pres.generators) - 1 - ell, ell)


# quotients


def quotient_specialize(pres: Presentation, which: str) -> Presentation:
    """Welded (q = s), extended (q = 1) or quandle (s = 1) quotient."""
    if which == "welded":
        images, keep = {"q": GroupWord.gen("s")}, ("s",)
    elif which == "extended":
        images, keep = {"q": GroupWord.identity()}, ("s",)
    elif which == "quandle":
        images, keep = {"s": GroupWord.identity()}, ("q",)
    else:
        raise InputError(f"unknown quotient {which!r}")
    rels = [r.substitute(images) for r in pres.relators]
    rels = tuple(r for r in rels if r)
    name = f"{pres.name} ({which})" if pres.name else which
    return Presentation(pres.meridians, rels, False, keep, name)


def specialization_images(which: str, p: int = 0):
    s = LaurentPoly.var("s", p)
    if which == "welded":
        return {"q": s}
    if which == "extended":
        return {"q": LaurentPoly.one(p)}
    if which == "quandle":
        return {"s": LaurentPoly.one(p)}
    raise InputError(f"unknown quotient {which!r}")


# Tietze moves


def tietze_invert(pres: Presentation, i: int) -> Presentation:
    rels = list(pres.relators)
    rels[i] = rels[i].inverse()
    return replace(pres, relators=tuple(rels))


def tietze_conjugate(pres: Presentation, i: int, w: GroupWord) -> Presentation:
    rels = list(pres.relators)
    rels[i] = w * rels[i] * w.inverse()
    return replace(pres, relators=tuple(rels))


def tietze_multiply(pres: Presentation, i: int, j: int) -> Presentation:
    """Replace r_i by r_i r_j; j may point at the [s,q] relator."""
    if i == j:
        raise InputError("cannot multiply a relator by itself")
    rels = list(pres.relators)
    rels[i] = rels[i] * pres.all_relators[j]
    return replace(pres, relators=tuple(rels))


def tietze_add_generator(pres: Presentation, name: str, w: GroupWord) -> Presentation:
    """Add the meridian ``name`` and the relator ``name w^-1``.

    The abelian image of ``w`` must be t so that the abelian map extends.
    """
    if name in pres.generators:
        raise InputError(f"generator {name!r} already present")
    if name in w.generators():
        raise InputError("new generator may not occur in its defining word")
    if abelian_exponent(w) != (0, 1, 0):
        raise InputError("defining word of a new meridian must abelianize to t")
    rel = GroupWord.gen(name) * w.inverse()
    return replace(pres, meridians=pres.meridians + (name,), relators=pres.relators + (rel,))
