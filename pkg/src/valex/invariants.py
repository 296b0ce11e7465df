"""
Invariant pipelines on presentations and virtual braids.

Every polynomial invariant is returned as an ``InvariantResult`` holding the
canonical representative for its unit group next to the raw value the
pipeline produced.  Braid inputs are always cross-checked against the
presentation of their closure.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

from . import ffmat
from .braid import (
    VirtualBraid,
    closure_presentation,
    conjugate,
    exchange_pair,
    exchange_representation,
    extend_for_stabilization,
    is_compatible,
    push_forward,
    raw_value,
    stabilization_factor,
    stabilization_factor_twisted,
    stabilize,
    strand,
    twisted_burau,
)
from .errors import InputError, InvariantViolation
from .groupword import GroupWord, Representation, abelian_exponent
from .laurent import (
    LaurentPoly,
    PolyMatrix,
    UnitGroup,
    divides,
    equal_up_to_units,
    exact_quotient,
    gcd_many,
    normalize_canonical,
)
from .presentation import (
    IdealReport,
    Presentation,
    alexander_matrices,
    delta_ell,
    twisted_alexander_matrices,
)

Source = Union[Presentation, VirtualBraid]

FULL = UnitGroup.full()
ST = UnitGroup.st()


def fingerprint(obj) -> str:
    text = obj.to_text() if hasattr(obj, "to_text") else str(obj)
    return hashlib.sha256(text.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class InvariantResult:
    label: str
    value: LaurentPoly
    raw: LaurentPoly
    unit_group: UnitGroup
    pipeline: str
    fingerprint: str

    def matches(self, other: LaurentPoly) -> bool:
        return equal_up_to_units(self.value, other, self.unit_group)

    def to_text(self) -> str:
        head = f"# {self.label}  units={self.unit_group}  pipeline={self.pipeline}  input={self.fingerprint}"
        return f"{head}\n(canonical) {self.value.to_text()}\n"

    def to_json(self) -> dict:
        return {
            "invariant": self.label,
            "value": self.value.to_text(),
            "raw": self.raw.to_text(),
            "unit_group": str(self.unit_group),
            "pipeline": self.pipeline,
            "input": self.fingerprint,
        }


def _result(label: str, raw: LaurentPoly, group: UnitGroup, pipeline: str, src) -> InvariantResult:
    return InvariantResult(label, normalize_canonical(raw, group), raw, group, pipeline, fingerprint(src))


def _check_agree(a: LaurentPoly, b: LaurentPoly, group: UnitGroup, what: str) -> None:
    if not equal_up_to_units(a, b, group):
        raise InvariantViolation(f"{what}: {a} and {b} differ beyond {group} units")


# untwisted


def presentation_h(pres: Presentation, p: int = 0) -> LaurentPoly:
    """det A for a square presentation with the [s,q] row, else the gcd of minors."""
    if pres.is_square and pres.has_commutator_row:
        A, _ = alexander_matrices(pres, p)
        return A.det() if A.rows else LaurentPoly.one(p)
    return delta_ell(pres, 0, p).delta


def h_poly(src: Source, p: int = 0, check: bool = True) -> InvariantResult:
    if isinstance(src, VirtualBraid):
        raw = raw_value(src, p)
        if check:
            _check_agree(raw, presentation_h(closure_presentation(src), p), FULL, "Burau and closure H")
        return _result("H", raw, FULL, "braid", src)
    return _result("H", presentation_h(src, p), FULL, "presentation", src)


def normalized_raw(beta: VirtualBraid, p: int = 0) -> LaurentPoly:
    """(-1)^(wr + v) det(Psi(beta) - I), with no canonicalization."""
    st = beta.stats()
    raw = raw_value(beta, p)
    return -raw if (st.writhe + st.virtual) % 2 else raw


def normalized_h(beta: VirtualBraid, p: int = 0) -> InvariantResult:
    if not isinstance(beta, VirtualBraid):
        raise InputError("the normalized invariant needs a braid")
    return _result("Hhat", normalized_raw(beta, p), ST, "braid", beta)


def ideals(src: Source, ell: int, p: int = 0) -> IdealReport:
    pres = closure_presentation(src) if isinstance(src, VirtualBraid) else src
    return delta_ell(pres, ell, p)


_Q_TO_ONE = {"q": 1}


def generalized_g(h: Union[InvariantResult, LaurentPoly]) -> LaurentPoly:
    """G(s, t) = H(s, t, 1)."""
    f = h.value if isinstance(h, InvariantResult) else h
    return f.substitute_monomial(_Q_TO_ONE)


def g_to_h(g: LaurentPoly) -> LaurentPoly:
    """H(s, t, q) = G(s q^-1, t q)."""
    p = g.p
    q = LaurentPoly.var("q", p)
    return g.substitute_monomial({"s": LaurentPoly.var("s", p) * q.inverse(), "t": LaurentPoly.var("t", p) * q})


def substitution_image(f: LaurentPoly) -> LaurentPoly:
    """f(s q^-1, t q, 1)."""
    return g_to_h(generalized_g(f))


def support_ok(f: LaurentPoly) -> bool:
    """Every monomial s^i t^j q^k has the same i + k - j."""
    return len({es + eq - et for (es, et, eq) in f.terms}) <= 1


# crossing number bounds


@dataclass(frozen=True)
class BoundReport:
    q_width: int
    deg_q: int
    deg_qinv: int
    twist_degree: int
    unnormalized: Optional[int]
    normalized: Optional[int]
    informative: bool

    @property
    def best(self) -> Optional[int]:
        vals = [v for v in (self.unnormalized, self.normalized) if v is not None]
        return max(vals) if vals else None

    def to_text(self) -> str:
        if not self.informative:
            return "no bound (polynomial is 0)\n"
        lines = [
            f"q-width {self.q_width}, deg_q {self.deg_q}, deg_q^-1 {self.deg_qinv}, n {self.twist_degree}",
            f"unnormalized bound: v(K) >= {self.unnormalized}",
        ]
        if self.normalized is not None:
            lines.append(f"normalized bound: v(K) >= {self.normalized}")
        lines.append(f"v(K) >= {self.best}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "q_width": self.q_width,
            "deg_q": self.deg_q,
            "deg_qinv": self.deg_qinv,
            "twist_degree": self.twist_degree,
            "unnormalized": self.unnormalized,
            "normalized": self.normalized,
            "informative": self.informative,
            "bound": self.best,
        }


def crossing_bounds(result: InvariantResult) -> BoundReport:
    """Lower bounds on the virtual crossing number.

    q-width <= 2 n v(K) for every result; for the normalized invariants the
    q-degree and q^-1-degree are each at most n v(K) as well.
    """
    f, g = result.value, result.unit_group
    n = g.n
    prof = f.q_profile()
    if f.is_zero():
        return BoundReport(0, 0, 0, n, None, None, False)
    un = -(-prof.width // (2 * n))
    nm = None
    if g.normalized:
        nm = max(0, -(-max(prof.deg_q, prof.deg_qinv) // n))
    return BoundReport(prof.width, prof.deg_q, prof.deg_qinv, n, un, nm, True)


# twisted


def _validate_rep(pres: Presentation, rho: Representation) -> None:
    missing = [g for g in pres.generators if g not in rho.images]
    if missing:
        raise InputError(f"representation has no image for {', '.join(missing)}")
    for r in pres.all_relators:
        if not rho.kills(r):
            raise InputError(f"invalid representation: relator {r} is not sent to the identity")
    if "s" in pres.generators and "q" in pres.generators:
        S, Q = rho.matrix("s"), rho.matrix("q")
        if ffmat.mul(S, Q, rho.p) != ffmat.mul(Q, S, rho.p):
            raise InputError("invalid representation: images of s and q do not commute")


def _validate_braid_rep(beta: VirtualBraid, rho: Representation) -> None:
    need = [strand(j) for j in range(1, beta.strands + 1)] + ["s", "q"]
    missing = [g for g in need if g not in rho.images]
    if missing:
        raise InputError(f"representation has no image for {', '.join(missing)}")
    S, Q = rho.matrix("s"), rho.matrix("q")
    if ffmat.mul(S, Q, rho.p) != ffmat.mul(Q, S, rho.p):
        raise InputError("invalid representation: images of s and q do not commute")
    bad = is_compatible(beta, rho)
    if bad:
        raise InputError(f"representation is not fixed by the braid on strand(s) {', '.join(map(str, bad))}")


def _omega_one_minus(g: str, rho: Representation) -> PolyMatrix:
    """Omega(1 - g) = I - rho(g) alpha(g)."""
    p, n = rho.p, rho.n
    es, et, eq = abelian_exponent(GroupWord.gen(g))
    mono = LaurentPoly.monomial(es, et, eq, 1, p)
    return PolyMatrix.identity(n, p) - PolyMatrix(rho.matrix(g), p).scale(mono)


@dataclass(frozen=True)
class WadaReport:
    column: str
    numerator: LaurentPoly
    denominator: LaurentPoly
    quotient: LaurentPoly


def wada_quotient(pres: Presentation, rho: Representation, column: Optional[str] = None) -> WadaReport:
    """det(M with block column j removed) / det Omega(1 - a_j).

    The numerator is the gcd of the maximal minors when that matrix is not
    square.  The first meridian with a nonzero denominator is used by default.
    """
    n, p = rho.n, rho.p
    gens = pres.generators
    if column is None:
        for g in pres.meridians:
            if _omega_one_minus(g, rho).det():
                column = g
                break
        else:
            raise InvariantViolation("every meridian has det Omega(1 - a) = 0")
    if column not in gens:
        raise InputError(f"unknown column generator {column!r}")
    den = _omega_one_minus(column, rho).det()
    if not den:
        raise InputError(f"det Omega(1 - {column}) vanishes")
    _, M = twisted_alexander_matrices(pres, rho)
    j = gens.index(column)
    cols = [c for c in range(M.cols) if not j * n <= c < (j + 1) * n]
    sub = M.submatrix(range(M.rows), cols)
    size = len(cols)
    if sub.rows < size:
        num = LaurentPoly.zero(p)
    elif sub.rows == size:
        num = sub.det()
    else:
        num = gcd_many((sub.submatrix(rows, range(size)).det() for rows in combinations(range(sub.rows), size)), p)
    if not num:
        return WadaReport(column, num, den, num)
    quot = exact_quotient(num, den)
    if quot is None:
        raise InvariantViolation(f"Wada numerator is not divisible by det Omega(1 - {column})")
    return WadaReport(column, num, den, quot)


def twisted_presentation_h(pres: Presentation, rho: Representation) -> Tuple[LaurentPoly, WadaReport]:
    _validate_rep(pres, rho)
    wada = wada_quotient(pres, rho)
    group = UnitGroup.twisted(rho.n)
    if pres.is_square and pres.has_commutator_row:
        A, _ = twisted_alexander_matrices(pres, rho)
        raw = A.det() if A.rows else LaurentPoly.one(rho.p)
        _check_agree(raw, wada.quotient, group, "det A and Wada quotient")
        return raw, wada
    return wada.quotient, wada


def twisted_raw(beta: VirtualBraid, rho: Representation) -> LaurentPoly:
    """det(Psi_rho(beta) - I)."""
    m = twisted_burau(beta, rho)
    return (m - PolyMatrix.identity(m.rows, rho.p)).det()


def twisted_h(src: Source, rho: Representation, check: bool = True) -> InvariantResult:
    group = UnitGroup.twisted(rho.n)
    if isinstance(src, VirtualBraid):
        _validate_braid_rep(src, rho)
        raw = twisted_raw(src, rho)
        if check:
            other, _ = twisted_presentation_h(closure_presentation(src), rho)
            _check_agree(raw, other, group, "twisted Burau and closure H")
        return _result("H^rho", raw, group, "braid", src)
    raw, _ = twisted_presentation_h(src, rho)
    return _result("H^rho", raw, group, "presentation", src)


def normalized_twisted_raw(beta: VirtualBraid, rho: Representation) -> LaurentPoly:
    st = beta.stats()
    raw = twisted_raw(beta, rho)
    return -raw if rho.n * (st.writhe + st.virtual) % 2 else raw


def normalized_twisted_h(beta: VirtualBraid, rho: Representation) -> InvariantResult:
    _validate_braid_rep(beta, rho)
    return _result("Hhat^rho", normalized_twisted_raw(beta, rho), UnitGroup.twisted_st(rho.n), "braid", beta)


# skein relation


@dataclass(frozen=True)
class SkeinReport:
    position: int
    plus: LaurentPoly
    minus: LaurentPoly
    zero: LaurentPoly
    lhs: LaurentPoly
    rhs: LaurentPoly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_text(self) -> str:
        verdict = "identity holds" if self.holds else "identity FAILS"
        return (
            f"position {self.position}\n"
            f"H+ = {self.plus}\nH- = {self.minus}\nH0 = {self.zero}\n"
            f"H+ - st*H- = {self.lhs}\n(st - 1)*H0 = {self.rhs}\n{verdict}\n"
        )

    def to_json(self) -> dict:
        return {
            "position": self.position,
            "plus": self.plus.to_text(),
            "minus": self.minus.to_text(),
            "zero": self.zero.to_text(),
            "holds": self.holds,
        }


def skein_triple(beta: VirtualBraid, position: int) -> Tuple[VirtualBraid, VirtualBraid, VirtualBraid]:
    """(beta+, beta-, beta0) at a classical letter; positions count from 0."""
    if not 0 <= position < len(beta.letters):
        raise InputError(f"position {position} out of range for a braid of length {len(beta.letters)}")
    kind, i = beta.letters[position]
    if kind == "v":
        raise InputError(f"letter v{i} at position {position} is virtual")
    head, tail = beta.letters[:position], beta.letters[position + 1 :]
    k = beta.strands
    return (
        VirtualBraid(k, head + (("b", i),) + tail),
        VirtualBraid(k, head + (("B", i),) + tail),
        VirtualBraid(k, head + tail),
    )


def skein_check(beta: VirtualBraid, position: int, p: int = 0) -> SkeinReport:
    """Hhat+ - st Hhat- = (st - 1) Hhat0 on the raw per-diagram values."""
    bp, bm, b0 = skein_triple(beta, position)
    hp, hm, h0 = (normalized_raw(b, p) for b in (bp, bm, b0))
    st = LaurentPoly.monomial(1, 1, 0, 1, p)
    return SkeinReport(position, hp, hm, h0, hp - st * hm, (st - 1) * h0)


# classicality


@dataclass(frozen=True)
class Check:
    name: str
    passed: Optional[bool]
    note: str = ""


@dataclass(frozen=True)
class ClassicalityReport:
    h: LaurentPoly
    delta1: Optional[LaurentPoly]
    checks: Tuple[Check, ...] = field(default=())
    verdict: str = ""

    def to_text(self) -> str:
        lines = [f"H = {self.h}"]
        if self.delta1 is not None:
            lines.append(f"Delta^1 = {self.delta1}")
        for c in self.checks:
            mark = "n/a" if c.passed is None else "pass" if c.passed else "FAIL"
            lines.append(f"{c.name}: {mark}" + (f" ({c.note})" if c.note else ""))
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "H": self.h.to_text(),
            "delta1": None if self.delta1 is None else self.delta1.to_text(),
            "checks": [{"name": c.name, "passed": c.passed, "note": c.note} for c in self.checks],
            "verdict": self.verdict,
        }


def is_symmetric(f: LaurentPoly) -> bool:
    """f(s, t) against f(s^-1, t^-1) up to full monomial units."""
    p = f.p
    mirror = f.substitute_monomial({"s": LaurentPoly.var("s", p).inverse(), "t": LaurentPoly.var("t", p).inverse()})
    return equal_up_to_units(f, mirror, FULL)


def classicality_report(src: Source, single_component: Optional[bool] = None) -> ClassicalityReport:
    """Collect the obstructions to being classical; never concludes classical."""
    pres = closure_presentation(src) if isinstance(src, VirtualBraid) else src
    if isinstance(src, VirtualBraid) and single_component is None:
        single_component = src.stats().components == 1
    h = h_poly(src).value
    s, t, q = (LaurentPoly.var(v) for v in "stq")
    checks: List[Check] = [Check("H = 0", h.is_zero(), "H nonzero obstructs classicality")]
    for name, d in (("(q - s) | H", q - s), ("(1 - tq) | H", 1 - t * q)):
        checks.append(Check(name, divides(d, h)[0]))
    if single_component:
        checks.append(Check("(1 - st) | H", divides(1 - s * t, h)[0]))
    else:
        checks.append(Check("(1 - st) | H", None, "component count unknown or > 1"))
    checks.append(Check("support i + k = j", support_ok(h)))
    d1 = generalized_g(delta_ell(pres, 1).delta)
    sym = is_symmetric(d1) if d1 else True
    checks.append(Check("Delta^1(s,t,1) symmetric", sym, "asymmetric obstructs classicality"))
    if not h.is_zero():
        verdict = "non-classical (H is nonzero)"
    elif not sym:
        verdict = "non-classical (Delta^1 is asymmetric)"
    else:
        verdict = "no obstruction found"
    return ClassicalityReport(h, d1, tuple(checks), verdict)


def divisibility_ok(h: LaurentPoly, single_component: bool) -> bool:
    s, t, q = (LaurentPoly.var(v, h.p) for v in "stq")
    ok = divides(q - s, h)[0] and divides(1 - t * q, h)[0]
    if single_component:
        ok = ok and divides(1 - s * t, h)[0]
    return ok



# Markov moves


@dataclass(frozen=True)
class MoveCheck:
    """One move with the raw values on both sides and the expected factor."""

    move: str
    before: VirtualBraid
    after: VirtualBraid
    factor: LaurentPoly
    value_before: LaurentPoly
    value_after: LaurentPoly
    twisted: bool = False

    @property
    def holds(self) -> bool:
        return self.value_after == self.factor * self.value_before

    def to_text(self) -> str:
        mark = "ok" if self.holds else "FAIL"
        return f"{mark}  {self.move}: {self.before} -> {self.after}  factor {self.factor}"


def _value(beta: VirtualBraid, rho: Optional[Representation], p: int) -> LaurentPoly:
    return raw_value(beta, p) if rho is None else twisted_raw(beta, rho)


def check_conjugation(
    beta: VirtualBraid, gamma: VirtualBraid, rho: Optional[Representation] = None, p: int = 0
) -> Tuple[MoveCheck, Optional[Representation]]:
    """gamma beta gamma^-1; a twist rho for beta becomes gamma_* rho."""
    after = conjugate(beta, gamma)
    rho2 = None if rho is None else push_forward(gamma, rho)
    pp = p if rho is None else rho.p
    chk = MoveCheck(
        f"conjugate by {' '.join(f'{k}{i}' for k, i in gamma.letters)}",
        beta, after, LaurentPoly.one(pp), _value(beta, rho, p), _value(after, rho2, p), rho is not None,
    )
    return chk, rho2


def check_stabilization(
    beta: VirtualBraid, kind: str, rho: Optional[Representation] = None, p: int = 0
) -> Tuple[MoveCheck, Optional[Representation]]:
    after = stabilize(beta, kind)
    if rho is None:
        factor = stabilization_factor(kind, p)
        rho2 = None
    else:
        factor = stabilization_factor_twisted(beta, rho, kind)
        rho2 = extend_for_stabilization(beta, rho, kind)
    chk = MoveCheck(f"stabilize {kind}", beta, after, factor, _value(beta, rho, p), _value(after, rho2, p), rho is not None)
    return chk, rho2


def check_exchange(
    alpha: VirtualBraid, beta: VirtualBraid, side: str, rho: Optional[Representation] = None, p: int = 0
) -> Tuple[MoveCheck, Optional[Representation]]:
    """Sigma side against tau side; rho, if given, must fix the sigma side."""
    left, right = exchange_pair(alpha, beta, side)
    rho2 = None if rho is None else exchange_representation(rho, alpha.strands, side)
    pp = p if rho is None else rho.p
    chk = MoveCheck(f"exchange {side}", left, right, LaurentPoly.one(pp), _value(left, rho, p), _value(right, rho2, p), rho is not None)
    return chk, rho2


def random_braid(rng, strands: int, length: int, indices: Optional[Sequence[int]] = None) -> VirtualBraid:
    idx = list(indices) if indices is not None else list(range(1, strands))
    if not idx:
        return VirtualBraid(strands)
    return VirtualBraid(strands, tuple((rng.choice("bBv"), rng.choice(idx)) for _ in range(length)))


MOVES = ("conjugate", "virtual", "positive", "negative", "exchange-right", "exchange-left")


def random_move(
    rng,
    beta: VirtualBraid,
    rho: Optional[Representation] = None,
    max_strands: int = 5,
    move: Optional[str] = None,
) -> Tuple[MoveCheck, Optional[Representation]]:
    """Apply one seeded random move to beta and check its factor law.

    Twisted exchange moves need a representation fixing the sigma side, so a
    fresh one is drawn from all compatible representations into SL_2(F_2).
    """
    k = beta.strands
    if move is None:
        choices = MOVES if k < max_strands else MOVES[:1]
        move = rng.choice(choices)
    if move == "conjugate":
        return check_conjugation(beta, random_braid(rng, k, rng.randint(1, 3)), rho)
    if move in ("virtual", "positive", "negative"):
        return check_stabilization(beta, move, rho)
    side = move.split("-", 1)[1]
    k1 = k + 1
    if side == "right":
        alpha, avoid = beta.with_strands(k1), k
    else:
        alpha, avoid = beta.shifted(1), 1
    others = [i for i in range(1, k1) if i != avoid]
    gamma = random_braid(rng, k1, rng.randint(0, 3), others)
    if rho is None:
        return check_exchange(alpha, gamma, side)
    from .repsearch import compatible_reps

    left, _ = exchange_pair(alpha, gamma, side)
    sq = [(rho.matrix("s"), rho.matrix("q"))]
    reps = compatible_reps(left, "SL", rho.n, rho.p, s_q=sq) if rho.n == 2 and rho.p == 2 else []
    if not reps:
        return check_conjugation(beta, random_braid(rng, k, 1), rho)
    return check_exchange(alpha, gamma, side, rng.choice(reps))


def markov_script(
    beta: VirtualBraid, moves: int, seed: int, rho: Optional[Representation] = None, max_strands: int = 5
) -> List[MoveCheck]:
    """A seeded sequence of moves, each applied to the result of the last."""
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(moves):
        chk, rho = random_move(rng, beta, rho, max_strands)
        out.append(chk)
        beta = chk.after
    return out
