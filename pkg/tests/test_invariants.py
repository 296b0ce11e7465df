import random

import pytest

from valex import corpus
from valex import invariants as inv
from valex.braid import VirtualBraid, parse_braid
from valex.errors import InputError
from valex.groupword import Representation
from valex.laurent import LaurentPoly, UnitGroup, divides, equal_up_to_units, parse_poly
from valex.repsearch import compatible_reps

FULL = UnitGroup.full()
TREFOIL = parse_braid("k=2 b1 b1 v1")
B442 = parse_braid("k=3 b2 v2 B1 B2 v2 b2 v1 v2")


def test_unknot_and_classical_give_zero():
    assert inv.h_poly(VirtualBraid(1)).value.is_zero()
    assert inv.h_poly(parse_braid("k=2 b1 b1 b1")).value.is_zero()


def test_trefoil_h_and_g():
    h = inv.h_poly(TREFOIL)
    assert h.matches(parse_poly("(s-q)*(1-s*t)*(1-q*t)"))
    assert h.pipeline == "braid"
    g = inv.generalized_g(h)
    assert equal_up_to_units(g, parse_poly("(s-1)*(1-s*t)*(1-t)"), FULL)
    assert equal_up_to_units(inv.g_to_h(g), h.value, FULL)


def test_text_and_json_forms():
    r = inv.h_poly(TREFOIL)
    lines = r.to_text().splitlines()
    assert lines[0].startswith("# H  units=FullMonomial  pipeline=braid")
    assert lines[1] == "(canonical) s*t^2*q^2 - t*q^2 - s^2*t^2*q + q + s^2*t - s"
    assert r.to_json()["value"] == r.value.to_text()


def test_conjugate_has_same_normalized_value():
    rng = random.Random(3)
    for _ in range(20):
        gamma = inv.random_braid(rng, 3, rng.randint(1, 4))
        assert inv.normalized_h(gamma * B442 * gamma.inverse()).value == inv.normalized_h(B442).value


def test_trivial_one_dimensional_twist_is_untwisted():
    rho = Representation(3, 1, {"x1": [[1]], "x2": [[1]], "x3": [[1]], "s": [[1]], "q": [[1]]})
    assert inv.normalized_twisted_raw(B442, rho) == inv.normalized_raw(B442, 3)
    with pytest.raises(ValueError):
        Representation(0, 1, {"s": [[1]]})


def test_bounds():
    rep = inv.crossing_bounds(inv.normalized_h(B442))
    assert (rep.deg_q, rep.best) == (3, 3)
    assert rep.to_text().splitlines()[-1] == "v(K) >= 3"
    zero = inv.crossing_bounds(inv.h_poly(VirtualBraid(1)))
    assert not zero.informative and zero.best is None
    assert zero.to_text() == "no bound (polynomial is 0)\n"


def test_bound_from_trefoil_h():
    assert inv.crossing_bounds(inv.h_poly(TREFOIL)).best == 1


def test_invalid_representation_names_relator():
    pres = corpus.lookup("3.4").presentations[0]
    bad = Representation(2, 2, {"a": [[1, 1], [0, 1]], "s": [[0, 1], [1, 1]], "q": [[1, 0], [0, 1]]})
    with pytest.raises(InputError, match="relator"):
        inv.twisted_h(pres, bad)


def test_incompatible_braid_rep_names_strands():
    rho = Representation(2, 2, {"x1": [[1, 1], [0, 1]], "x2": [[1, 0], [1, 1]], "s": [[1, 0], [0, 1]], "q": [[1, 0], [0, 1]]})
    with pytest.raises(InputError, match="strand"):
        inv.twisted_h(TREFOIL, rho)


def test_wada_quotient_agrees_with_det_a():
    e = corpus.lookup("3.4")
    from valex.repsearch import extend_by_definitions

    for pres in e.presentations:
        rho = extend_by_definitions(pres, e.representation)
        raw, w = inv.twisted_presentation_h(pres, rho)
        assert equal_up_to_units(raw, w.quotient, UnitGroup.twisted(2))


def test_skein_report():
    rep = inv.skein_check(B442, 0)
    assert rep.holds and rep.to_text().endswith("identity holds\n")
    with pytest.raises(InputError, match="virtual"):
        inv.skein_check(B442, 1)
    with pytest.raises(InputError, match="out of range"):
        inv.skein_check(B442, 99)


def test_classicality_verdicts():
    assert inv.classicality_report(TREFOIL).verdict == "non-classical (H is nonzero)"
    e = corpus.lookup("4.99")
    assert inv.classicality_report(e.presentations[0]).verdict == "non-classical (Delta^1 is asymmetric)"
    assert inv.classicality_report(VirtualBraid(1)).verdict == "no obstruction found"


def test_support_law_and_divisibility_on_trefoil():
    h = inv.h_poly(TREFOIL).value
    assert inv.support_ok(h)
    assert inv.divisibility_ok(h, True)
    assert not inv.support_ok(parse_poly("s + t"))


def test_markov_script_is_deterministic():
    a = [c.to_text() for c in inv.markov_script(TREFOIL, 8, 11)]
    b = [c.to_text() for c in inv.markov_script(TREFOIL, 8, 11)]
    assert a == b
    assert all(c.holds for c in inv.markov_script(TREFOIL, 8, 11))


def test_each_move_kind_untwisted():
    rng = random.Random(4)
    for move in inv.MOVES:
        chk, _ = inv.random_move(rng, B442, move=move)
        assert chk.holds, chk.to_text()


def test_each_move_kind_twisted():
    rng = random.Random(9)
    reps = compatible_reps(TREFOIL)
    rho = next(r for r in reps if r.matrix("s") != r.matrix("q"))
    for move in inv.MOVES:
        chk, rho2 = inv.random_move(rng, TREFOIL, rho, move=move)
        assert chk.twisted and chk.holds, chk.to_text()


def test_open_question_observation(capsys):
    # (s - q)^n | H^rho when rho(s) = rho(q); reported, not asserted
    rng = random.Random(1)
    s, q = LaurentPoly.var("s", 2), LaurentPoly.var("q", 2)
    held = total = 0
    for _ in range(20):
        beta = inv.random_braid(rng, 2, rng.randint(2, 6))
        reps = [r for r in compatible_reps(beta) if r.matrix("s") == r.matrix("q")]
        if not reps:
            continue
        rho = rng.choice(reps)
        h = inv.twisted_raw(beta, rho)
        total += 1
        held += h.is_zero() or divides((s - q) ** 2, h)[0]
    with capsys.disabled():
        print(f"\n(s - q)^2 | H^rho with rho(s) = rho(q): {held}/{total}")
