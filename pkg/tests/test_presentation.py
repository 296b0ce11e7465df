import pytest

from valex import corpus
from valex.errors import InputError
from valex.groupword import parse_word
from valex.laurent import LaurentPoly, UnitGroup, equal_up_to_units, parse_poly
from valex.presentation import (
    Presentation,
    alexander_matrices,
    delta_ell,
    parse_presentation,
    quotient_specialize,
    tietze_add_generator,
    tietze_conjugate,
    tietze_invert,
    tietze_multiply,
)

FULL = UnitGroup.full()
TREFOIL_H = parse_poly("(s-q)*(1-s*t)*(1-q*t)")
s, t, q = (LaurentPoly.var(v) for v in "stq")


def trefoil(i=0):
    return corpus.lookup("2.1").presentations[i]


def test_parse_equation_form_and_comments():
    p = parse_presentation("# c\ngens a b\nrel a = b\nrel a b a^-1 b^-1  # r\n")
    assert p.meridians == ("a", "b")
    assert p.relators[0] == parse_word("a^-1 b")
    assert p.all_relators[-1] == parse_word("s q s^-1 q^-1")
    assert parse_presentation(p.to_text()) == p


@pytest.mark.parametrize(
    "text",
    ["rel a\n", "gens a a\n", "gens s\n", "gens a\nrel b\n", "gens a\nfoo\n", "gens a\ngens b\n"],
)
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse_presentation(text)


def test_commutator_row_and_shapes():
    A, M = alexander_matrices(trefoil())
    assert A.shape == (6, 6)
    assert M.shape == (7, 8)
    assert M.row(6)[-2:] == (1 - q, s - 1)


def test_three_trefoil_presentations_agree():
    for pres in corpus.lookup("2.1").presentations:
        assert equal_up_to_units(delta_ell(pres, 0).delta, TREFOIL_H, FULL)


def test_delta_edge_levels():
    pres = Presentation(("a",), ())
    assert delta_ell(pres, 0).delta.is_zero()
    assert delta_ell(pres, 1).delta == LaurentPoly.one()
    assert delta_ell(trefoil(), 40).delta == LaurentPoly.one()
    with pytest.raises(InputError):
        delta_ell(pres, -1)


def _tietze_variants(pres):
    w = parse_word("s a q^-1")
    yield tietze_invert(pres, 0)
    yield tietze_conjugate(pres, 1, w)
    yield tietze_multiply(pres, 0, 1)
    yield tietze_multiply(pres, 1, len(pres.relators))
    yield tietze_add_generator(pres, "z", parse_word("s a s^-1"))


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_tietze_moves_preserve_ideals(ell):
    base = trefoil(1)
    want = delta_ell(base, ell).delta
    for var in _tietze_variants(base):
        assert equal_up_to_units(delta_ell(var, ell).delta, want, FULL)


def test_add_generator_needs_meridian_image():
    with pytest.raises(InputError):
        tietze_add_generator(trefoil(1), "z", parse_word("s"))
    with pytest.raises(InputError):
        tietze_multiply(trefoil(1), 0, 0)


def test_quotients_specialize_polynomial():
    pres = trefoil(1)
    for kind in ("welded", "extended", "quandle"):
        quo = quotient_specialize(pres, kind)
        assert not quo.has_commutator_row
        assert len(quo.generators) == len(pres.meridians) + 1
        # the virtual trefoil is welded trivial, so its welded quotient has Delta0 = 0
        if kind == "welded":
            assert delta_ell(quo, 0).delta.is_zero()
    with pytest.raises(InputError):
        quotient_specialize(pres, "none")
