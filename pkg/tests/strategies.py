"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from valex.braid import VirtualBraid
from valex.groupword import GroupWord
from valex.laurent import LaurentPoly

exps = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))


def polys(p=0, max_terms=4):
    coeff = st.integers(-3, 3) if p == 0 else st.integers(0, p - 1)
    return st.dictionaries(exps, coeff, max_size=max_terms).map(lambda d: LaurentPoly(d, p))


def nonzero_polys(p=0, max_terms=4):
    return polys(p, max_terms).filter(lambda f: not f.is_zero())


def words(gens=("a", "b", "s", "q"), max_len=6):
    letter = st.tuples(st.sampled_from(gens), st.sampled_from((1, -1)))
    return st.lists(letter, max_size=max_len).map(GroupWord)


@st.composite
def braids(draw, max_strands=4, max_len=8, min_strands=2):
    k = draw(st.integers(min_strands, max_strands))
    letters = draw(st.lists(st.tuples(st.sampled_from("bBv"), st.integers(1, k - 1)), max_size=max_len))
    return VirtualBraid(k, tuple(letters))
