import pytest

from valex import corpus, ffmat
from valex import invariants as inv
from valex.braid import parse_braid
from valex.errors import InputError
from valex.groupword import Representation
from valex.presentation import parse_presentation
from valex.repsearch import (
    MatrixGroup,
    check_braid_compatible,
    compatible_reps,
    conjugate_rep,
    enumerate_reps,
)

I2 = ((1, 0), (0, 1))
PRES34 = corpus.lookup("3.4").presentations[0]


def test_group_tables():
    G = MatrixGroup.named("SL", 2, 2)
    assert len(G) == 6
    assert len(MatrixGroup.named("GL", 2, 3)) == 48
    assert len(MatrixGroup.named("SL", 2, 3)) == 24
    for a in range(len(G)):
        assert G.mul[a][G.inv[a]] == G.one
    with pytest.raises(InputError):
        MatrixGroup.named("PSL", 2, 2)


def test_free_group_count():
    pres = parse_presentation("gens a b\n")
    reps = enumerate_reps(pres, fixed={"s": I2, "q": I2})
    assert len(reps) == 36


def test_trivial_rep_always_found():
    reps = enumerate_reps(PRES34)
    triv = [r for r in reps if all(m == I2 for m in r.images.values())]
    assert len(triv) == 1


def test_stated_rep_is_found():
    want = corpus.lookup("3.4").representation
    reps = enumerate_reps(PRES34)
    assert want in reps
    assert len(reps) == 90


def test_every_result_kills_every_relator():
    # re-multiplied here with ffmat, not the search tables
    for r in enumerate_reps(PRES34):
        for rel in PRES34.all_relators:
            m = ffmat.identity(2)
            for g, e in rel.syllables:
                m = ffmat.mul(m, ffmat.power(r.images[g], e, 2), 2)
            assert m == I2


def test_sorted_and_deterministic():
    a = enumerate_reps(PRES34)
    assert [r.to_text() for r in a] == [r.to_text() for r in enumerate_reps(PRES34)]


def test_cap_is_enforced():
    with pytest.raises(InputError, match="cap"):
        enumerate_reps(PRES34, cap=100)


def test_dedupe_keeps_one_per_class():
    full = enumerate_reps(PRES34)
    classes = enumerate_reps(PRES34, dedupe=True)
    assert 0 < len(classes) < len(full)


def test_conjugate_reps_give_same_twisted_value():
    rho = corpus.lookup("3.4").representation
    base = inv.twisted_h(PRES34, rho).value
    for g in ffmat.general_linear(2, 2):
        assert inv.twisted_h(PRES34, conjugate_rep(rho, g)).value == base


def test_braid_compatibility_verdicts():
    beta = parse_braid("k=2 b1 b1 v1")
    reps = compatible_reps(beta)
    assert reps and all(check_braid_compatible(beta, r).compatible for r in reps)
    bad = Representation(2, 2, {"x1": [[1, 1], [0, 1]], "x2": [[1, 0], [1, 1]], "s": I2, "q": I2})
    verdict = check_braid_compatible(beta, bad)
    assert not verdict.compatible and verdict.failing
    assert verdict.to_text().startswith("not compatible; failing strands")
    partial = Representation(2, 2, {"x1": I2})
    assert check_braid_compatible(beta, partial).missing == ("x2", "s", "q")


def test_compatible_reps_match_closure_relators():
    beta = parse_braid("k=2 b1 b1 v1")
    from valex.braid import closure_presentation

    fixed_braid = {r.to_text() for r in compatible_reps(beta)}
    fixed_pres = {r.to_text() for r in enumerate_reps(closure_presentation(beta))}
    assert fixed_braid == fixed_pres
