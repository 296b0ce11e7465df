import json


from valex import corpus
from valex.cli import main

B442 = "k=3 b2 v2 B1 B2 v2 b2 v1 v2"


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_alex_on_presentation(capsys, tmp_path):
    f = tmp_path / "trefoil.pres"
    f.write_text(corpus.read_text("2.1-3gen.pres"))
    rc, out, _ = run(capsys, "alex", "--pres", str(f))
    assert rc == 0
    assert "(canonical) s*t^2*q^2 - t*q^2 - s^2*t^2*q + q + s^2*t - s" in out


def test_bounds_normalized(capsys):
    rc, out, _ = run(capsys, "bounds", "--braid", B442, "--normalized")
    assert rc == 0 and out.splitlines()[-1] == "v(K) >= 3"


def test_skein(capsys):
    rc, out, _ = run(capsys, "skein", "--corpus", "4.42", "--pos", "1")
    assert rc == 0 and "identity holds" in out and "H0 = " in out
    rc, out, _ = run(capsys, "skein", "--corpus", "4.45")
    assert rc == 0 and "FAILS" not in out


def test_output_is_deterministic(capsys):
    for argv in (["alex", "--corpus", "3.4"], ["markov-fuzz", "--braid", B442, "--moves", "6", "--seed", "7"]):
        first = run(capsys, *argv)
        assert first == run(capsys, *argv)
        assert first[0] == 0


def test_input_errors_exit_2(capsys):
    rc, _, err = run(capsys, "alex", "--braid", "k=2 b5")
    assert rc == 2 and "error:" in err
    rc, _, err = run(capsys, "alex", "--pres", "/no/such/file")
    assert rc == 2
    rc, _, err = run(capsys, "skein", "--braid", B442, "--pos", "2")
    assert rc == 2 and "virtual" in err
    rc, _, err = run(capsys, "table", "nope")
    assert rc == 2


def test_bad_rep_names_relator(capsys, tmp_path):
    f = tmp_path / "bad.rep"
    f.write_text("p = 2\nn = 2\na = [[1,1],[0,1]]\ns = [[0,1],[1,1]]\nq = [[1,0],[0,1]]\n")
    rc, _, err = run(capsys, "twisted", "--corpus", "3.4", "--rep", str(f))
    assert rc == 2 and "relator" in err


def test_twisted_prints_wada_line(capsys):
    rc, out, _ = run(capsys, "twisted", "--corpus", "4.71")
    assert rc == 0 and "Wada quotient" in out


def test_rep_search(capsys, monkeypatch):
    rc, out, _ = run(capsys, "rep-search", "--corpus", "3.4", "--json")
    assert rc == 0 and json.loads(out)["count"] == 90
    monkeypatch.setenv("VALEX_REP_CAP", "10")
    rc, _, err = run(capsys, "rep-search", "--corpus", "3.4")
    assert rc == 2 and "cap" in err


def test_quotient_and_ideals(capsys):
    rc, out, _ = run(capsys, "quotient", "--corpus", "2.1", "--kind", "welded")
    assert rc == 0 and "Delta^0" in out
    rc, out, _ = run(capsys, "ideals", "--corpus", "4.99", "--level", "1")
    assert rc == 0 and out.startswith("Delta^1 = ")


def test_json_schema(capsys):
    rc, out, _ = run(capsys, "bounds", "--corpus", "4.42", "--normalized", "--json")
    data = json.loads(out)
    assert rc == 0 and data["bounds"]["bound"] == 3
    assert set(data["result"]) == {"invariant", "value", "raw", "unit_group", "pipeline", "input"}


def test_table(capsys):
    rc, out, _ = run(capsys, "table")
    assert rc == 0 and out.splitlines()[-1].endswith("checks passed")


def test_markov_fuzz_reports_broken_law(capsys, monkeypatch):
    from valex import invariants
    from valex.laurent import LaurentPoly

    monkeypatch.setattr(invariants, "stabilization_factor", lambda kind, p=0: LaurentPoly.constant(5))
    rc, out, _ = run(capsys, "markov-fuzz", "--braid", B442, "--moves", "10", "--seed", "1")
    assert rc == 1
    assert "replay with --seed 1 --moves 10" in out and "script:" in out
