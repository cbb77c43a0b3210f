from __future__ import annotations

import json

import pytest

from convalg import io
from convalg.cli import main
from convalg.duality import complex_algebra
from convalg.errors import SchemaError
from convalg.partialmon import counterexample_pim
from convalg.relstruct import RelMagma
from convalg.weights import boolean_biquantale, minplus_quantale


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- loading

@pytest.mark.parametrize("name", io.fixture_names())
def test_every_fixture_loads(name):
    s = io.load(name)
    assert s.obj is not None and s.name == name


def test_dump_and_build_round_trip():
    q = minplus_quantale(2)
    again = io.build(io.dump_quantale(q, "mp")).obj
    assert again.elements == q.elements and all(again.mul(a, b) == q.mul(a, b)
                                                 for a in q.elements for b in q.elements)
    bq = boolean_biquantale()
    assert io.build(io.dump_biquantale(bq)).obj.unit_par == bq.unit_par
    p = counterexample_pim()
    again = io.build(io.dump_pim(p)).obj
    assert again.seq.table == p.seq.table and again.leq("b", "a") and not again.leq("a", "b")
    m = RelMagma(("0", "1"), {("1", "0", "1")}, {"0"})
    assert io.build(io.dump_relmagma(m)).obj.rel == m.rel
    c = complex_algebra(m)
    assert io.build(io.dump_atomic_algebra(c)).obj.atom_table() == c.atom_table()


def test_schema_errors():
    with pytest.raises(SchemaError):
        io.build({"kind": "relmagma", "schema": 1, "carrier": ["a"]})
    with pytest.raises(SchemaError):
        io.build({"kind": "nonsense", "schema": 1})
    with pytest.raises(SchemaError):
        io.build({"kind": "relmagma", "schema": 1, "carrier": ["a"], "relation": [], "extra": 1})
    with pytest.raises(SchemaError):
        io.load("no-such-fixture")


def test_element_lookup_uses_printed_names():
    s = io.load("words2")
    assert s.element("eps") == "" and s.element("ab") == "ab"
    with pytest.raises(SchemaError):
        s.element("abc")


# ---------------------------------------------------------------- cli

def test_check_one_point_passes(capsys):
    code, out, _ = run(capsys, "check", "one-point")
    assert code == 0 and "FAIL" not in out


def test_check_selected_law_reports_witness(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "counterexample-equational", "--law", "ri1", "--json", str(path))
    assert code == 1 and "witness (b, a, a)" in out
    doc = json.loads(path.read_text())
    assert doc["ok"] is False and doc["results"][0]["witness"] == ["b", "a", "a"]


def test_convolve_and_star(capsys):
    code, out, _ = run(capsys, "convolve", "words2", "a", "b")
    assert code == 0 and out.strip() == "{ab: 1}"
    code, out, _ = run(capsys, "convolve", "words2", "a", "b", "--rel", "par")
    assert "ba: 1" in out
    code, out, _ = run(capsys, "star", "words3", "a")
    assert code == 0 and "{eps: 1, a: 1, aa: 1, aaa: 1}" in out


def test_lift_suite_on_words(capsys):
    code, out, _ = run(capsys, "lift", "words2", "boolean", "--suite", "interchange")
    assert code == 0 and out.count("pass") >= 7


def test_pomset_verbs(capsys):
    assert run(capsys, "pomset", "(a|b);(c|d)", "subsumed-by", "(a;c)|(b;d)")[0] == 0
    assert run(capsys, "pomset", "(a;c)|(b;d)", "subsumed-by", "(a|b);(c|d)")[0] == 1
    assert run(capsys, "pomset", "(a;c)|(b;d)", "subsumes", "(a|b);(c|d)")[0] == 0
    code, out, _ = run(capsys, "pomset", "a", "par", "b")
    assert code == 0 and out.strip() == "a | b"


def test_search_prints_witnesses(capsys):
    code, out, _ = run(capsys, "search", "--scope", "no-unit", "--limit", "1")
    assert code == 0 and "unit-2" in out and "unit-3" in out


def test_duality_on_fixture(capsys):
    code, out, _ = run(capsys, "duality", "z2")
    assert code == 0 and "FAIL" not in out


def test_input_errors_exit_two(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run(capsys, "check", str(empty))[0] == 2
    assert run(capsys, "check", "no-such-thing")[0] == 2
    assert run(capsys, "pomset", "a", "seq")[0] == 2
    assert run(capsys, "convolve", "words2", "zz", "a")[0] == 2
