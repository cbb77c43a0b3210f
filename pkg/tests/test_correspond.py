from __future__ import annotations

import pytest

from convalg.correspond import (correspondence_suite, enumerate_bimagmas, enumerate_biquantales,
                                is_interchange_quantale, is_relational_interchange_monoid,
                                search_counterexamples, verify_assoc_comm_corollaries, verify_lift,
                                verify_redundancy, verify_reflect_to_Q, verify_reflect_to_X,
                                verify_relational_eckmann_hilton, verify_theorem, verify_unit_correspondence,
                                verify_unit_inclusion)
from convalg.errors import PreconditionError
from convalg.langmodels import BoundedWordUniverse, build_word_bimagma
from convalg.relstruct import RelBiMagma
from convalg.weights import boolean_biquantale, boolean_quantale


def words(n=2):
    return build_word_bimagma(BoundedWordUniverse(("a", "b"), n))


def test_enumeration_sizes():
    assert sum(1 for _ in enumerate_bimagmas(1)) == 4
    assert len(list(enumerate_biquantales(1))) == 1
    assert len(list(enumerate_biquantales(2))) == 4
    with pytest.raises(ValueError):
        list(enumerate_biquantales(3))


@pytest.mark.parametrize("k", range(1, 8))
def test_three_directions_pass_on_words(k):
    w, q = words(), boolean_biquantale()
    for rep in (verify_lift(w, q, k), verify_reflect_to_X(w, q, k), verify_reflect_to_Q(w, q, k)):
        assert rep.verdict == "pass", rep.line()


def test_swapped_words_fail_preconditions_not_soundness():
    sw, q = words().swapped(), boolean_biquantale()
    rep = verify_lift(sw, q, 1)
    assert rep.verdict == "precondition-failed" and not rep.alarm
    with pytest.raises(PreconditionError):
        verify_lift(sw, q, 1, strict=True)
    assert verify_reflect_to_X(sw, q, 1).verdict == "precondition-failed"


def test_theorem_and_unit_inclusion_on_words():
    w, q = words(), boolean_biquantale()
    assert is_relational_interchange_monoid(w) and is_interchange_quantale(q)
    assert all(r.verdict == "pass" for r in verify_theorem(w, q))
    assert all(r.verdict == "pass" for r in verify_unit_inclusion(w, q))


def test_assoc_and_comm_corollaries():
    w = words()
    reps = {r.law: r for r in verify_assoc_comm_corollaries(w.seq_magma, boolean_quantale())}
    assert reps["assoc-1"].verdict == reps["assoc-2"].verdict == "pass"
    assert reps["comm-1"].verdict == "precondition-failed"
    assert not any(r.alarm for r in reps.values())
    reps = {r.law: r for r in verify_assoc_comm_corollaries(w.par_magma, boolean_quantale())}
    assert reps["comm-1"].verdict == "pass"


def test_unit_clauses():
    m = words().seq_magma
    q = boolean_quantale()
    assert all(verify_unit_correspondence(m, q, c).verdict == "pass" for c in (1, 2, 3))
    # with 1 = 0 the identity is the zero function: clause 2 loses its precondition
    rep = verify_unit_correspondence(m, q, 2, units=set(), one="0")
    assert rep.verdict == "precondition-failed"
    with pytest.raises(ValueError):
        verify_unit_correspondence(m, q, 4)


def test_redundancy_on_words_and_boolean():
    assert all(r.verdict == "pass" for r in verify_redundancy(words()))
    assert all(r.verdict == "pass" for r in verify_redundancy(boolean_biquantale()))


def test_relational_eckmann_hilton_on_words():
    reps = verify_relational_eckmann_hilton(words())
    assert all(r.verdict == "pass" for r in reps)


def test_suite_on_one_element_bimagmas_has_no_alarms():
    for rule in ("shape", "ceil-half"):
        res = correspondence_suite(max_x=1, rule=rule)
        assert res.pairs == 20 and res.ok and not res.truncated


def test_suite_budget_truncates():
    res = correspondence_suite(max_x=1, budget=7)
    assert res.pairs == 7 and res.truncated


def test_counterexample_search_on_small_carriers():
    no_d = search_counterexamples("no-D", max_x=1)
    qs = {w.q for w in no_d}
    assert "Q[1] singleton" in qs and "Q[2] 1.1=0 1|1=0" in qs
    no_rd = search_counterexamples("no-RD", max_x=1)
    assert no_rd and all("seq={}" in w.x or "par={}" in w.x for w in no_rd)
    no_unit = search_counterexamples("no-unit", max_x=1)
    assert {w.law for w in no_unit} == {"unit-2", "unit-3"}


def test_search_limit_is_per_law():
    ws = search_counterexamples("no-unit", max_x=1, limit=1)
    assert sorted(w.law for w in ws) == ["unit-2", "unit-3"]
    with pytest.raises(ValueError):
        search_counterexamples("bogus")


def test_degenerate_empty_bimagma_is_not_an_alarm():
    x = RelBiMagma(("0",), set(), set())
    q = boolean_biquantale()
    for k in range(1, 8):
        assert not verify_reflect_to_Q(x, q, k).alarm
