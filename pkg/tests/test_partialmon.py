from __future__ import annotations

import pytest

from convalg.errors import MalformedTable, MultipleUnits, PreconditionError, Undefined
from convalg.graphmodels import build_graph_pim
from convalg.partialmon import (PartialInterchangeMonoid, PartialMonoid, PreorderedPartialMonoid,
                                check_partial_monoid, check_pim, check_positive,
                                check_preordered_partial_monoid, check_serially_decomposable,
                                check_small_partial_interchange, counterexample_pim, heaplet_monoid,
                                interval_monoid, one_point_pim, pair_monoid, pim_to_interchange_semigroup,
                                require_single_unit, serial_decomposition_failure, to_relational,
                                to_relational_preordered)
from convalg.relstruct import check_rel_assoc, check_rel_units, check_relational_interchange


def test_composition_outside_domain_raises():
    m = interval_monoid(2)
    assert m.mul("[0,0]", "[0,1]") == "[0,1]"
    assert m.get("[0,1]", "[0,0]") is None
    with pytest.raises(Undefined):
        m.mul("[0,1]", "[0,0]")


def test_unknown_elements_are_malformed():
    with pytest.raises(MalformedTable):
        PartialMonoid(("e",), {("e", "e"): "x"}, {"e"})
    with pytest.raises(MalformedTable):
        PartialMonoid(("e",), {}, {"x"})


@pytest.mark.parametrize("m", [interval_monoid(3), pair_monoid(), heaplet_monoid()])
def test_presets_are_partial_monoids(m):
    assert check_partial_monoid(m).ok
    r = to_relational(m)
    assert check_rel_assoc(r)
    assert check_rel_units(r).ok


def test_interval_monoid_has_one_unit_per_point():
    assert len(interval_monoid(3).units) == 3


def test_kleene_equality_detects_one_sided_definedness():
    # x.(x.x) defined but (x.x).x undefined
    c = ("e", "x", "y")
    table = {("x", "x"): "y", ("x", "y"): "y"}
    for z in c:
        table[("e", z)] = z
        table[(z, "e")] = z
    rep = check_partial_monoid(PartialMonoid(c, table, {"e"}))
    assert not rep.ok
    assert any(r.witness == ("x", "x", "x") for r in rep.failed())


def test_preorder_encoding_keeps_monotone_structure():
    m = interval_monoid(2)
    p = PreorderedPartialMonoid(m, {("[0,0]", "[0,1]")})
    assert not check_preordered_partial_monoid(p).ok
    flat = PreorderedPartialMonoid(m, ())
    assert check_preordered_partial_monoid(flat).ok
    assert to_relational_preordered(flat).rel == to_relational(m).rel


def test_counterexample_is_a_pim_with_every_small_law():
    p = counterexample_pim()
    assert check_pim(p).ok
    assert all(check_small_partial_interchange(p, k) for k in range(1, 7))
    assert check_positive(p) and check_serially_decomposable(p)


def test_encoding_choice_decides_first_relational_law():
    p = counterexample_pim()
    default = pim_to_interchange_semigroup(p)
    assert all(check_relational_interchange(default, k) for k in range(1, 8))
    strict = pim_to_interchange_semigroup(p, "equality", "equality")
    r = check_relational_interchange(strict, 1)
    assert not r.holds and r.witness == ("b", "a", "a")


def test_unknown_encoding_is_rejected():
    with pytest.raises(ValueError):
        pim_to_interchange_semigroup(one_point_pim(), "bogus")


def test_one_point_pim():
    p = one_point_pim()
    assert check_pim(p).ok and p.unit() == "e"


def test_small_laws_need_a_single_shared_unit():
    m = interval_monoid(2)
    p = PartialInterchangeMonoid(m.carrier, (), m, m)
    with pytest.raises(MultipleUnits):
        check_small_partial_interchange(p, 1)
    with pytest.raises(PreconditionError):
        require_single_unit(p)


def test_pi7_failure_is_reported():
    # parallel composition that is undefined where the interchange needs it
    c = ("e", "a")
    seq = {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): "a"}
    par = {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a"}
    p = PartialInterchangeMonoid(c, (), PartialMonoid(c, seq, {"e"}), PartialMonoid(c, par, {"e"}))
    rep = check_pim(p)
    assert not rep["pi7"].holds


def test_graph_pims():
    posets = build_graph_pim(3, posets_only=True)
    assert check_pim(posets).ok and check_positive(posets) and check_serially_decomposable(posets)
    # with arbitrary digraphs a 2-cycle sits below a chain yet has no serial split
    general = build_graph_pim(2)
    assert check_pim(general).ok
    x, y1, y2 = serial_decomposition_failure(general)
    assert x.edges == {(0, 1), (1, 0)} and len(y1) == len(y2) == 1
