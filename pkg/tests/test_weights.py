from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convalg.errors import MalformedTable, NotALattice, NotUnital, PreconditionError
from convalg.weights import (BiQuantale, FiniteLattice, FiniteQuantale, KleeneAlgebraTable, boolean_biquantale,
                             boolean_kleene, boolean_lattice, boolean_quantale, chain_meet_quantale,
                             check_algebraic_interchange, check_biquantale_laws, check_degeneracy,
                             check_kleene_axioms, check_prequantale, check_quantale_laws,
                             check_weak_eckmann_hilton, degeneracy_witness, enumerate_ordered_bimagmas,
                             find_unit, is_monotone, minplus_kleene, minplus_quantale, quantale_star)

B = ("0", "1")


def meet_table(lat):
    return {(a, b): lat.meet(a, b) for a in lat.elements for b in lat.elements}


# ---------------------------------------------------------------- lattices

def test_chain_lattice_joins_and_meets():
    lat = FiniteLattice.chain(["0", "m", "1"])
    assert (lat.bottom, lat.top) == ("0", "1")
    assert lat.join("0", "m") == "m" and lat.meet("m", "1") == "m"
    assert lat.atoms() == ("m",)
    assert not lat.is_boolean()


def test_powerset_lattice_is_boolean():
    lat = FiniteLattice.powerset(["p", "q"])
    assert len(lat) == 4 and lat.is_boolean() and lat.is_distributive()
    assert lat.join("{p}", "{q}") == "{p,q}"
    assert lat.complement("{p}") == "{q}"


def test_non_lattice_is_rejected():
    # two incomparable maximal elements over a bottom have no join
    with pytest.raises(NotALattice):
        FiniteLattice(("0", "a", "b"), frozenset({("0", "a"), ("0", "b")}))


def test_cyclic_order_is_rejected():
    with pytest.raises(NotALattice):
        FiniteLattice(("a", "b"), frozenset({("a", "b"), ("b", "a")}))


def test_table_with_unknown_element_is_malformed():
    lat = boolean_lattice()
    with pytest.raises(MalformedTable):
        FiniteQuantale(lat, {("0", "0"): "0", ("0", "1"): "0", ("1", "0"): "0", ("1", "1"): "x"}, "1")
    with pytest.raises(MalformedTable):
        FiniteQuantale(lat, {("0", "0"): "0"}, "1")


# ---------------------------------------------------------------- quantale laws

def test_boolean_quantale_passes():
    assert check_quantale_laws(boolean_quantale()).ok


def test_broken_unit_has_witness_one():
    lat = boolean_lattice()
    table = meet_table(lat)
    table[("1", "1")] = "0"
    rep = check_quantale_laws(FiniteQuantale(lat, table, "1"))
    assert not rep["left-unit"].holds
    assert rep["left-unit"].witness == ("1",)


def brute_quantale_ok(q):
    els, lat, mul = q.elements, q.lattice, q.mul
    for a, b, c in itertools.product(els, repeat=3):
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            return False
        if mul(lat.join(a, b), c) != lat.join(mul(a, c), mul(b, c)):
            return False
        if mul(c, lat.join(a, b)) != lat.join(mul(c, a), mul(c, b)):
            return False
    return all(mul(q.unit, a) == a == mul(a, q.unit) and mul(q.zero, a) == q.zero == mul(a, q.zero)
               for a in els)


def test_three_chain_meet_quantale_matches_brute_force():
    q = chain_meet_quantale()
    assert brute_quantale_ok(q)
    assert check_quantale_laws(q).ok


def test_minplus_quantale_laws():
    q = minplus_quantale(1)
    assert q.elements == ("inf", "1", "0")
    assert q.zero == "inf" and q.unit == "0"
    assert q.mul("1", "1") == "inf"  # sums past the bound saturate to inf
    assert q.mul("1", "0") == "1"
    assert check_quantale_laws(q).ok


def _all_quantale_tables(lat):
    els = lat.elements
    cells = [(a, b) for a in els for b in els]
    for vals in itertools.product(els, repeat=len(cells)):
        yield dict(zip(cells, vals))


def test_distribution_over_every_subset_on_three_chain():
    lat = FiniteLattice.chain(["0", "m", "1"])
    seen = 0
    for table in _all_quantale_tables(lat):
        q = FiniteQuantale(lat, table)
        if not check_prequantale(q):
            continue
        seen += 1
        for r in range(len(lat) + 1):
            for sub in itertools.combinations(lat.elements, r):
                for c in lat.elements:
                    assert q.mul(lat.join_all(sub), c) == lat.join_all(q.mul(a, c) for a in sub)
                    assert q.mul(c, lat.join_all(sub)) == lat.join_all(q.mul(c, a) for a in sub)
    assert seen > 0


# ---------------------------------------------------------------- interchange and degeneracy

def test_boolean_meet_meet_interchange():
    q = boolean_biquantale()
    assert all(check_algebraic_interchange(q, k) for k in range(1, 8))


def test_meet_against_constant_zero_fails_first_law():
    lat = boolean_lattice()
    q = BiQuantale(lat, meet_table(lat), {(a, b): "0" for a in B for b in B}, "1", None)
    r = check_algebraic_interchange(q, 1)
    assert not r.holds and r.witness == ("1", "1")


def test_equal_commutative_compositions_satisfy_second_law():
    q = chain_meet_quantale().as_biquantale()
    assert check_algebraic_interchange(q, 2)


def test_degeneracy_examples():
    assert degeneracy_witness(boolean_biquantale(), 4) == ("1", "1", "1", "1")
    lat = boolean_lattice()
    zero = {(a, b): "0" for a in B for b in B}
    assert not check_degeneracy(BiQuantale(lat, zero, zero), 1)
    assert check_degeneracy(chain_meet_quantale().as_biquantale(), 2)


def test_seven_with_shared_unit_gives_small_laws_on_three_element_tables():
    lat = FiniteLattice.chain(["0", "m", "1"])
    pres = [t for t in _all_quantale_tables(lat) if check_prequantale(FiniteQuantale(lat, t))]
    hits = 0
    for s in pres:
        us = find_unit(FiniteQuantale(lat, s))
        if us is None:
            continue
        for p in pres:
            q = BiQuantale(lat, s, p, us, us)
            if find_unit(q, "par") != us or not check_algebraic_interchange(q, 7):
                continue
            hits += 1
            assert all(check_algebraic_interchange(q, k) for k in range(1, 7))
    assert hits > 0


# ---------------------------------------------------------------- star and Kleene algebras

def test_boolean_star():
    q = boolean_quantale()
    assert quantale_star(q, "0") == "1" and quantale_star(q, "1") == "1"


def test_chain_star_of_middle_is_top():
    assert quantale_star(chain_meet_quantale(), "m") == "1"


def test_star_needs_unit():
    lat = boolean_lattice()
    with pytest.raises(NotUnital):
        quantale_star(FiniteQuantale(lat, meet_table(lat)), "1")


def test_kleene_examples():
    assert check_kleene_axioms(boolean_kleene()).ok
    k = boolean_kleene()
    broken = KleeneAlgebraTable(k.elements, k.plus, k.comp, k.zero, k.unit, {"0": "1", "1": "0"})
    rep = check_kleene_axioms(broken)
    assert rep["unfold-left"].witness == ("1",)
    mp = minplus_kleene(1)
    assert set(mp.star.values()) == {"0"}
    assert check_kleene_axioms(mp).ok


@pytest.mark.parametrize("q", [boolean_quantale(), chain_meet_quantale(), minplus_quantale(1), minplus_quantale(3)])
def test_star_of_quantale_satisfies_kleene_axioms(q):
    assert check_kleene_axioms(KleeneAlgebraTable.from_quantale(q)).ok


# ---------------------------------------------------------------- Eckmann-Hilton

def test_weak_eckmann_hilton_on_boolean():
    rep = check_weak_eckmann_hilton(boolean_biquantale())
    assert rep.ok and rep.par_unit_below_seq_unit and len(rep.small_laws) == 6


def test_weak_eckmann_hilton_rejects_failing_seven():
    lat = boolean_lattice()
    # seq = meet, par = join: (0 v 1) ^ (1 v 0) = 1 but (0 ^ 1) v (1 ^ 0) = 0
    join = {(a, b): lat.join(a, b) for a in B for b in B}
    q = BiQuantale(lat, meet_table(lat), join, "1", "0")
    assert check_algebraic_interchange(q, 7).witness == ("0", "1", "1", "0")
    with pytest.raises(PreconditionError):
        check_weak_eckmann_hilton(q)


def test_weak_eckmann_hilton_over_all_two_element_ordered_bimagmas():
    distinct = 0
    for q in enumerate_ordered_bimagmas(2):
        if q.unit_seq is None or q.unit_par is None:
            continue
        if not is_monotone(q) or not check_algebraic_interchange(q, 7):
            continue
        rep = check_weak_eckmann_hilton(q)
        assert rep.seq_unit_below_par_unit
        if rep.par_unit_below_seq_unit:
            assert all(rep.small_laws[k] for k in range(1, 7))
        distinct += q.unit_seq != q.unit_par
    assert distinct > 0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(B), min_size=4, max_size=4), st.lists(st.sampled_from(B), min_size=4, max_size=4))
def test_biquantale_report_agrees_with_per_table_checks(s, p):
    lat = boolean_lattice()
    cells = [(a, b) for a in B for b in B]
    q = BiQuantale(lat, dict(zip(cells, s)), dict(zip(cells, p)))
    rep = check_biquantale_laws(q)
    assert rep.ok == (check_quantale_laws(q.retract("seq")).ok and check_quantale_laws(q.retract("par")).ok)
