from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convalg.duality import (AtomicBoolPrequantale, RelMorphism, atom_label, atom_structure,
                             boundedness_failure, check_dual_map, check_functoriality, check_homomorphism,
                             check_morphism, check_naturality, complex_algebra, enumerate_atom_algebras,
                             enumerate_bounded_morphisms, enumerate_magmas, eta, eta_check_all,
                             magma_from_mask, morphism_failure, phi_lower, rho_plus, sigma,
                             verify_jt_duality)
from convalg.errors import MalformedTable, PreconditionError
from convalg.langmodels import BoundedWordUniverse, build_word_bimagma
from convalg.relstruct import RelMagma
from convalg.weights import boolean_quantale

Z2 = RelMagma(("0", "1"), {("0", "0", "0"), ("1", "0", "1"), ("1", "1", "0"), ("0", "1", "1")}, {"0"})


def fs(*xs):
    return frozenset(xs)


def all_maps(x, y):
    for images in itertools.product(y.carrier, repeat=len(x.carrier)):
        yield RelMorphism(x, y, dict(zip(x.carrier, images)))


def test_boolean_meet_gives_one_point_magma():
    s = atom_structure(boolean_quantale())
    assert len(s.carrier) == 1 and len(s.rel) == 1


def test_group_round_trip_recovers_cayley_relation():
    s = atom_structure(complex_algebra(Z2))
    relabel = {x: atom_label(eta(x)) for x in Z2.carrier}
    assert s.rel == {tuple(relabel[e] for e in t) for t in Z2.rel}


def test_constant_bottom_operator_gives_empty_relation():
    q = AtomicBoolPrequantale.from_atom_table(("p", "q"), {})
    assert atom_structure(q).rel == frozenset()


def test_complex_algebra_sizes():
    assert len(complex_algebra(RelMagma(("e",), {("e", "e", "e")})).elements) == 2
    words = build_word_bimagma(BoundedWordUniverse(("a",), 1)).seq_magma
    c = complex_algebra(words)
    assert len(c.elements) == 4
    assert c.mul(fs("a"), fs("a")) == frozenset()


def test_pair_magma_gives_relation_composition():
    pairs = [(a, b) for a in "xy" for b in "xy"]
    rel = {((a, d), (a, b), (c, d)) for (a, b) in pairs for (c, d) in pairs if b == c}
    c = complex_algebra(RelMagma(tuple(pairs), rel))
    r, s = fs(("x", "y")), fs(("y", "x"), ("y", "y"))
    assert c.mul(r, s) == {("x", "x"), ("x", "y")}


def test_non_additive_table_is_rejected():
    atoms = ("p",)
    els = (frozenset(), fs("p"))
    table = {(a, b): fs("p") for a in els for b in els}
    with pytest.raises(MalformedTable):
        AtomicBoolPrequantale(atoms, table)


@pytest.mark.parametrize("n,count", [(0, 1), (1, 2), (2, 136)])
def test_enumeration_counts(n, count):
    assert len(enumerate_atom_algebras(n)) == count


def test_magma_enumeration_counts():
    assert [len(enumerate_magmas(n)) for n in (0, 1, 2)] == [1, 2, 136]


def test_sigma_is_an_isomorphism_on_all_two_atom_algebras():
    for n in (0, 1, 2):
        for q in enumerate_atom_algebras(n):
            assert verify_jt_duality(q).ok


def test_eta_on_two_point_magmas_agrees_with_batched_check():
    for mask in range(1 << 8):
        assert verify_jt_duality(magma_from_mask(mask, 2)).ok
    assert eta_check_all(2) == (256, None)


def test_sigma_sends_elements_to_atoms_below():
    q = complex_algebra(Z2)
    assert sigma(q, fs("0", "1")) == {"0", "1"}
    assert sigma(q, fs("1")) == {"1"} and sigma(q, frozenset()) == frozenset()


# ---------------------------------------------------------------- morphisms

def test_identity_is_bounded_and_natural():
    for x in (Z2, magma_from_mask(0b10110001, 2)):
        m = RelMorphism.identity(x)
        assert check_morphism(m) == "bounded-morphism"
        assert check_naturality(m).ok
        assert check_functoriality(m, m).ok


def test_eta_is_a_bounded_morphism():
    for x in (Z2, magma_from_mask(0b01101001, 2)):
        back = atom_structure(complex_algebra(x))
        m = RelMorphism(x, back, {e: atom_label(eta(e)) for e in x.carrier})
        assert check_morphism(m) == "bounded-morphism"


def test_collapse_map_is_morphism_only_with_one_failing_inclusion():
    one = RelMagma(("*",), {("*", "*", "*")})
    found = 0
    for x in enumerate_magmas(2):
        m = RelMorphism(x, one, {e: "*" for e in x.carrier})
        if check_morphism(m) != "morphism":
            continue
        found += 1
        rep = check_dual_map(m)
        assert rep["unions"].holds and rep["complements"].holds
        assert rep["operator-sub"].holds and not rep["operator-sup"].holds
    assert found > 0


def test_non_morphism_has_failing_triple():
    empty = RelMagma(("*",), set())
    m = RelMorphism(Z2, empty, {"0": "*", "1": "*"})
    assert morphism_failure(m) == ("0", "0", "0")
    assert check_morphism(m) == "not-a-morphism"
    assert boundedness_failure(m) is None


def test_bad_maps_are_rejected():
    with pytest.raises(MalformedTable):
        RelMorphism(Z2, Z2, {"0": "0"})
    with pytest.raises(MalformedTable):
        RelMorphism(Z2, Z2, {"0": "0", "1": "2"})


@pytest.mark.parametrize("n", [1, 2])
def test_dual_map_inclusions_characterise_morphisms(n):
    reps = [m for k in range(1, n + 1) for m in enumerate_magmas(k)]
    for x in reps:
        for y in reps:
            for m in all_maps(x, y):
                rep = check_dual_map(m)
                kind = check_morphism(m)
                assert rep["unions"].holds and rep["complements"].holds
                assert rep["operator-sub"].holds == (kind != "not-a-morphism")
                assert (rep["operator-sub"].holds and rep["operator-sup"].holds) == (kind == "bounded-morphism")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, (1 << 27) - 1), st.integers(0, (1 << 27) - 1), st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_dual_map_inclusions_on_sampled_three_point_maps(a, b, images):
    x, y = magma_from_mask(a, 3), magma_from_mask(b, 3)
    m = RelMorphism(x, y, dict(zip(x.carrier, (y.carrier[i] for i in images))))
    rep = check_dual_map(m)
    kind = check_morphism(m)
    assert rep["unions"].holds and rep["complements"].holds
    assert rep["operator-sub"].holds == (kind != "not-a-morphism")
    assert (rep["operator-sub"].holds and rep["operator-sup"].holds) == (kind == "bounded-morphism")


def test_lower_adjoint_needs_a_boolean_homomorphism():
    q = complex_algebra(Z2)
    const = {a: q.top for a in q.elements}
    assert not check_homomorphism(const, q, q)["bottom"].holds
    with pytest.raises(PreconditionError):
        phi_lower(const, q, q)


def test_naturality_and_functoriality_on_random_bounded_morphisms():
    ms = list(enumerate_bounded_morphisms(2))
    assert len(ms) == 2366
    rng = random.Random(11)
    for m in rng.sample(ms, 200):
        assert check_naturality(m).ok
        assert check_functoriality(m).ok
    by_source = {}
    for m in ms:
        by_source.setdefault(id(m.source), []).append(m)
    for m1 in rng.sample(ms, 100):
        for m2 in by_source.get(id(m1.target), [])[:3]:
            assert check_functoriality(m1, m2).ok


def test_rho_plus_is_the_preimage():
    one = RelMagma(("*",), {("*", "*", "*")})
    m = RelMorphism(Z2, one, {"0": "*", "1": "*"})
    rp = rho_plus(m)
    assert rp[fs("*")] == fs("0", "1") and rp[frozenset()] == frozenset()
