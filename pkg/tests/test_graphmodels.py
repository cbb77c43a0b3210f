from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from convalg.graphmodels import (EPS, Digraph, TypeUniverse, build_graph_pim, build_type_bimagma, canonical,
                                 find_morphism, isomorphic, par, parse_term, parse_type, seq, subsumes,
                                 to_term, type_par, type_preorder, type_seq, type_subsumes, vertex_type)
from convalg.partialmon import check_pim
from convalg.relstruct import check_rel_assoc, check_relational_interchange


def digraphs(n, labels=None):
    vs = tuple(range(n))
    slots = [(u, v) for u in vs for v in vs if u != v]
    lab = st.none() if labels is None else st.tuples(*[st.sampled_from(labels)] * n)
    return st.builds(lambda bits, l: Digraph(vs, frozenset(s for s, b in zip(slots, bits) if b), l),
                     st.lists(st.booleans(), min_size=len(slots), max_size=len(slots)), lab)


def brute(g1, g2, iso=False):
    f = oracles.digraph_isomorphic if iso else oracles.digraph_morphism_exists
    l1 = None if g1.labels is None else g1.label_map()
    l2 = None if g2.labels is None else g2.label_map()
    return f(g1.vertices, g1.edges, l1, g2.vertices, g2.edges, l2)


def test_vertex_edges_must_be_known():
    with pytest.raises(ValueError):
        Digraph((0,), frozenset({(0, 1)}))
    with pytest.raises(ValueError):
        Digraph((0, 0))


def test_serial_composition_adds_every_cross_edge():
    g = seq(par(Digraph.vertex("a"), Digraph.vertex("b")), Digraph.vertex("c"))
    assert len(g) == 3 and g.edges == {(0, 2), (1, 2)}
    assert g.labels == ("a", "b", "c")


def test_type_counts():
    assert len(TypeUniverse(3).types) == 21
    assert len(TypeUniverse(3, posets_only=True).types) == 9
    assert len(TypeUniverse(4).types) == 239


def test_terms_round_trip():
    for text in ["a;b", "a | b", "(a | b);(c | d)", "a;(b | c)", "*;*"]:
        t = parse_type(text)
        assert parse_type(str(t)) == t
    n = Digraph((0, 1, 2, 3), frozenset({(0, 1), (2, 1), (2, 3)}))
    assert to_term(n).startswith("graph(")
    assert str(EPS) == "eps"


def test_bad_term_is_rejected():
    with pytest.raises(ValueError):
        parse_term("a;(b")


def test_interchange_of_pomsets():
    # (a|b);(c|d) has all four cross edges, (a;c)|(b;d) only two of them
    lhs = parse_type("(a | b);(c | d)")
    rhs = parse_type("(a;c) | (b;d)")
    assert type_subsumes(lhs, rhs)
    assert not type_subsumes(rhs, lhs)


def test_morphism_maps_edges_of_second_graph():
    chain = seq(Digraph.vertex(), Digraph.vertex())
    pair = par(Digraph.vertex(), Digraph.vertex())
    assert subsumes(chain, pair) and not subsumes(pair, chain)
    phi = find_morphism(chain, chain)
    assert phi is not None and sorted(phi.values()) == [0, 1]


def test_type_operations_are_well_defined():
    a, b = vertex_type("a"), vertex_type("b")
    assert type_par(a, b) == type_par(b, a)
    assert type_seq(a, b) != type_seq(b, a)
    assert type_seq(EPS, a) == a == type_par(a, EPS)


@settings(max_examples=150, deadline=None)
@given(digraphs(4, ("a", "b")), digraphs(4, ("a", "b")))
def test_subsumption_matches_brute_force(g1, g2):
    assert subsumes(g1, g2) == brute(g1, g2)
    assert isomorphic(g1, g2) == brute(g1, g2, iso=True)


@settings(max_examples=150, deadline=None)
@given(digraphs(5), st.permutations(range(5)))
def test_canonical_form_is_invariant(g, perm):
    h = g.relabel(dict(zip(range(5), perm)))
    assert canonical(g) == canonical(h)


def test_canonical_form_separates_iso_classes_on_four_vertices():
    rng = random.Random(3)
    u = TypeUniverse(4)
    sample = rng.sample([t for t in u.types if len(t) == 4], 40)
    for s, t in itertools.combinations(sample, 2):
        assert not brute(s.canon, t.canon, iso=True)


def test_type_relations_on_posets():
    u = TypeUniverse(3, posets_only=True)
    b = build_type_bimagma(u)
    assert check_rel_assoc(b.seq_magma)
    assert all(check_relational_interchange(b, k) for k in range(1, 8))
    pre = type_preorder(u)
    assert (parse_type("*;*"), parse_type("* | *")) in pre


def test_graph_pim_laws_hold():
    assert check_pim(build_graph_pim(2)).ok
    assert check_pim(build_graph_pim(3, posets_only=True)).ok
