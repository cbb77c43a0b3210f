"""Graphs, graph types and pomsets with serial and parallel composition.

A digraph is a finite vertex set with an edge relation and optional vertex
labels.  ``seq`` puts every vertex of the left graph before every vertex of
the right one, ``par`` places the graphs side by side.  ``G1 <= G2``
(``subsumes(G1, G2)``) holds when some vertex bijection from G2 onto G1
maps every edge of G2 to an edge of G1 and keeps labels.

Graph types are isomorphism classes, represented by a canonical digraph on
vertices ``0..n-1``.  On finite graphs mutual subsumption coincides with
isomorphism, so subsumption is a partial order on types.  This fails for
infinite posets: two such posets can each map bijectively onto the other
without being isomorphic.  Only the finite case is modelled here.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .partialmon import PartialInterchangeMonoid, PartialMonoid
from .relstruct import RelBiMagma


@dataclass(frozen=True)
class Digraph:
    vertices: tuple
    edges: frozenset = frozenset()
    labels: tuple | None = None  # aligned with vertices when present

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex")
        object.__setattr__(self, "vertices", vs)
        edges = frozenset((u, v) for u, v in self.edges)
        known = set(vs)
        for u, v in edges:
            if u not in known or v not in known:
                raise ValueError(f"edge ({u}, {v}) leaves the vertex set")
        object.__setattr__(self, "edges", edges)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(vs):
                raise ValueError("one label per vertex")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def vertex(cls, label=None, name=0) -> Digraph:
        return cls((name,), frozenset(), None if label is None else (label,))

    @classmethod
    def empty(cls) -> Digraph:
        return cls((), frozenset(), None)

    def __len__(self) -> int:
        return len(self.vertices)

    def label_map(self) -> dict:
        if self.labels is None:
            return {v: None for v in self.vertices}
        return dict(zip(self.vertices, self.labels))

    def relabel(self, mapping: dict) -> Digraph:
        """Rename vertices; ``mapping`` must be injective on the vertex set."""
        lab = self.label_map()
        vs = tuple(mapping[v] for v in self.vertices)
        labels = None if self.labels is None else tuple(lab[v] for v in self.vertices)
        return Digraph(vs, frozenset((mapping[u], mapping[v]) for u, v in self.edges), labels)

    def normalized(self) -> Digraph:
        return self.relabel({v: i for i, v in enumerate(self.vertices)})

    def is_poset(self) -> bool:
        """Irreflexive and transitive, hence a strict partial order."""
        if any(u == v for u, v in self.edges):
            return False
        e = self.edges
        return all((u, w) in e for u, v in e for v2, w in e if v == v2)

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)


def _labels_of(g: Digraph):
    return list(g.labels) if g.labels is not None else [None] * len(g)


def _join_labels(g1: Digraph, g2: Digraph):
    if g1.labels is None and g2.labels is None:
        return None
    return tuple(_labels_of(g1) + _labels_of(g2))


def _tagged(g1: Digraph, g2: Digraph, cross: bool) -> Digraph:
    n1 = len(g1)
    m1 = {v: i for i, v in enumerate(g1.vertices)}
    m2 = {v: n1 + i for i, v in enumerate(g2.vertices)}
    edges = {(m1[u], m1[v]) for u, v in g1.edges} | {(m2[u], m2[v]) for u, v in g2.edges}
    if cross:
        edges |= {(a, b) for a in m1.values() for b in m2.values()}
    return Digraph(tuple(range(n1 + len(g2))), frozenset(edges), _join_labels(g1, g2))


def seq(g1: Digraph, g2: Digraph) -> Digraph:
    """Disjoint union plus every edge from the left graph to the right one.

    Vertices are renamed ``0..n-1``, left graph first.
    """
    return _tagged(g1, g2, True)


def par(g1: Digraph, g2: Digraph) -> Digraph:
    return _tagged(g1, g2, False)


def _union(g1: Digraph, g2: Digraph, cross: bool) -> Digraph | None:
    """Composition of graphs with disjoint vertex names, keeping the names."""
    if not set(g1.vertices).isdisjoint(g2.vertices):
        return None
    vs = tuple(sorted(g1.vertices + g2.vertices))
    lab = {**g1.label_map(), **g2.label_map()}
    labels = None if g1.labels is None and g2.labels is None else tuple(lab[v] for v in vs)
    edges = set(g1.edges) | set(g2.edges)
    if cross:
        edges |= {(a, b) for a in g1.vertices for b in g2.vertices}
    return Digraph(vs, frozenset(edges), labels)


def seq_named(g1: Digraph, g2: Digraph) -> Digraph | None:
    return _union(g1, g2, True)


def par_named(g1: Digraph, g2: Digraph) -> Digraph | None:
    return _union(g1, g2, False)


# ---------------------------------------------------------------- subsumption

def _degrees(g: Digraph):
    out = {v: 0 for v in g.vertices}
    inn = {v: 0 for v in g.vertices}
    for u, v in g.edges:
        out[u] += 1
        inn[v] += 1
    return out, inn


def find_morphism(g1: Digraph, g2: Digraph) -> dict | None:
    """A vertex bijection ``V2 -> V1`` sending edges of g2 to edges of g1.

    Backtracking over the vertices of g2, most constrained first.  A
    candidate image must carry the same label, a loop whenever the source
    has one, and at least the source's in- and out-degree.
    """
    if len(g1) != len(g2) or len(g1.edges) < len(g2.edges):
        return None
    l1, l2 = g1.label_map(), g2.label_map()
    if sorted(map(repr, l1.values())) != sorted(map(repr, l2.values())):
        return None
    out1, in1 = _degrees(g1)
    out2, in2 = _degrees(g2)
    e1 = g1.edges
    succ2 = {v: [] for v in g2.vertices}
    pred2 = {v: [] for v in g2.vertices}
    for u, v in g2.edges:
        if u != v:
            succ2[u].append(v)
            pred2[v].append(u)
    loops2 = {u for u, v in g2.edges if u == v}
    order = sorted(g2.vertices, key=lambda v: -(out2[v] + in2[v]))
    cands = {}
    for v in order:
        cs = [w for w in g1.vertices if l1[w] == l2[v] and out1[w] >= out2[v]
              and in1[w] >= in2[v] and (v not in loops2 or (w, w) in e1)]
        if not cs:
            return None
        cands[v] = cs
    phi: dict = {}
    used: set = set()

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        for w in cands[v]:
            if w in used:
                continue
            if any(u in phi and (w, phi[u]) not in e1 for u in succ2[v]):
                continue
            if any(u in phi and (phi[u], w) not in e1 for u in pred2[v]):
                continue
            phi[v] = w
            used.add(w)
            if rec(i + 1):
                return True
            del phi[v]
            used.discard(w)
        return False

    return dict(phi) if rec(0) else None


def subsumes(g1: Digraph, g2: Digraph) -> bool:
    """``g1 <= g2``: g1 has at least the order constraints of g2."""
    return find_morphism(g1, g2) is not None


def isomorphic(g1: Digraph, g2: Digraph) -> bool:
    """A vertex bijection onto g1 that preserves edges is an isomorphism
    exactly when the edge counts agree."""
    return len(g1.edges) == len(g2.edges) and subsumes(g1, g2)


# ---------------------------------------------------------------- canonical form

def _refine(g: Digraph) -> dict:
    """Stable colouring by iterated degree refinement; isomorphism invariant."""
    labels = g.label_map()
    succ = {v: [] for v in g.vertices}
    pred = {v: [] for v in g.vertices}
    for u, v in g.edges:
        succ[u].append(v)
        pred[v].append(u)
    color = {v: (repr(labels[v]), (v, v) in g.edges) for v in g.vertices}
    while True:
        sig = {v: (color[v], tuple(sorted(color[u] for u in succ[v])),
                   tuple(sorted(color[u] for u in pred[v]))) for v in g.vertices}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in g.vertices}
        if len(set(new.values())) == len(set(color.values())):
            return new
        color = new


def _encode(g: Digraph, order: tuple) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    labels = g.label_map()
    return (tuple(repr(labels[v]) for v in order),
            tuple(sorted((pos[u], pos[v]) for u, v in g.edges)))


def canonical_graph(g: Digraph) -> Digraph:
    """The representative on ``0..n-1`` with the least encoding among all
    orderings that respect the refined colour classes."""
    color = _refine(g)
    cells = [sorted((v for v in g.vertices if color[v] == c), key=repr)
             for c in sorted(set(color.values()))]
    best, best_order = None, None
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = tuple(v for part in parts for v in part)
        code = _encode(g, order)
        if best is None or code < best:
            best, best_order = code, order
    if best_order is None:
        best_order = ()
    pos = {v: i for i, v in enumerate(best_order)}
    labels = None
    if g.labels is not None:
        lab = g.label_map()
        labels = tuple(lab[v] for v in best_order)
    return Digraph(tuple(range(len(best_order))),
                   frozenset((pos[u], pos[v]) for u, v in g.edges), labels)


@dataclass(frozen=True)
class GraphType:
    canon: Digraph

    def __len__(self) -> int:
        return len(self.canon)

    @property
    def size(self) -> int:
        return len(self.canon)

    def __str__(self) -> str:
        return to_term(self.canon)

    def __repr__(self) -> str:
        return f"[{self}]"

    def sort_key(self):
        return (len(self.canon), len(self.canon.edges), _encode(self.canon, self.canon.vertices))

    def __lt__(self, other: GraphType) -> bool:
        return self.sort_key() < other.sort_key()


def canonical(g: Digraph) -> GraphType:
    return GraphType(canonical_graph(g))


EPS = GraphType(Digraph.empty())


def vertex_type(label=None) -> GraphType:
    return canonical(Digraph.vertex(label))


@lru_cache(maxsize=None)
def type_seq(s: GraphType, t: GraphType) -> GraphType:
    return canonical(seq(s.canon, t.canon))


@lru_cache(maxsize=None)
def type_par(s: GraphType, t: GraphType) -> GraphType:
    return canonical(par(s.canon, t.canon))


@lru_cache(maxsize=None)
def type_subsumes(s: GraphType, t: GraphType) -> bool:
    """``[G1] <= [G2]`` iff ``G1 <= G2``; independent of representatives."""
    return subsumes(s.canon, t.canon)


# ---------------------------------------------------------------- terms

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(;)|(\|)|(\*)|([A-Za-z0-9_]+))")


def _tokens(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {pos}: {text[pos:]!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


def parse_term(text: str) -> Digraph:
    """Parse ``t ::= letter | eps | t;t | t|t | (t)`` into a labelled graph.

    ``;`` is sequential and binds tighter than ``|``; both associate to the
    left.  ``*`` stands for an unlabelled vertex.
    """
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'a term'} in {text!r}")
        pos += 1
        return tok

    def atom():
        tok = take()
        if tok == "(":
            g = alt()
            take(")")
            return g
        if tok in (")", ";", "|"):
            raise ValueError(f"unexpected {tok!r} in {text!r}")
        if tok == "eps":
            return Digraph.empty()
        if tok == "*":
            return Digraph.vertex(None)
        return Digraph.vertex(tok)

    def chain():
        g = atom()
        while peek() == ";":
            take(";")
            g = seq(g, atom())
        return g

    def alt():
        g = chain()
        while peek() == "|":
            take("|")
            g = par(g, chain())
        return g

    g = alt()
    if peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    if g.labels is not None and None in g.labels and any(l is not None for l in g.labels):
        raise ValueError("mix of labelled and unlabelled vertices")
    return g


def _components(g: Digraph, vs: list) -> list:
    adj = {v: set() for v in vs}
    vset = set(vs)
    for u, v in g.edges:
        if u in vset and v in vset:
            adj[u].add(v)
            adj[v].add(u)
    seen, comps = set(), []
    for v in vs:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp, key=vs.index))
    return comps


def _term(g: Digraph, vs: list, labels: dict) -> tuple[str, str] | None:
    """``(kind, text)`` for the subgraph on ``vs``; None if not series-parallel."""
    if len(vs) == 1:
        v = vs[0]
        if (v, v) in g.edges:
            return None
        lab = labels[v]
        return "atom", "*" if lab is None else str(lab)
    comps = _components(g, vs)
    if len(comps) > 1:
        parts = []
        for c in comps:
            t = _term(g, c, labels)
            if t is None:
                return None
            parts.append(t[1])
        return "par", " | ".join(sorted(parts))
    # smallest left factor whose vertices all precede the rest
    for r in range(1, len(vs)):
        for left in itertools.combinations(vs, r):
            lset = set(left)
            right = [v for v in vs if v not in lset]
            if not all((a, b) in g.edges for a in left for b in right):
                continue
            if any((b, a) in g.edges for a in left for b in right):
                continue
            lt, rt = _term(g, list(left), labels), _term(g, right, labels)
            if lt is None or rt is None:
                return None
            ltxt = f"({lt[1]})" if lt[0] == "par" else lt[1]
            rtxt = f"({rt[1]})" if rt[0] == "par" else rt[1]
            return "seq", f"{ltxt};{rtxt}"
    return None


def to_term(g: Digraph) -> str:
    """Series-parallel term for ``g``, or an explicit edge list otherwise."""
    if len(g) == 0:
        return "eps"
    t = _term(g, list(g.vertices), g.label_map())
    if t is not None:
        return t[1]
    lab = g.label_map()
    names = ",".join("*" if lab[v] is None else str(lab[v]) for v in g.vertices)
    edges = " ".join(f"{g.vertices.index(u)}>{g.vertices.index(v)}" for u, v in
                     sorted(g.edges, key=lambda e: (g.vertices.index(e[0]), g.vertices.index(e[1]))))
    return f"graph({names}; {edges})"


def parse_type(text: str) -> GraphType:
    return canonical(parse_term(text))


# ---------------------------------------------------------------- universes

def all_graphs(vertices: tuple, labels=None, posets_only: bool = False, loops: bool = False):
    """Every graph on the given vertex names (every labelling if ``labels``)."""
    vs = tuple(vertices)
    slots = [(u, v) for u in vs for v in vs if u != v or loops]
    labelings = [None] if not labels else list(itertools.product(labels, repeat=len(vs)))
    for bits in itertools.product((False, True), repeat=len(slots)):
        edges = frozenset(s for s, b in zip(slots, bits) if b)
        g0 = Digraph(vs, edges)
        if posets_only and not g0.is_poset():
            continue
        for lab in labelings:
            yield g0 if lab is None else Digraph(vs, edges, lab)


@dataclass(frozen=True)
class TypeUniverse:
    max_vertices: int
    labels: tuple | None = None
    posets_only: bool = False
    loops: bool = False

    def __post_init__(self):
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def types(self) -> tuple:
        return _universe_types(self)


@lru_cache(maxsize=None)
def _universe_types(u: TypeUniverse) -> tuple:
    seen = set()
    for n in range(u.max_vertices + 1):
        for g in all_graphs(tuple(range(n)), u.labels, u.posets_only, u.loops):
            seen.add(canonical(g))
    return tuple(sorted(seen))


def build_type_bimagma(u: TypeUniverse) -> RelBiMagma:
    """Types with ``x = y ; z`` sequentially and ``x <= y | z`` in parallel.

    Both unit sets are ``{[eps]}``; they are relational units for the
    sequential relation only.
    """
    types = u.types
    members = set(types)
    by_size: dict = {}
    for t in types:
        by_size.setdefault(len(t), []).append(t)
    seq_rel, par_rel = set(), set()
    for y in types:
        for z in types:
            if len(y) + len(z) > u.max_vertices:
                continue
            s = type_seq(y, z)
            if s in members:
                seq_rel.add((s, y, z))
            p = type_par(y, z)
            for x in by_size[len(p)]:
                if type_subsumes(x, p):
                    par_rel.add((x, y, z))
    return RelBiMagma(types, seq_rel, par_rel, {EPS}, {EPS})


def type_preorder(u: TypeUniverse) -> frozenset:
    ts = u.types
    return frozenset((s, t) for s in ts for t in ts
                     if len(s) == len(t) and s != t and type_subsumes(s, t))


def type_grading(u: TypeUniverse) -> dict:
    return {t: len(t) for t in u.types}


def build_graph_pim(n: int, labels=None, posets_only: bool = False,
                    loops: bool = False) -> PartialInterchangeMonoid:
    """Concrete graphs whose vertices come from the pool ``0..n-1``.

    Compositions are defined when the operands use disjoint vertices.
    ``x <= y`` holds when both have the same vertices and labels and every
    edge of ``y`` is an edge of ``x``, so the identity is the bijective
    morphism.  Allowing arbitrary bijections here would break monotonicity
    (operands with different vertex sets) or serial decomposability.
    """
    pool = tuple(range(n))
    carrier = []
    for r in range(n + 1):
        for vs in itertools.combinations(pool, r):
            carrier.extend(all_graphs(vs, labels, posets_only, loops))
    carrier = tuple(carrier)
    seq_t, par_t = {}, {}
    for g1 in carrier:
        for g2 in carrier:
            if set(g1.vertices).isdisjoint(g2.vertices):
                seq_t[(g1, g2)] = seq_named(g1, g2)
                par_t[(g1, g2)] = par_named(g1, g2)
    eps = Digraph.empty()

    def leq(x, y):
        return x.vertices == y.vertices and x.labels == y.labels and y.edges <= x.edges

    return PartialInterchangeMonoid(carrier, leq, PartialMonoid(carrier, seq_t, {eps}),
                                    PartialMonoid(carrier, par_t, {eps}))
