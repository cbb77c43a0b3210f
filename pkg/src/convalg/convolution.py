"""The function space Q^X: weighted functions, convolution and lifted laws.

Convolution of ``f`` and ``g`` at ``x`` joins ``f y . g z`` over every
decomposition of ``x``.  It is computed by pushing products forward from
the supports of ``f`` and ``g``, so sparse functions are cheap.
"""
from __future__ import annotations

import itertools
import random
from typing import Callable, Iterable, Mapping

from .errors import CarrierMismatch, MultipleUnits, NotGraded, NotUnital
from .laws import ASSOC, COMM, INTERCHANGE, LawResult, Shape, Single, Swap, parse_interchange_index
from .relstruct import RelBiMagma, RelMagma
from .weights import BiQuantale, FiniteQuantale, KleeneAlgebraTable, check_prequantale


def show_element(x) -> str:
    if x == "":
        return "eps"
    return str(x)


class WeightedFunction:
    """A finite-support map from a carrier into a weight algebra.

    Only non-bottom values are stored; equality and hashing use that
    support map, so two functions are equal iff they agree pointwise.
    """

    __slots__ = ("carrier", "bottom", "items", "_hash")

    def __init__(self, carrier: tuple, bottom, weights: Mapping | Iterable = ()):
        self.carrier = carrier
        self.bottom = bottom
        pairs = weights.items() if isinstance(weights, Mapping) else weights
        self.items = {x: a for x, a in pairs if a != bottom}
        self._hash = None

    def __call__(self, x):
        return self.items.get(x, self.bottom)

    def support(self) -> list:
        return [x for x in self.carrier if x in self.items]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedFunction):
            return NotImplemented
        return self.items == other.items and self.bottom == other.bottom

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self.items.items()), self.bottom))
        return self._hash

    def __repr__(self) -> str:
        return "WeightedFunction(" + str(self) + ")"

    def __str__(self) -> str:
        return "{" + ", ".join(f"{show_element(x)}: {self.items[x]}"
                               for x in self.support()) + "}"

    def to_pairs(self) -> list:
        return [[show_element(x), self.items[x]] for x in self.support()]


def delta(carrier: tuple, bottom, x, a) -> WeightedFunction:
    return WeightedFunction(carrier, bottom, {x: a})


class LiftedAlgebra:
    """Convolution algebra of a relational bi-magma over a bi-quantale."""

    def __init__(self, base: RelBiMagma | RelMagma, weights: BiQuantale | FiniteQuantale):
        if isinstance(base, RelMagma):
            base = RelBiMagma(base.carrier, base.rel, base.rel, base.units, base.units)
        if isinstance(weights, FiniteQuantale):
            weights = weights.as_biquantale()
        self.base = base
        self.weights = weights
        self.carrier = base.carrier
        self.bottom = weights.zero
        self._join = weights.lattice.join
        self._leq = weights.lattice.leq
        self._cache: dict = {}
        self._prequantale = None

    def is_prequantale(self) -> bool:
        if self._prequantale is None:
            self._prequantale = check_prequantale(self.weights)
        return self._prequantale

    # -- construction
    def function(self, weights: Mapping | Iterable = ()) -> WeightedFunction:
        f = WeightedFunction(self.carrier, self.bottom, weights)
        self._own(f)
        return f

    def delta(self, x, a=None) -> WeightedFunction:
        if a is None:
            a = self.weights.lattice.top
        return self.function({x: a})

    def zero(self) -> WeightedFunction:
        return self.function()

    def unit_function(self, which: str = "seq") -> WeightedFunction:
        m = self.base.magma(which)
        one = self.weights.unit_seq if which == "seq" else self.weights.unit_par
        if m.units is None:
            raise NotUnital(f"the {which} relation has no unit set")
        if one is None:
            raise NotUnital(f"the {which} composition of the weights has no unit")
        return self.function({e: one for e in m.units})

    def _own(self, f: WeightedFunction) -> None:
        if f.carrier is not self.carrier and tuple(f.carrier) != self.carrier:
            raise CarrierMismatch("function lives on a different carrier")
        bad = [a for a in f.items.values() if a not in self.weights.lattice]
        if bad:
            raise CarrierMismatch(f"weight {bad[0]!r} is not in the weight algebra")
        bad = [x for x in f.items if x not in self.base.seq_magma._index]
        if bad:
            raise CarrierMismatch(f"{bad[0]!r} is not in the carrier")

    # -- operations
    def _convolve(self, m: RelMagma, mul, f: WeightedFunction, g: WeightedFunction) -> WeightedFunction:
        join = self._join
        acc: dict = {}
        op = m.op
        for y, a in f.items.items():
            for z, b in g.items.items():
                c = mul(a, b)
                if c == self.bottom:
                    continue
                for x in op(y, z):
                    acc[x] = join(acc[x], c) if x in acc else c
        return WeightedFunction(self.carrier, self.bottom, acc)

    def seq(self, f: WeightedFunction, g: WeightedFunction) -> WeightedFunction:
        key = ("s", f, g)
        out = self._cache.get(key)
        if out is None:
            out = self._convolve(self.base.seq_magma, self.weights.seq, f, g)
            self._cache[key] = out
        return out

    def par(self, f: WeightedFunction, g: WeightedFunction) -> WeightedFunction:
        key = ("p", f, g)
        out = self._cache.get(key)
        if out is None:
            out = self._convolve(self.base.par_magma, self.weights.par, f, g)
            self._cache[key] = out
        return out

    def convolve(self, f, g, rel: str = "seq", at=None):
        """``f * g`` for the chosen relation, or its value at one point.

        The single-point form joins directly over the decompositions of ``at``.
        """
        self._own(f)
        self._own(g)
        if at is None:
            return self.seq(f, g) if rel == "seq" else self.par(f, g)
        m = self.base.magma(rel)
        mul = self.weights.seq if rel == "seq" else self.weights.par
        out = self.bottom
        for y, z in m.decompositions(at):
            out = self._join(out, mul(f(y), g(z)))
        return out

    def join(self, f: WeightedFunction, g: WeightedFunction) -> WeightedFunction:
        acc = dict(f.items)
        for x, b in g.items.items():
            acc[x] = self._join(acc[x], b) if x in acc else b
        return WeightedFunction(self.carrier, self.bottom, acc)

    def leq(self, f: WeightedFunction, g: WeightedFunction) -> bool:
        return all(self._leq(a, g(x)) for x, a in f.items.items())

    # -- enumeration
    def function_count(self) -> int:
        return len(self.weights.elements) ** len(self.carrier)

    def functions(self) -> Iterable[WeightedFunction]:
        els = self.weights.elements
        for values in itertools.product(els, repeat=len(self.carrier)):
            yield WeightedFunction(self.carrier, self.bottom, zip(self.carrier, values))

    def deltas(self) -> list[WeightedFunction]:
        return [self.delta(x, a) for x in self.carrier
                for a in self.weights.elements if a != self.bottom]

    def random_function(self, rng: random.Random, density: float = 0.5) -> WeightedFunction:
        nonzero = [a for a in self.weights.elements if a != self.bottom]
        return self.function({x: rng.choice(nonzero) for x in self.carrier
                              if rng.random() < density})

    def show(self, f: WeightedFunction) -> str:
        return str(f)


# ------------------------------------------------------------ lifted laws

def _law_shape(l: LiftedAlgebra, law: str):
    """Map a law name to ``(shape, ops)`` over the lifted algebra."""
    name = law.strip().lower().replace("-", "_")
    if name in ("assoc_seq", "assoc_par"):
        ops = l if name == "assoc_seq" else Swap(l)
        return ASSOC, ops
    if name in ("comm_seq", "comm_par"):
        ops = Single(l.seq if name == "comm_seq" else l.par)
        return COMM, ops
    if name in ("unit_seq", "unit_par"):
        which = name[5:]
        e = l.unit_function(which)
        op = l.seq if which == "seq" else l.par
        shape = Shape(name, 1, lambda o, f: _both_sides(op, e, f), lambda o, f: f, eq=True)
        return shape, l
    return INTERCHANGE[parse_interchange_index(name)], l


def _both_sides(op, e, f):
    # evaluates to f exactly when e is a two-sided unit for f
    left, right = op(e, f), op(f, e)
    return left if left == right else (left, right)


def _canonical_law(law: str) -> str:
    name = law.strip().lower().replace("-", "_")
    if name.startswith("i") or name.isdigit() or name.startswith("ai"):
        return "I" + str(parse_interchange_index(name))
    return name


def _holds(l: LiftedAlgebra, shape: Shape, ops, args) -> bool:
    lhs = shape.lhs(ops, *args)
    rhs = shape.rhs(ops, *args)
    if shape.eq:
        return lhs == rhs
    return l.leq(lhs, rhs)


def principal_downsets(l: LiftedAlgebra, preorder) -> list[WeightedFunction]:
    """Functions ``a`` on the down-closure of one element, for all ``x`` and ``a``."""
    out = []
    for x in l.carrier:
        below = down_closure([x], preorder, l.carrier)
        for a in l.weights.elements:
            if a != l.bottom:
                out.append(l.function({y: a for y in below}))
    return out


def generated_fragment(l: LiftedAlgebra, limit: int | None = None) -> list[WeightedFunction]:
    """Deltas, the zero function and all binary convolutions of deltas."""
    seen: dict = {l.zero(): None}
    ds = l.deltas()
    for d in ds:
        seen.setdefault(d, None)
    for f, g in itertools.product(ds, repeat=2):
        for h in (l.seq(f, g), l.par(f, g)):
            seen.setdefault(h, None)
        if limit is not None and len(seen) >= limit:
            break
    return list(seen)


def check_lifted_laws(l: LiftedAlgebra, law: str, budget: int = 4096,
                      domain: str | None = None, preorder=None,
                      strategy: str | None = None) -> LawResult:
    """Check one law of the convolution algebra.

    Strategies, in order of preference:

    * ``exhaustive`` -- every tuple of functions, when ``|Q^X|^arity`` fits
      in ``budget``;
    * ``delta-complete`` -- both weight compositions preserve binary joins
      and bottom, so both sides of every law are join-preserving in each
      argument and it suffices to test tuples of deltas ``a`` at ``x``;
    * ``generated-fragment`` -- deltas and their binary convolutions, up to
      ``budget`` tuples; evidence only.

    With ``domain="antitone"`` the law is checked on the antitone functions
    for ``preorder``: every such function is the join of ``a`` times the
    indicator of ``down(x)``, so those generators are complete in the
    prequantale case (strategy ``antitone-generated``).

    Passing ``strategy`` forces one of the first three.
    """
    shape, ops = _law_shape(l, law)
    name = _canonical_law(law)
    arity = shape.arity
    prequantale = l.is_prequantale()
    if strategy is not None:
        if strategy == "delta-complete" and not prequantale:
            raise ValueError("delta-complete needs join-preserving compositions")
        forced = strategy
    elif domain is None and l.function_count() ** arity <= budget:
        forced = "exhaustive"
    elif domain is None and prequantale:
        forced = "delta-complete"
    else:
        forced = "generated-fragment"
    if domain == "antitone":
        if preorder is None:
            raise ValueError("antitone domain needs a preorder")
        gens = [l.zero()] + principal_downsets(l, preorder)
        strategy = "antitone-generated" if prequantale else "antitone-sampled"
        if not prequantale:
            gens = list(antitone_functions(l, preorder, limit=budget))
        candidates = gens
    elif domain is not None:
        raise ValueError(f"unknown domain {domain!r}")
    elif forced == "exhaustive":
        strategy = "exhaustive"
        # deltas first, so witnesses are as small as possible
        rest = [f for f in l.functions() if len(f.items) > 1]
        candidates = [l.zero()] + l.deltas() + rest
    elif forced == "delta-complete":
        strategy = "delta-complete"
        candidates = l.deltas()
    else:
        strategy = "generated-fragment"
        candidates = generated_fragment(l)
    tried = 0
    for args in itertools.product(candidates, repeat=arity):
        if strategy == "generated-fragment" and tried >= budget:
            break
        tried += 1
        if not _holds(l, shape, ops, args):
            return LawResult(name, False, args, strategy)
    note = ""
    if strategy == "generated-fragment":
        note = f"{tried} tuples from the delta-generated fragment; evidence only"
    return LawResult(name, True, None, strategy, note)


LIFTED_SUITE = ("assoc_seq", "assoc_par", "unit_seq", "unit_par",
                "comm_par", "I1", "I2", "I3", "I4", "I5", "I6", "I7")


# ------------------------------------------------------------ stars

def _single_unit(m: RelMagma):
    if not m.units:
        raise NotUnital("star needs a unit set")
    if len(m.units) != 1:
        raise MultipleUnits("the graded star needs a single unit")
    (e,) = m.units
    return e


def _evaluation_order(m: RelMagma, e, grading) -> list:
    """Carrier elements so that every ``z`` used for ``x`` comes before ``x``."""
    if grading is not None:
        from .relstruct import check_grading
        rep = check_grading(m, grading, {e})
        if not rep.ok:
            raise NotGraded(rep.failed()[0].line())
        g = grading.grade if hasattr(grading, "grade") else grading
        return sorted(m.carrier, key=lambda x: (g[x], m.index(x)))
    order: list = []
    state: dict = {}
    for root in m.carrier:
        if root in state:
            continue
        stack = [(root, iter(m.decompositions(root)))]
        state[root] = 1
        while stack:
            x, it = stack[-1]
            advanced = False
            for y, z in it:
                if y == e:
                    continue
                if state.get(z) == 1:
                    raise NotGraded(f"decompositions of {show_element(x)} are not well-founded")
                if z not in state:
                    state[z] = 1
                    stack.append((z, iter(m.decompositions(z))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                state[x] = 2
                order.append(x)
    return order


def star_graded(f: WeightedFunction, m: RelMagma, k: KleeneAlgebraTable,
                grading=None) -> WeightedFunction:
    """Star of ``f`` in K^X by recursion on a grading.

    ``f*(e) = (f e)*`` and ``f*(x) = (f e)* . sum f y . f*(z)`` over the
    decompositions of ``x`` with ``y != e``.  Without an explicit grading
    the evaluation order is found by depth-first search, and a cycle
    raises :class:`NotGraded`.
    """
    e = _single_unit(m)
    fe_star = k.star[f(e)]
    out: dict = {}
    for x in _evaluation_order(m, e, grading):
        if x == e:
            out[x] = fe_star
            continue
        acc = k.zero
        for y, z in m.decompositions(x):
            if y == e:
                continue
            acc = k.add(acc, k.mul(f(y), out[z]))
        out[x] = k.mul(fe_star, acc)
    return WeightedFunction(f.carrier, k.zero, out)


def iterative_star(f: WeightedFunction, m: RelMagma, q: FiniteQuantale) -> WeightedFunction:
    """Least fixpoint of ``g -> id_E v (f * g)`` by iteration from bottom."""
    if q.unit is None:
        raise NotUnital("iterative star needs a unital quantale")
    if not m.units:
        raise NotUnital("iterative star needs a unit set")
    l = LiftedAlgebra(m, q)
    ident = l.function({e: q.unit for e in m.units})
    g = l.zero()
    while True:
        nxt = l.join(ident, l.seq(f, g))
        if nxt == g:
            return g
        g = nxt


# ------------------------------------------------------------ antitone functions

def _preorder_pairs(preorder):
    if callable(preorder):
        return preorder
    pairs = frozenset(preorder)
    return lambda x, y: x == y or (x, y) in pairs


def down_closure(s: Iterable, preorder, carrier: Iterable) -> set:
    leq = _preorder_pairs(preorder)
    s = list(s)
    return {x for x in carrier if any(leq(x, y) for y in s)}


def is_antitone(f: WeightedFunction, preorder, leq_weights: Callable) -> bool:
    """``x <= y`` implies ``f y <= f x``."""
    leq = _preorder_pairs(preorder)
    for x in f.carrier:
        for y in f.carrier:
            if leq(x, y) and not leq_weights(f(y), f(x)):
                return False
    return True


def antitone_functions(l: LiftedAlgebra, preorder, limit: int | None = None):
    """Enumerate antitone functions by backtracking in carrier order."""
    leq = _preorder_pairs(preorder)
    carrier = l.carrier
    wleq = l.weights.lattice.leq
    els = l.weights.elements
    values: dict = {}
    count = 0

    def rec(i):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if i == len(carrier):
            count += 1
            yield WeightedFunction(carrier, l.bottom, dict(values))
            return
        x = carrier[i]
        for a in els:
            ok = True
            for y, b in values.items():
                if leq(x, y) and not wleq(b, a):
                    ok = False
                    break
                if leq(y, x) and not wleq(a, b):
                    ok = False
                    break
            if ok:
                values[x] = a
                yield from rec(i + 1)
                del values[x]

    yield from rec(0)
