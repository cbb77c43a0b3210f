"""Partial monoids, preordered partial monoids and partial interchange monoids.

A partial composition is stored as a table over its domain of definition
only; applying it outside that domain raises :class:`Undefined`.
Preorders are given either as a set of pairs ``(x, y)`` meaning
``x <= y`` (reflexivity is implied) or as a predicate, which lets large
carriers decide the order on demand.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import MalformedTable, MultipleUnits, PreconditionError, Undefined
from .laws import LawReport, LawResult
from .relstruct import RelBiMagma, RelMagma


@dataclass(frozen=True, eq=False)
class PartialMonoid:
    carrier: tuple
    table: Mapping
    units: frozenset

    def __post_init__(self):
        carrier = tuple(self.carrier)
        object.__setattr__(self, "carrier", carrier)
        known = set(carrier)
        table = dict(self.table)
        for (x, y), z in table.items():
            for e in (x, y, z):
                if e not in known:
                    raise MalformedTable(f"unknown element {e!r}")
        units = frozenset(self.units)
        if units - known:
            raise MalformedTable("unknown unit")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "units", units)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(carrier)})

    @property
    def domain(self) -> frozenset:
        return frozenset(self.table)

    def defined(self, x, y) -> bool:
        return (x, y) in self.table

    def mul(self, x, y):
        try:
            return self.table[(x, y)]
        except KeyError:
            raise Undefined(f"composition undefined on ({x!r}, {y!r})") from None

    def get(self, x, y):
        """Composite of ``x`` and ``y``, or ``None`` when undefined."""
        return self.table.get((x, y))

    def index(self, x) -> int:
        return self._index[x]


def _leq_from(preorder) -> Callable:
    if callable(preorder):
        cache: dict = {}

        def leq(x, y):
            if x == y:
                return True
            key = (x, y)
            if key not in cache:
                cache[key] = bool(preorder(x, y))
            return cache[key]
        return leq
    pairs = frozenset(preorder)
    return lambda x, y: x == y or (x, y) in pairs


@dataclass(frozen=True, eq=False)
class PreorderedPartialMonoid:
    monoid: PartialMonoid
    preorder: object

    def __post_init__(self):
        object.__setattr__(self, "leq", _leq_from(self.preorder))

    @property
    def carrier(self) -> tuple:
        return self.monoid.carrier

    def below(self, y) -> list:
        return [x for x in self.carrier if self.leq(x, y)]


@dataclass(frozen=True, eq=False)
class PartialInterchangeMonoid:
    carrier: tuple
    preorder: object
    seq: PartialMonoid
    par: PartialMonoid

    def __post_init__(self):
        carrier = tuple(self.carrier)
        object.__setattr__(self, "carrier", carrier)
        if self.seq.carrier != carrier or self.par.carrier != carrier:
            raise MalformedTable("retracts must share the carrier")
        object.__setattr__(self, "leq", _leq_from(self.preorder))
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(carrier)})

    def retract(self, which: str) -> PreorderedPartialMonoid:
        pm = self.seq if which == "seq" else self.par
        return PreorderedPartialMonoid(pm, self.leq)

    def unit(self):
        """The single shared unit, or an error."""
        if len(self.seq.units) != 1 or self.seq.units != self.par.units:
            raise MultipleUnits("expected one unit shared by both compositions")
        (e,) = self.seq.units
        return e

    def index(self, x) -> int:
        return self._index[x]


# ---------------------------------------------------------------- conversions

def to_relational(pm: PartialMonoid) -> RelMagma:
    rel = {(z, x, y) for (x, y), z in pm.table.items()}
    return RelMagma(pm.carrier, rel, pm.units)


def to_relational_preordered(p: PreorderedPartialMonoid) -> RelMagma:
    """``R^x_{yz}`` iff ``y (x) z`` is defined and ``x <= y (x) z``; no units claimed."""
    rel = set()
    for (y, z), w in p.monoid.table.items():
        for x in p.below(w):
            rel.add((x, y, z))
    return RelMagma(p.carrier, rel)


def _encode(p: PartialInterchangeMonoid, pm: PartialMonoid, encoding: str) -> set:
    if encoding == "equality":
        return {(z, x, y) for (x, y), z in pm.table.items()}
    if encoding == "preorder":
        return {(x, y, z) for (y, z), w in pm.table.items()
                for x in p.carrier if p.leq(x, w)}
    raise ValueError(f"unknown encoding {encoding!r}")


def pim_to_interchange_semigroup(p: PartialInterchangeMonoid, seq_encoding: str = "equality",
                                 par_encoding: str = "preorder") -> RelBiMagma:
    """Relational view of a partial interchange monoid.

    The default encodes the sequential composition by equality and the
    parallel one through the preorder.  Unit sets are carried over
    unchanged; under the preorder encoding they satisfy existence but
    usually not uniqueness.
    """
    return RelBiMagma(p.carrier, _encode(p, p.seq, seq_encoding), _encode(p, p.par, par_encoding),
                      p.seq.units, p.par.units)


# ---------------------------------------------------------------- checkers

def _first(results, name):
    for w in results:
        return LawResult(name, False, w)
    return LawResult(name, True)


def _monoid_laws(pm: PartialMonoid, prefix: str = "") -> list[LawResult]:
    carrier, D, get = pm.carrier, pm.table, pm.get
    out = []

    def assoc_def():
        for x, y, z in itertools.product(carrier, repeat=3):
            xy, yz = get(x, y), get(y, z)
            left = xy is not None and (xy, z) in D
            right = yz is not None and (x, yz) in D
            if left != right:
                yield (x, y, z)

    def assoc_eq():
        for (x, y), xy in D.items():
            for z in carrier:
                yz = get(y, z)
                if (xy, z) in D and yz is not None and (x, yz) in D:
                    if D[(xy, z)] != D[(x, yz)]:
                        yield (x, y, z)

    def left_unit():
        for x in carrier:
            if not any(get(e, x) == x for e in pm.units):
                yield (x,)

    def right_unit():
        for x in carrier:
            if not any(get(x, e) == x for e in pm.units):
                yield (x,)

    def unit_unique():
        for e1 in carrier:
            for e2 in carrier:
                if e1 in pm.units and e2 in pm.units and e1 != e2 and (e1, e2) in D:
                    yield (e1, e2)

    out.append(_first(assoc_def(), prefix + "assoc-definedness"))
    out.append(_first(sorted(assoc_eq(), key=lambda t: tuple(map(pm.index, t))), prefix + "assoc-equality"))
    out.append(_first(left_unit(), prefix + "left-unit"))
    out.append(_first(right_unit(), prefix + "right-unit"))
    out.append(_first(unit_unique(), prefix + "units-independent"))
    return out


def check_partial_monoid(pm: PartialMonoid) -> LawReport:
    return LawReport("partial monoid", _monoid_laws(pm))


def _preorder_laws(carrier, leq) -> list[LawResult]:
    def trans():
        for x, y, z in itertools.product(carrier, repeat=3):
            if leq(x, y) and leq(y, z) and not leq(x, z):
                yield (x, y, z)
    return [_first(trans(), "preorder-transitive")]


def _order_pairs(carrier, leq):
    return [(x, y) for x in carrier for y in carrier if x != y and leq(x, y)]


def _monotone_laws(pm: PartialMonoid, leq, pairs, prefix: str) -> list[LawResult]:
    carrier, get = pm.carrier, pm.get

    def right_arg():
        for x, y in pairs:
            for z in carrier:
                zx = get(z, x)
                if zx is None:
                    continue
                zy = get(z, y)
                if zy is None or not leq(zx, zy):
                    yield (x, y, z)

    def left_arg():
        for x, y in pairs:
            for z in carrier:
                xz = get(x, z)
                if xz is None:
                    continue
                yz = get(y, z)
                if yz is None or not leq(xz, yz):
                    yield (x, y, z)

    return [_first(right_arg(), prefix + "monotone-right"),
            _first(left_arg(), prefix + "monotone-left")]


def check_preordered_partial_monoid(p: PreorderedPartialMonoid) -> LawReport:
    pairs = _order_pairs(p.carrier, p.leq)
    rep = LawReport("preordered partial monoid", _monoid_laws(p.monoid))
    rep.results += _preorder_laws(p.carrier, p.leq)
    rep.results += _monotone_laws(p.monoid, p.leq, pairs, "")
    return rep


def pi7_failures(p: PartialInterchangeMonoid):
    """Tuples ``(w, x, y, z)`` breaking the partial interchange law."""
    s, t, leq = p.seq, p.par, p.leq
    by_left: dict = {}
    for (w, x), wx in t.table.items():
        by_left.setdefault(wx, []).append((w, x))
    for (a, b), lhs in s.table.items():
        for w, x in by_left.get(a, ()):
            for y, z in by_left.get(b, ()):
                wy, xz = s.get(w, y), s.get(x, z)
                if wy is None or xz is None:
                    yield (w, x, y, z)
                    continue
                rhs = t.get(wy, xz)
                if rhs is None or not leq(lhs, rhs):
                    yield (w, x, y, z)


def check_pim(p: PartialInterchangeMonoid) -> LawReport:
    """Retract axioms, ``E_par`` inside ``E_seq`` and the law pi7."""
    pairs = _order_pairs(p.carrier, p.leq)
    rep = LawReport("partial interchange monoid")
    rep.results += _preorder_laws(p.carrier, p.leq)
    rep.results += _monoid_laws(p.seq, "seq.")
    rep.results += _monotone_laws(p.seq, p.leq, pairs, "seq.")
    rep.results += _monoid_laws(p.par, "par.")
    rep.results += _monotone_laws(p.par, p.leq, pairs, "par.")
    extra = sorted(p.par.units - p.seq.units, key=p.index)
    rep.add(LawResult("par-units-in-seq-units", not extra, tuple(extra[:1]) or None))
    key = lambda t: tuple(map(p.index, t))
    rep.add(_first(sorted(pi7_failures(p), key=key), "pi7"))
    return rep


# Each clause: (hypothesis pairs, conclusion as (lhs, rhs)).  A clause holds
# when its left-hand term is defined only if the right-hand term is defined
# and below it.
def _small_terms(p: PartialInterchangeMonoid, k: int):
    s, t = p.seq.get, p.par.get

    def ap(op, a, b):
        return None if a is None or b is None else op(a, b)

    terms = {
        1: (2, lambda x, y: s(x, y), lambda x, y: t(x, y)),
        2: (2, lambda x, y: s(x, y), lambda x, y: t(y, x)),
        3: (3, lambda x, y, z: ap(s, x, t(y, z)), lambda x, y, z: ap(t, s(x, y), z)),
        4: (3, lambda x, y, z: ap(s, t(x, y), z), lambda x, y, z: ap(t, x, s(y, z))),
        5: (3, lambda x, y, z: ap(s, x, t(y, z)), lambda x, y, z: ap(t, y, s(x, z))),
        6: (3, lambda x, y, z: ap(s, t(x, y), z), lambda x, y, z: ap(t, s(x, z), y)),
    }
    return terms[k]


def check_small_partial_interchange(p: PartialInterchangeMonoid, k: int) -> LawResult:
    """Small partial interchange law ``k``: defined left term implies a
    defined right term above it."""
    p.unit()
    arity, lhs, rhs = _small_terms(p, k)
    for args in itertools.product(p.carrier, repeat=arity):
        left = lhs(*args)
        if left is None:
            continue
        right = rhs(*args)
        if right is None or not p.leq(left, right):
            return LawResult(f"small-{k}", False, args)
    return LawResult(f"small-{k}", True)


def check_positive(p: PartialInterchangeMonoid) -> bool:
    e = p.unit()
    return not any(p.leq(x, e) and not p.leq(e, x) for x in p.carrier)


def serial_decomposition_failure(p: PartialInterchangeMonoid):
    """A triple ``(x, y1, y2)`` with ``x <= y1 . y2`` but no matching split."""
    s = p.seq
    splits: dict = {}
    for (x1, x2), x in s.table.items():
        splits.setdefault(x, []).append((x1, x2))
    for (y1, y2), y in sorted(s.table.items(), key=lambda kv: (p.index(kv[0][0]), p.index(kv[0][1]))):
        for x in p.carrier:
            if not p.leq(x, y):
                continue
            if not any(p.leq(x1, y1) and p.leq(x2, y2) for x1, x2 in splits.get(x, ())):
                return (x, y1, y2)
    return None


def check_serially_decomposable(p: PartialInterchangeMonoid) -> bool:
    return serial_decomposition_failure(p) is None


# ---------------------------------------------------------------- presets

def interval_monoid(points: int = 3) -> PartialMonoid:
    """Closed intervals over a finite line under fusion ``[p,q][q,s] = [p,s]``."""
    ivs = [(a, b) for a in range(points) for b in range(a, points)]
    name = {iv: f"[{iv[0]},{iv[1]}]" for iv in ivs}
    table = {(name[(p, q)], name[(r, s)]): name[(p, s)]
             for (p, q) in ivs for (r, s) in ivs if q == r}
    units = {name[(a, a)] for a in range(points)}
    return PartialMonoid(tuple(name[iv] for iv in ivs), table, units)


def pair_monoid(base=("a", "b")) -> PartialMonoid:
    """Pairs over ``base`` composing like relations: ``(a,b)(b,c) = (a,c)``."""
    pairs = [(a, b) for a in base for b in base]
    name = {p: f"({p[0]},{p[1]})" for p in pairs}
    table = {(name[(a, b)], name[(c, d)]): name[(a, d)]
             for (a, b) in pairs for (c, d) in pairs if b == c}
    units = {name[(a, a)] for a in base}
    return PartialMonoid(tuple(name[p] for p in pairs), table, units)


def heaplet_monoid(addresses=("1", "2"), values=("a", "b")) -> PartialMonoid:
    """Finite partial functions under union of disjoint domains."""
    heaps = []
    for choice in itertools.product((None,) + tuple(values), repeat=len(addresses)):
        heaps.append(tuple((a, v) for a, v in zip(addresses, choice) if v is not None))

    def name(h):
        return "{" + ",".join(f"{a}:{v}" for a, v in h) + "}"

    order = {a: i for i, a in enumerate(addresses)}
    table = {}
    for h1 in heaps:
        for h2 in heaps:
            d1 = {a for a, _ in h1}
            if d1.isdisjoint(a for a, _ in h2):
                merged = tuple(sorted(h1 + h2, key=lambda av: order[av[0]]))
                table[(name(h1), name(h2))] = name(merged)
    return PartialMonoid(tuple(name(h) for h in heaps), table, {name(())})


def counterexample_pim() -> PartialInterchangeMonoid:
    """Two elements ``b < a`` plus a shared unit ``e``.

    Sequential composition is defined only on ``(a, a)`` (giving ``b``);
    parallel composition is total with ``a | a = a`` and ``b`` otherwise.
    """
    carrier = ("e", "a", "b")
    seq = {("a", "a"): "b"}
    par = {("b", "b"): "b", ("a", "b"): "b", ("b", "a"): "b", ("a", "a"): "a"}
    for x in carrier:
        seq[("e", x)] = x
        seq[(x, "e")] = x
        par[("e", x)] = x
        par[(x, "e")] = x
    return PartialInterchangeMonoid(carrier, {("b", "a")},
                                    PartialMonoid(carrier, seq, {"e"}),
                                    PartialMonoid(carrier, par, {"e"}))


def one_point_pim() -> PartialInterchangeMonoid:
    pm = PartialMonoid(("e",), {("e", "e"): "e"}, {"e"})
    return PartialInterchangeMonoid(("e",), (), pm, pm)


def require_single_unit(p: PartialInterchangeMonoid):
    try:
        return p.unit()
    except MultipleUnits as exc:
        raise PreconditionError(str(exc)) from None
