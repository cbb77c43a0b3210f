"""Finite relational magmas and bi-magmas.

A triple ``(x, y, z)`` in a relation means that ``x`` is one way of
composing ``y`` with ``z``.  Reading a relation as a multioperation
``y (.) z = {x | (x, y, z)}`` and extending it to sets turns every
relational law into an inclusion between sets, which is how the
interchange checkers evaluate the shared term shapes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import MalformedTable
from .laws import ASSOC, COMM, DEGENERACY, INTERCHANGE, LawReport, LawResult, Shape


def _freeze_triples(carrier, rel, what: str) -> frozenset:
    known = set(carrier)
    out = set()
    for t in rel:
        x, y, z = t
        for e in (x, y, z):
            if e not in known:
                raise MalformedTable(f"{what}: unknown element {e!r}")
        out.add((x, y, z))
    return frozenset(out)


def _freeze_units(carrier, units, what: str):
    if units is None:
        return None
    units = frozenset(units)
    bad = units - set(carrier)
    if bad:
        raise MalformedTable(f"{what}: unknown unit(s) {sorted(map(str, bad))}")
    return units


@dataclass(frozen=True, eq=False)
class RelMagma:
    carrier: tuple
    rel: frozenset
    units: frozenset | None = None

    def __post_init__(self):
        carrier = tuple(self.carrier)
        if len(set(carrier)) != len(carrier):
            raise MalformedTable("duplicate carrier element")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "rel", _freeze_triples(carrier, self.rel, "relation"))
        object.__setattr__(self, "units", _freeze_units(carrier, self.units, "units"))
        by_pair: dict = {}
        by_result: dict = {}
        for x, y, z in self.rel:
            by_pair.setdefault((y, z), set()).add(x)
            by_result.setdefault(x, set()).add((y, z))
        index = {e: i for i, e in enumerate(carrier)}
        object.__setattr__(self, "by_pair", {k: frozenset(v) for k, v in by_pair.items()})
        object.__setattr__(self, "by_result", {
            k: tuple(sorted(v, key=lambda p: (index[p[0]], index[p[1]])))
            for k, v in by_result.items()})
        object.__setattr__(self, "_index", index)

    def index(self, x) -> int:
        return self._index[x]

    def holds(self, x, y, z) -> bool:
        return (x, y, z) in self.rel

    def op(self, y, z) -> frozenset:
        """The multioperation: everything that ``y`` and ``z`` compose to."""
        return self.by_pair.get((y, z), frozenset())

    def op_sets(self, ys: Iterable, zs: Iterable) -> frozenset:
        zs = tuple(zs)
        out: set = set()
        for y in ys:
            for z in zs:
                out |= self.by_pair.get((y, z), frozenset())
        return frozenset(out)

    def decompositions(self, x) -> tuple:
        """Pairs ``(y, z)`` with ``(x, y, z)`` in the relation, in carrier order."""
        return self.by_result.get(x, ())

    def with_units(self, units) -> RelMagma:
        return RelMagma(self.carrier, self.rel, units)

    def sort_key(self, x):
        return self._index[x]


@dataclass(frozen=True, eq=False)
class RelBiMagma:
    carrier: tuple
    rel_seq: frozenset
    rel_par: frozenset
    units_seq: frozenset | None = None
    units_par: frozenset | None = None

    def __post_init__(self):
        carrier = tuple(self.carrier)
        object.__setattr__(self, "carrier", carrier)
        seq = RelMagma(carrier, self.rel_seq, self.units_seq)
        par = RelMagma(carrier, self.rel_par, self.units_par)
        object.__setattr__(self, "rel_seq", seq.rel)
        object.__setattr__(self, "rel_par", par.rel)
        object.__setattr__(self, "units_seq", seq.units)
        object.__setattr__(self, "units_par", par.units)
        object.__setattr__(self, "seq_magma", seq)
        object.__setattr__(self, "par_magma", par)

    @classmethod
    def from_magmas(cls, seq: RelMagma, par: RelMagma) -> RelBiMagma:
        if seq.carrier != par.carrier:
            raise MalformedTable("the two magmas have different carriers")
        return cls(seq.carrier, seq.rel, par.rel, seq.units, par.units)

    def magma(self, which: str) -> RelMagma:
        if which == "seq":
            return self.seq_magma
        if which == "par":
            return self.par_magma
        raise ValueError(which)

    def index(self, x) -> int:
        return self.seq_magma.index(x)

    def swapped(self) -> RelBiMagma:
        return RelBiMagma(self.carrier, self.rel_par, self.rel_seq, self.units_par, self.units_seq)


class SetOps:
    """Set-extended multioperations of a bi-magma, as ``seq``/``par``.

    Singleton arguments go straight to the pair index.
    """

    def __init__(self, seq: RelMagma, par: RelMagma | None = None):
        self._seq = seq
        self._par = par if par is not None else seq

    @staticmethod
    def _apply(m: RelMagma, a, b):
        if len(a) == 1 and len(b) == 1:
            (y,), (z,) = a, b
            return m.op(y, z)
        return m.op_sets(a, b)

    def seq(self, a, b):
        return self._apply(self._seq, a, b)

    def par(self, a, b):
        return self._apply(self._par, a, b)


def _ops(b) -> SetOps:
    if isinstance(b, RelBiMagma):
        return SetOps(b.seq_magma, b.par_magma)
    return SetOps(b)


def _shape_check(b, shape: Shape, name: str | None = None) -> LawResult:
    """Check ``lhs <= rhs`` (or ``=``) over singleton arguments.

    The witness is ``(x, args...)``: the first argument tuple in carrier
    order that fails, with the smallest offending ``x``.
    """
    ops = _ops(b)
    carrier = b.carrier
    single = {x: frozenset([x]) for x in carrier}
    index = {x: i for i, x in enumerate(carrier)}
    for args in itertools.product(carrier, repeat=shape.arity):
        sets = [single[a] for a in args]
        lhs = shape.lhs(ops, *sets)
        rhs = shape.rhs(ops, *sets)
        bad = lhs - rhs
        if shape.eq:
            bad = bad | (rhs - lhs)
        if bad:
            x = min(bad, key=index.__getitem__)
            return LawResult(name or shape.name, False, (x, *args))
    return LawResult(name or shape.name, True)


def check_rel_assoc(m: RelMagma) -> LawResult:
    """Both directions of relational associativity, for all ``x, u, v, w``."""
    return _shape_check(m, ASSOC, "rel-assoc")


def check_rel_comm(m: RelMagma) -> LawResult:
    return _shape_check(m, COMM, "rel-comm")


def check_rel_units(m: RelMagma, units=None) -> LawReport:
    units = m.units if units is None else frozenset(units)
    if units is None:
        units = frozenset()
    carrier = m.carrier
    E = [e for e in carrier if e in units]
    rep = LawReport("relational units")

    def existence(name, holds):
        for x in carrier:
            if not any(holds(x, e) for e in E):
                return LawResult(name, False, (x,))
        return LawResult(name, True)

    rep.add(existence("left-existence", lambda x, e: m.holds(x, e, x)))

    def uniqueness(name, left: bool):
        for e in E:
            for x in carrier:
                for y, z in m.decompositions(x):
                    other = z if left else y
                    unit = y if left else z
                    if unit == e and other != x:
                        return LawResult(name, False, (x, e, other))
        return LawResult(name, True)

    rep.add(uniqueness("left-uniqueness", True))
    rep.add(existence("right-existence", lambda x, e: m.holds(x, x, e)))
    rep.add(uniqueness("right-uniqueness", False))
    return rep


def check_relational_interchange(b: RelBiMagma, k: int) -> LawResult:
    shape = INTERCHANGE[k]
    return _shape_check(b, shape, "R" + shape.name)


def relational_degeneracy_witness(b: RelBiMagma, k: int):
    shape = DEGENERACY[k]
    ops = _ops(b)
    single = {x: frozenset([x]) for x in b.carrier}
    for args in itertools.product(b.carrier, repeat=shape.arity):
        if shape.lhs(ops, *(single[a] for a in args)):
            return args
    return None


def check_relational_degeneracy(b: RelBiMagma, k: int) -> bool:
    """Does the existential condition ``RDk`` hold?"""
    return relational_degeneracy_witness(b, k) is not None


@dataclass(frozen=True)
class Grading:
    grade: Mapping

    def __call__(self, x) -> int:
        return self.grade[x]


def check_grading(m: RelMagma, g: Grading | Mapping, units=None) -> LawReport:
    if not isinstance(g, Grading):
        g = Grading(dict(g))
    units = m.units if units is None else frozenset(units)
    units = units or frozenset()
    rep = LawReport("grading")
    missing = [x for x in m.carrier if x not in g.grade]
    if missing:
        raise MalformedTable(f"grading misses {missing[0]!r}")
    bad = next((x for x in m.carrier if x not in units and g(x) <= 0), None)
    rep.add(LawResult("positive-off-units", bad is None, None if bad is None else (bad,)))
    bad3 = None
    for x in m.carrier:
        for y, z in m.decompositions(x):
            if g(x) != g(y) + g(z):
                bad3 = (x, y, z)
                break
        if bad3:
            break
    rep.add(LawResult("additive", bad3 is None, bad3))
    bad = next((x for x in m.carrier if (g(x) == 0) != (x in units)), None)
    rep.add(LawResult("zero-exactly-on-units", bad is None, None if bad is None else (bad,)))
    return rep


def functional_witness(m: RelMagma):
    for y in m.carrier:
        for z in m.carrier:
            xs = m.op(y, z)
            if len(xs) > 1:
                a, b = sorted(xs, key=m.index)[:2]
                return (a, y, z), (b, y, z)
    return None


def is_functional(m: RelMagma) -> bool:
    return functional_witness(m) is None


def as_multioperation(m: RelMagma, y, z) -> frozenset:
    return m.op(y, z)


def relabel_magma(m: RelMagma, mapping: Mapping) -> RelMagma:
    carrier = tuple(mapping[x] for x in m.carrier)
    rel = {(mapping[x], mapping[y], mapping[z]) for x, y, z in m.rel}
    units = None if m.units is None else {mapping[e] for e in m.units}
    return RelMagma(carrier, rel, units)


def find_units(m: RelMagma) -> frozenset | None:
    """The unit set of ``m`` if one exists.

    Candidates are the elements that never change what they compose with.
    If some unit set exists it is contained in the candidates, and every
    candidate ``c`` is a unit: left existence gives ``R^c_{ec}`` for a unit
    ``e``, and ``c`` acting neutrally on the right forces ``e = c``.
    """
    carrier = m.carrier
    # an element can be a unit only if composing with it never changes anything
    cand = [e for e in carrier
            if all(z == x for x in carrier for y, z in m.decompositions(x) if y == e)
            and all(y == x for x in carrier for y, z in m.decompositions(x) if z == e)]
    rep = check_rel_units(m, cand)
    return frozenset(cand) if rep.ok else None


def summary(b: RelBiMagma | RelMagma) -> dict:
    if isinstance(b, RelBiMagma):
        return {"carrier": len(b.carrier), "seq": len(b.rel_seq), "par": len(b.rel_par)}
    return {"carrier": len(b.carrier), "rel": len(b.rel)}
