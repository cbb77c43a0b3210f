"""Correspondence checks between a relational bi-magma X, weights Q and Q^X.

Three directions are verified for each interchange law ``k``:

* lift: ``RIk`` in X and ``Ik`` in Q give ``Ik`` in Q^X;
* reflect to X: a nondegenerate Q and ``Ik`` in Q^X give ``RIk`` in X;
* reflect to Q: a nondegenerate X and ``Ik`` in Q^X give ``Ik`` in Q.

A failing verdict in any direction whose preconditions hold is a
soundness alarm.  The nondegeneracy condition for law ``k`` asks that the
left-hand term of ``k`` be nonzero (resp. nonempty) somewhere; see
:data:`convalg.laws.SIDE_CONDITION`.

The enumerations cover bi-magmas with at most two elements up to
isomorphism and every bi-prequantale on at most two elements.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .convolution import LiftedAlgebra, check_lifted_laws
from .errors import PreconditionError
from .laws import SIDE_CONDITION, LawResult
from .relstruct import (RelBiMagma, RelMagma, check_rel_assoc, check_rel_comm, check_rel_units,
                        check_relational_degeneracy, check_relational_interchange, find_units)
from .weights import (BiQuantale, FiniteLattice, FiniteQuantale, check_algebraic_interchange,
                      check_associative, check_commutative, check_degeneracy, check_prequantale,
                      is_unit)


@dataclass
class CorrespondenceReport:
    direction: str
    law: str
    side_conditions: list = field(default_factory=list)
    verdict: str = "pass"
    witness: tuple | None = None
    explanation: str = ""

    @property
    def alarm(self) -> bool:
        """Preconditions held but the conclusion failed."""
        return self.verdict == "fail"

    def __bool__(self) -> bool:
        return self.verdict != "fail"

    def to_dict(self) -> dict:
        out = {"direction": self.direction, "law": self.law,
               "side_conditions": [[n, bool(v)] for n, v in self.side_conditions],
               "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = [str(w) for w in self.witness]
        if self.explanation:
            out["explanation"] = self.explanation
        return out

    def line(self) -> str:
        conds = ", ".join(f"{n}={'yes' if v else 'no'}" for n, v in self.side_conditions)
        text = f"{self.direction} {self.law}: {self.verdict}"
        if conds:
            text += f" [{conds}]"
        if self.witness is not None:
            text += " witness (" + ", ".join(str(w) for w in self.witness) + ")"
        if self.explanation:
            text += f" -- {self.explanation}"
        return text


def _conclude(direction, law, conds, result: LawResult, why_pre: str = "") -> CorrespondenceReport:
    if not all(v for _, v in conds):
        missing = [n for n, v in conds if not v]
        return CorrespondenceReport(direction, law, conds, "precondition-failed", None,
                                    why_pre or ("missing: " + ", ".join(missing)))
    if result.holds:
        return CorrespondenceReport(direction, law, conds, "pass")
    return CorrespondenceReport(direction, law, conds, "fail", result.witness,
                                "soundness alarm: preconditions hold but the conclusion fails")


def _side_index(k: int, rule: str) -> int:
    if rule == "shape":
        return SIDE_CONDITION[k]
    if rule == "ceil-half":
        return math.ceil(k / 2)
    raise ValueError(rule)


class Instance:
    """A pair (X, Q) with per-law results memoised."""

    def __init__(self, x: RelBiMagma, q: BiQuantale | FiniteQuantale, budget: int = 4096,
                 strategy: str | None = None, x_memo: dict | None = None):
        if isinstance(q, FiniteQuantale):
            q = q.as_biquantale()
        self.x, self.q, self.budget, self.strategy = x, q, budget, strategy
        self.lifted = LiftedAlgebra(x, q)
        self._memo: dict = {}
        # results about X alone can be shared between instances with the same X
        self._x_memo = x_memo if x_memo is not None else {}

    def _get(self, key, thunk):
        if key not in self._memo:
            self._memo[key] = thunk()
        return self._memo[key]

    def ri(self, k):
        key = ("RI", k)
        if key not in self._x_memo:
            self._x_memo[key] = check_relational_interchange(self.x, k)
        return self._x_memo[key]

    def i(self, k):
        return self._get(("I", k), lambda: check_algebraic_interchange(self.q, k))

    def lifted_i(self, k):
        return self._get(("L", k), lambda: check_lifted_laws(self.lifted, f"I{k}", self.budget,
                                                             strategy=self.strategy))

    def d(self, j):
        return self._get(("D", j), lambda: check_degeneracy(self.q, j))

    def rd(self, j):
        key = ("RD", j)
        if key not in self._x_memo:
            self._x_memo[key] = check_relational_degeneracy(self.x, j)
        return self._x_memo[key]


def _instance(x, q, inst) -> Instance:
    return inst if inst is not None else Instance(x, q)


def verify_lift(x: RelBiMagma, q, k: int, strict: bool = False,
                inst: Instance | None = None) -> CorrespondenceReport:
    inst = _instance(x, q, inst)
    conds = [(f"RI{k} in X", inst.ri(k).holds), (f"I{k} in Q", inst.i(k).holds)]
    if strict and not all(v for _, v in conds):
        raise PreconditionError(f"lift of I{k}: " + ", ".join(n for n, v in conds if not v) + " fails")
    if not all(v for _, v in conds):
        return _conclude("lift", f"I{k}", conds, LawResult(f"I{k}", True))
    return _conclude("lift", f"I{k}", conds, inst.lifted_i(k))


def _singleton_note(q) -> str:
    if len(q.elements) == 1:
        return "Q is a singleton, so Q^X is a singleton and satisfies every law"
    return ""


def verify_reflect_to_X(x: RelBiMagma, q, k: int, rule: str = "shape",
                        inst: Instance | None = None) -> CorrespondenceReport:
    inst = _instance(x, q, inst)
    j = _side_index(k, rule)
    conds = [(f"D{j} in Q", inst.d(j)), (f"I{k} in Q^X", inst.lifted_i(k).holds)]
    return _conclude("reflect-to-X", f"RI{k}", conds, inst.ri(k), _singleton_note(inst.q))


def verify_reflect_to_Q(x: RelBiMagma, q, k: int, rule: str = "shape",
                        inst: Instance | None = None) -> CorrespondenceReport:
    inst = _instance(x, q, inst)
    j = _side_index(k, rule)
    conds = [(f"RD{j} in X", inst.rd(j)), (f"I{k} in Q^X", inst.lifted_i(k).holds)]
    why = "" if inst.rd(j) else "X has no nonempty instance of the left-hand term"
    return _conclude("reflect-to-Q", f"I{k}", conds, inst.i(k), why)


# ---------------------------------------------------------------- units

def _unit_instance(x: RelMagma, q: FiniteQuantale, units, one):
    bm = RelBiMagma(x.carrier, x.rel, x.rel, units, units)
    bq = BiQuantale(q.lattice, q.table, q.table, one, one)
    return LiftedAlgebra(bm, bq)


def verify_unit_correspondence(x: RelMagma, q: FiniteQuantale, clause: int,
                               units=None, one=None) -> CorrespondenceReport:
    """Clauses relating units of X, Q and Q^X for candidate ``units``/``one``.

    1. X unital with ``units`` and Q unital with ``one`` give that
       ``id_E`` is a unit of Q^X;
    2. ``id_E`` a unit of Q^X and ``one != 0`` give that ``units`` are
       relational units of X;
    3. ``id_E`` a unit of Q^X and ``units`` nonempty give that ``one`` is a
       unit of Q.
    """
    units = frozenset(x.units if units is None else units)
    one = q.unit if one is None else one
    if one is None:
        raise PreconditionError("no candidate unit in Q")
    l = _unit_instance(x, q, units, one)
    lifted = check_lifted_laws(l, "unit_seq")
    x_unital = check_rel_units(x, units).ok
    q_unital = is_unit(q, one)
    name = f"unit-{clause}"
    if clause == 1:
        conds = [("X unital", x_unital), ("Q unital", q_unital)]
        return _conclude("lift", name, conds, lifted)
    if clause == 2:
        conds = [("Q^X unital", lifted.holds), ("1 != 0", one != q.zero)]
        rep = check_rel_units(x, units)
        res = LawResult(name, rep.ok, None if rep.ok else rep.failed()[0].witness)
        note = "" if one != q.zero else "1 = 0 in Q, so id_E is the zero function"
        return _conclude("reflect-to-X", name, conds, res, note)
    if clause == 3:
        conds = [("Q^X unital", lifted.holds), ("E nonempty", bool(units))]
        return _conclude("reflect-to-Q", name, conds, LawResult(name, q_unital))
    raise ValueError(f"no unit clause {clause}")


def verify_unit_inclusion(x: RelBiMagma, q: BiQuantale) -> list[CorrespondenceReport]:
    """Parallel identity below sequential identity, in its three clauses
    and as an equivalence."""
    if x.units_seq is None or x.units_par is None or q.unit_seq is None or q.unit_par is None:
        raise PreconditionError("needs unit sets in X and units in Q")
    l = LiftedAlgebra(x, q)
    below = l.leq(l.unit_function("par"), l.unit_function("seq"))
    incl = x.units_par <= x.units_seq
    ones = q.leq(q.unit_par, q.unit_seq)
    par_nonzero = q.unit_par != q.zero
    nonempty = bool(x.units_par)
    fn = LawResult("id_par <= id_seq", below)
    out = [
        _conclude("lift", "unit-inclusion-1", [("E_par in E_seq", incl), ("1_par <= 1_seq", ones)], fn),
        _conclude("reflect-to-X", "unit-inclusion-2", [("id_par <= id_seq", below),
                                                       ("1_par != 0", par_nonzero)],
                  LawResult("E_par in E_seq", incl)),
        _conclude("reflect-to-Q", "unit-inclusion-3", [("id_par <= id_seq", below),
                                                       ("E_par nonempty", nonempty)],
                  LawResult("1_par <= 1_seq", ones)),
    ]
    conds = [("E_par nonempty", nonempty), ("1_par != 0", par_nonzero)]
    out.append(_conclude("equivalence", "unit-inclusion-iff", conds,
                         LawResult("iff", below == (incl and ones))))
    return out


# ---------------------------------------------------------------- associativity, commutativity

def verify_assoc_comm_corollaries(x: RelMagma, q: FiniteQuantale) -> list[CorrespondenceReport]:
    """Associativity and commutativity read as one-colour interchange laws.

    The third commutativity clause uses a nonempty relation as its side
    condition.
    """
    l = LiftedAlgebra(x, q)
    lifted_assoc = check_lifted_laws(l, "assoc_seq")
    lifted_comm = check_lifted_laws(l, "comm_seq")
    x_assoc, q_assoc = check_rel_assoc(x), check_associative(q)
    x_comm, q_comm = check_rel_comm(x), check_commutative(q)
    els, mul, zero = q.elements, q.mul, q.zero
    q_nondeg_assoc = any(mul(a, mul(b, c)) != zero and mul(mul(a, b), c) != zero
                         for a, b, c in itertools.product(els, repeat=3))
    x_nondeg_assoc = any(x.holds(z, v, w) and x.holds(y, u, v)
                         for xx in x.carrier
                         for u, z in x.decompositions(xx)
                         for y, w in x.decompositions(xx)
                         for v in x.carrier)
    q_nondeg_comm = any(mul(a, b) != zero for a, b in itertools.product(els, repeat=2))
    x_nonempty = bool(x.rel)
    out = [
        _conclude("lift", "assoc-1", [("X assoc", x_assoc.holds), ("Q assoc", q_assoc.holds)], lifted_assoc),
        _conclude("reflect-to-X", "assoc-2", [("Q^X assoc", lifted_assoc.holds),
                                              ("Q nondegenerate", q_nondeg_assoc)], x_assoc),
        _conclude("reflect-to-Q", "assoc-3", [("Q^X assoc", lifted_assoc.holds),
                                              ("X nondegenerate", x_nondeg_assoc)], q_assoc),
        _conclude("lift", "comm-1", [("X comm", x_comm.holds), ("Q comm", q_comm.holds)], lifted_comm),
        _conclude("reflect-to-X", "comm-2", [("Q^X comm", lifted_comm.holds),
                                             ("Q nondegenerate", q_nondeg_comm)], x_comm),
        _conclude("reflect-to-Q", "comm-3", [("Q^X comm", lifted_comm.holds),
                                             ("X relation nonempty", x_nonempty)], q_comm),
    ]
    units = x.units if x.units is not None else find_units(x)
    if units is not None and q.unit is not None:
        nontrivial = bool(units) and q.unit != zero
        iff = lifted_assoc.holds == (x_assoc.holds and q_assoc.holds)
        out.append(_conclude("equivalence", "assoc-unital-iff", [("E nonempty, 1 != 0", nontrivial)],
                             LawResult("iff", iff)))
        iff = lifted_comm.holds == (x_comm.holds and q_comm.holds)
        out.append(_conclude("equivalence", "comm-unital-iff", [("E nonempty, 1 != 0", nontrivial)],
                             LawResult("iff", iff)))
    return out


# ---------------------------------------------------------------- redundancy, Eckmann-Hilton

def verify_redundancy(obj) -> list[CorrespondenceReport]:
    """Laws 1-6 from law 7 and a shared unit (unit set)."""
    out = []
    if isinstance(obj, RelBiMagma):
        shared = (obj.units_seq is not None and obj.units_seq == obj.units_par
                  and check_rel_units(obj.seq_magma).ok and check_rel_units(obj.par_magma).ok)
        seven = check_relational_interchange(obj, 7).holds
        for k in range(1, 7):
            out.append(_conclude("derive", f"RI{k}", [("RI7", seven), ("shared unit set", shared)],
                                 check_relational_interchange(obj, k)))
        return out
    q = obj
    shared = (q.unit_seq is not None and q.unit_seq == q.unit_par
              and is_unit(q, q.unit_seq, "seq") and is_unit(q, q.unit_par, "par"))
    seven = check_algebraic_interchange(q, 7).holds
    for k in range(1, 7):
        out.append(_conclude("derive", f"I{k}", [("I7", seven), ("shared unit", shared)],
                             check_algebraic_interchange(q, k)))
    return out


def verify_relational_eckmann_hilton(x: RelBiMagma) -> list[CorrespondenceReport]:
    """RI7 gives ``E_seq`` inside ``E_par``; with the reverse inclusion too,
    RI1-RI6 follow."""
    unital = (x.units_seq is not None and x.units_par is not None
              and check_rel_units(x.seq_magma).ok and check_rel_units(x.par_magma).ok)
    seven = check_relational_interchange(x, 7).holds
    conds = [("unital", unital), ("RI7", seven)]
    out = [_conclude("derive", "E_seq in E_par", conds,
                     LawResult("E_seq in E_par", bool(unital and x.units_seq <= x.units_par)))]
    back = bool(unital and x.units_par <= x.units_seq)
    for k in range(1, 7):
        out.append(_conclude("derive", f"RI{k}", conds + [("E_par in E_seq", back)],
                             check_relational_interchange(x, k)))
    return out


# ---------------------------------------------------------------- theorem

def is_relational_interchange_monoid(x: RelBiMagma) -> bool:
    return (x.units_seq is not None and x.units_seq == x.units_par
            and check_rel_assoc(x.seq_magma).holds and check_rel_assoc(x.par_magma).holds
            and check_rel_units(x.seq_magma).ok and check_rel_units(x.par_magma).ok
            and check_relational_interchange(x, 7).holds)


def is_interchange_quantale(q: BiQuantale) -> bool:
    return (q.unit_seq is not None and q.unit_seq == q.unit_par and check_prequantale(q)
            and check_associative(q, "seq").holds and check_associative(q, "par").holds
            and is_unit(q, q.unit_seq, "seq") and is_unit(q, q.unit_par, "par")
            and check_algebraic_interchange(q, 7).holds)


def lifted_interchange_quantale(l: LiftedAlgebra, budget: int = 4096) -> LawResult:
    """Both lifted compositions associative with the shared unit, and I7."""
    if l.base.units_seq != l.base.units_par or l.weights.unit_seq != l.weights.unit_par:
        return LawResult("interchange-quantale", False, None, note="units not shared")
    for law in ("assoc_seq", "assoc_par", "unit_seq", "unit_par", "I7"):
        r = check_lifted_laws(l, law, budget)
        if not r.holds:
            return LawResult("interchange-quantale", False, r.witness, r.strategy, note=law)
    return LawResult("interchange-quantale", True)


def verify_theorem(x: RelBiMagma, q: BiQuantale) -> list[CorrespondenceReport]:
    x_ok, q_ok = is_relational_interchange_monoid(x), is_interchange_quantale(q)
    if x.units_seq is None or x.units_seq != x.units_par:
        x_units = x.units_seq or frozenset()
    else:
        x_units = x.units_seq
    one = q.unit_seq if q.unit_seq == q.unit_par else None
    if one is None:
        return [CorrespondenceReport("theorem", "interchange-quantale", [], "precondition-failed",
                                     None, "Q has no shared unit candidate")]
    bm = RelBiMagma(x.carrier, x.rel_seq, x.rel_par, x_units, x_units)
    l = LiftedAlgebra(bm, q)
    lifted = lifted_interchange_quantale(l)
    return [
        _conclude("lift", "theorem-1", [("X interchange monoid", x_ok), ("Q interchange quantale", q_ok)], lifted),
        _conclude("reflect-to-X", "theorem-2", [("Q^X interchange quantale", lifted.holds),
                                                ("1 != 0", one != q.zero)],
                  LawResult("X", is_relational_interchange_monoid(bm))),
        _conclude("reflect-to-Q", "theorem-3", [("Q^X interchange quantale", lifted.holds),
                                                ("E nonempty", bool(x_units))],
                  LawResult("Q", q_ok)),
    ]


# ---------------------------------------------------------------- enumeration

def _triples(carrier):
    return list(itertools.product(carrier, repeat=3))


def enumerate_bimagmas(size: int):
    """Relational bi-magmas on ``size`` elements, one per isomorphism class.

    Each pair of relations is kept only if its encoding is minimal among
    all relabellings of the carrier.
    """
    carrier = tuple(str(i) for i in range(size))
    slots = _triples(carrier)
    perms = [dict(zip(carrier, p)) for p in itertools.permutations(carrier)]
    index = {t: i for i, t in enumerate(slots)}
    n = len(slots)
    moved = [[index[(p[a], p[b], p[c])] for (a, b, c) in slots] for p in perms[1:]]

    def image(mask, mv):
        out = 0
        for i in range(n):
            if mask >> i & 1:
                out |= 1 << mv[i]
        return out

    for s_mask in range(1 << n):
        for p_mask in range(1 << n):
            if any((image(s_mask, mv), image(p_mask, mv)) < (s_mask, p_mask) for mv in moved):
                continue
            seq = {slots[i] for i in range(n) if s_mask >> i & 1}
            par = {slots[i] for i in range(n) if p_mask >> i & 1}
            yield RelBiMagma(carrier, seq, par,
                             find_units(RelMagma(carrier, seq)), find_units(RelMagma(carrier, par)))


def enumerate_biquantales(size: int):
    """Bi-prequantales whose lattice is the chain of ``size`` <= 2 elements.

    Compositions preserving joins and bottom on a chain ``0 < 1`` are fixed
    by the value of ``1 . 1``, so there are four; one element gives one.
    """
    if size == 1:
        lat = FiniteLattice(("0",), frozenset())
        t = {("0", "0"): "0"}
        yield BiQuantale(lat, t, t, "0", "0")
        return
    if size != 2:
        raise ValueError("only chains with one or two elements are enumerated")
    lat = FiniteLattice.chain(["0", "1"])
    for s, p in itertools.product("01", repeat=2):
        ts = {("0", "0"): "0", ("0", "1"): "0", ("1", "0"): "0", ("1", "1"): s}
        tp = {("0", "0"): "0", ("0", "1"): "0", ("1", "0"): "0", ("1", "1"): p}
        yield BiQuantale(lat, ts, tp, "1" if s == "1" else None, "1" if p == "1" else None)


def describe_bimagma(x: RelBiMagma) -> str:
    def rel(r):
        return "{" + " ".join(f"{a}<-{b}{c}" for a, b, c in sorted(r)) + "}"
    return f"X[{len(x.carrier)}] seq={rel(x.rel_seq)} par={rel(x.rel_par)}"


def describe_biquantale(q: BiQuantale) -> str:
    if len(q.elements) == 1:
        return "Q[1] singleton"
    return f"Q[2] 1.1={q.seq('1', '1')} 1|1={q.par('1', '1')}"


def _check_x(args) -> dict:
    x, qs, rule, strategy = args
    alarms, counts = [], {"lift": 0, "reflect-to-X": 0, "reflect-to-Q": 0}
    x_memo: dict = {}
    for q in qs:
        inst = Instance(x, q, strategy=strategy, x_memo=x_memo)
        for k in range(1, 8):
            reps = (verify_lift(x, q, k, inst=inst),
                    verify_reflect_to_X(x, q, k, rule=rule, inst=inst),
                    verify_reflect_to_Q(x, q, k, rule=rule, inst=inst))
            for rep in reps:
                if rep.verdict == "pass":
                    counts[rep.direction] += 1
                if rep.alarm:
                    alarms.append((describe_bimagma(x), describe_biquantale(q), rep.line()))
    return {"alarms": alarms, "counts": counts}


@dataclass
class SuiteResult:
    pairs: int = 0
    alarms: list = field(default_factory=list)
    verified: dict = field(default_factory=lambda: {"lift": 0, "reflect-to-X": 0, "reflect-to-Q": 0})
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return not self.alarms


def correspondence_suite(max_x: int = 2, max_q: int = 2, budget: int = 10 ** 6,
                         jobs: int = 1, rule: str = "shape",
                         strategy: str | None = "delta-complete") -> SuiteResult:
    """Run all three directions for all seven laws on every enumerated pair.

    ``budget`` caps the number of (X, Q) pairs.  The lifted laws default to
    the delta-complete strategy, which is exact for bi-prequantales.
    """
    qs = [q for n in range(1, max_q + 1) for q in enumerate_biquantales(n)]
    res = SuiteResult()

    def work():
        for n in range(1, max_x + 1):
            for x in enumerate_bimagmas(n):
                take = qs[:max(0, budget - res.pairs)]
                if len(take) < len(qs):
                    res.truncated = True
                if not take:
                    return
                res.pairs += len(take)
                yield (x, take, rule, strategy)

    def absorb(out):
        res.alarms.extend(out["alarms"])
        for key, v in out["counts"].items():
            res.verified[key] += v

    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            for out in pool.map(_check_x, work(), chunksize=64):
                absorb(out)
    else:
        for args in work():
            absorb(_check_x(args))
    return res


@dataclass(frozen=True)
class Witness:
    scope: str
    law: str
    x: str
    q: str
    explanation: str

    def line(self) -> str:
        return f"{self.scope} {self.law}: {self.x} ; {self.q} -- {self.explanation}"

    def to_dict(self) -> dict:
        return {"scope": self.scope, "law": self.law, "x": self.x, "q": self.q,
                "explanation": self.explanation}


def _empty_carrier_bimagma() -> RelBiMagma:
    return RelBiMagma((), (), (), frozenset(), frozenset())


def search_counterexamples(scope: str, budget: int = 10 ** 6, limit: int | None = None,
                           max_x: int = 2) -> list[Witness]:
    """Instances where a lifted law holds but the base law fails once the
    side condition of the matching correspondence is dropped.

    ``no-D``: Q violates the nondegeneracy condition and X fails ``RIk``.
    ``no-RD``: X violates it and Q fails ``Ik``.
    ``no-unit``: ``id_E`` is a unit of Q^X although ``1 = 0`` and E is no
    unit set, or although E is empty and ``1`` is no unit of Q.

    ``limit`` caps the witnesses per law; the search stops once every law
    of the scope has reached it.
    """
    if scope not in ("no-D", "no-RD", "no-unit"):
        raise ValueError(f"unknown scope {scope!r}")
    out: list[Witness] = []
    seen = 0
    qs = [q for n in (1, 2) for q in enumerate_biquantales(n)]
    laws = ["unit-2", "unit-3"] if scope == "no-unit" else [f"I{k}" for k in range(1, 8)]
    found = dict.fromkeys(laws, 0)

    def room(law):
        return limit is None or found[law] < limit

    def full():
        return limit is not None and all(v >= limit for v in found.values())

    def add(w):
        if room(w.law):
            found[w.law] += 1
            out.append(w)

    if scope == "no-unit":
        xs = [_empty_carrier_bimagma()] + [x for n in range(1, max_x + 1) for x in enumerate_bimagmas(n)]
        for x in xs:
            m = x.seq_magma
            subsets = [frozenset(c) for r in range(len(x.carrier) + 1)
                       for c in itertools.combinations(x.carrier, r)]
            for q in qs:
                fq = q.retract("seq")
                for units in subsets:
                    for one in fq.elements:
                        seen += 1
                        if seen > budget or full():
                            return out
                        l = _unit_instance(m, fq, units, one)
                        if not check_lifted_laws(l, "unit_seq").holds:
                            continue
                        if one == fq.zero and not check_rel_units(m, units).ok:
                            add(Witness(scope, "unit-2", describe_bimagma(x) + f" E={sorted(units)}",
                                               describe_biquantale(q) + f" one={one}",
                                               "1 = 0 so id_E is zero and a unit of the singleton-like "
                                               "Q^X, but E is not a relational unit set"))
                        elif not units and not is_unit(fq, one):
                            add(Witness(scope, "unit-3", describe_bimagma(x) + " E=[]",
                                               describe_biquantale(q) + f" one={one}",
                                               "E is empty yet id_E is a unit of Q^X, while 1 is not a unit of Q"))
        return out

    for n in range(1, max_x + 1):
        for x in enumerate_bimagmas(n):
            for q in qs:
                seen += 1
                if seen > budget or full():
                    return out
                inst = Instance(x, q)
                for k in range(1, 8):
                    j = SIDE_CONDITION[k]
                    if scope == "no-D":
                        if room(f"I{k}") and not inst.d(j) and inst.lifted_i(k).holds and not inst.ri(k).holds:
                            note = _singleton_note(q) or "every product in Q is 0, so all convolutions vanish"
                            add(Witness(scope, f"I{k}", describe_bimagma(x), describe_biquantale(q),
                                               f"I{k} holds in Q^X, RI{k} fails in X; D{j} fails in Q: {note}"))
                    else:
                        if room(f"I{k}") and not inst.rd(j) and inst.lifted_i(k).holds and not inst.i(k).holds:
                            add(Witness(scope, f"I{k}", describe_bimagma(x), describe_biquantale(q),
                                               f"I{k} holds in Q^X, fails in Q; RD{j} fails in X so "
                                               f"the left-hand convolution is always zero"))
                    if full():
                        return out
    return out
