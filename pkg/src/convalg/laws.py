"""Law results and the term shapes shared by every level of the construction.

The same shape (a pair of terms over two binary operations ``seq`` and
``par``) is evaluated over weight elements, over sets of carrier elements
(the relational laws, read through the multioperation view) and over
weighted functions (the lifted laws).  An ``ops`` object only has to
provide ``seq(a, b)`` and ``par(a, b)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable


@dataclass(frozen=True)
class LawResult:
    law: str
    holds: bool
    witness: tuple | None = None
    strategy: str | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self, fmt: Callable[[Any], Any] = str) -> dict:
        out = {"law": self.law, "holds": self.holds}
        if self.witness is not None:
            out["witness"] = [fmt(w) for w in self.witness]
        if self.strategy:
            out["strategy"] = self.strategy
        if self.note:
            out["note"] = self.note
        return out

    def line(self, fmt: Callable[[Any], str] = str) -> str:
        status = "pass" if self.holds else "FAIL"
        text = f"{self.law}: {status}"
        if self.strategy:
            text += f" [{self.strategy}]"
        if self.witness is not None and not self.holds:
            text += " witness (" + ", ".join(fmt(w) for w in self.witness) + ")"
        if self.note:
            text += f" -- {self.note}"
        return text


@dataclass
class LawReport:
    subject: str
    results: list[LawResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.results)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, law: str) -> LawResult:
        for r in self.results:
            if r.law == law:
                return r
        raise KeyError(law)

    def __contains__(self, law: str) -> bool:
        return any(r.law == law for r in self.results)

    def failed(self) -> list[LawResult]:
        return [r for r in self.results if not r.holds]

    def add(self, result: LawResult) -> None:
        self.results.append(result)

    def format(self, fmt: Callable[[Any], str] = str) -> str:
        lines = [f"# {self.subject}"]
        lines += [r.line(fmt) for r in self.results]
        return "\n".join(lines)

    def to_dict(self, fmt: Callable[[Any], Any] = str) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "results": [r.to_dict(fmt) for r in self.results],
        }


@dataclass(frozen=True)
class Shape:
    """An inequation ``lhs <= rhs`` (or an equation when ``eq``)."""

    name: str
    arity: int
    lhs: Callable[..., Any]
    rhs: Callable[..., Any]
    eq: bool = False


def _i(name, arity, lhs, rhs):
    return Shape(name, arity, lhs, rhs)


# seq is the sequential (orange) composition, par the parallel (teal) one.
INTERCHANGE: dict[int, Shape] = {
    1: _i("I1", 2, lambda o, a, b: o.seq(a, b), lambda o, a, b: o.par(a, b)),
    2: _i("I2", 2, lambda o, a, b: o.seq(a, b), lambda o, a, b: o.par(b, a)),
    3: _i("I3", 3,
          lambda o, a, b, c: o.seq(a, o.par(b, c)),
          lambda o, a, b, c: o.par(o.seq(a, b), c)),
    4: _i("I4", 3,
          lambda o, a, b, c: o.seq(o.par(a, b), c),
          lambda o, a, b, c: o.par(a, o.seq(b, c))),
    5: _i("I5", 3,
          lambda o, a, b, c: o.seq(a, o.par(b, c)),
          lambda o, a, b, c: o.par(b, o.seq(a, c))),
    6: _i("I6", 3,
          lambda o, a, b, c: o.seq(o.par(a, b), c),
          lambda o, a, b, c: o.par(o.seq(a, c), b)),
    7: _i("I7", 4,
          lambda o, a, b, c, d: o.seq(o.par(a, b), o.par(c, d)),
          lambda o, a, b, c, d: o.par(o.seq(a, c), o.seq(b, d))),
}

# Left-hand terms of the interchange laws, used by the (non)degeneracy conditions.
DEGENERACY: dict[int, Shape] = {
    1: Shape("D1", 2, INTERCHANGE[1].lhs, INTERCHANGE[1].lhs),
    2: Shape("D2", 3, INTERCHANGE[3].lhs, INTERCHANGE[3].lhs),
    3: Shape("D3", 3, INTERCHANGE[4].lhs, INTERCHANGE[4].lhs),
    4: Shape("D4", 4, INTERCHANGE[7].lhs, INTERCHANGE[7].lhs),
}

# Degeneracy condition whose term is the left-hand side of law k.
SIDE_CONDITION: dict[int, int] = {1: 1, 2: 1, 3: 2, 4: 3, 5: 2, 6: 3, 7: 4}

ASSOC = Shape("assoc", 3,
              lambda o, a, b, c: o.seq(o.seq(a, b), c),
              lambda o, a, b, c: o.seq(a, o.seq(b, c)), eq=True)
COMM = Shape("comm", 2,
             lambda o, a, b: o.seq(a, b),
             lambda o, a, b: o.seq(b, a))


class Swap:
    """View of ``ops`` with the two compositions exchanged."""

    def __init__(self, ops):
        self._ops = ops

    def seq(self, a, b):
        return self._ops.par(a, b)

    def par(self, a, b):
        return self._ops.seq(a, b)


class Single:
    """View of a one-operation structure as a bi-structure with equal colours."""

    def __init__(self, op: Callable[[Any, Any], Any]):
        self._op = op

    def seq(self, a, b):
        return self._op(a, b)

    par = seq


def parse_interchange_index(law: str) -> int:
    """``"i7"``, ``"I7"``, ``"ri7"`` or ``"7"`` -> 7."""
    s = law.strip().lower().lstrip("r").lstrip("ai")
    k = int(s)
    if not 1 <= k <= 7:
        raise ValueError(f"interchange law index out of range: {law}")
    return k
