"""Word models: bounded free monoids with concatenation and shuffle.

Words are Python strings over single-character letters; the empty word is
``""`` and prints as ``eps``.  Both relations are graded by length, so a
universe of all words up to a length bound contains every decomposition
of its members.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .convolution import LiftedAlgebra
from .relstruct import RelBiMagma
from .weights import BiQuantale, FiniteQuantale, boolean_biquantale


@lru_cache(maxsize=None)
def shuffle(v: str, w: str) -> frozenset:
    """All interleavings of ``v`` and ``w``.

    ``v | eps = {v} = eps | v`` and
    ``av | bw = a(v | bw) + b(av | w)``.
    """
    if not v:
        return frozenset([w])
    if not w:
        return frozenset([v])
    return frozenset([v[0] + u for u in shuffle(v[1:], w)] +
                     [w[0] + u for u in shuffle(v, w[1:])])


@dataclass(frozen=True)
class BoundedWordUniverse:
    alphabet: tuple
    max_len: int

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if any(len(a) != 1 for a in alphabet):
            raise ValueError("letters must be single characters")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("duplicate letter")
        object.__setattr__(self, "alphabet", alphabet)

    @property
    def elements(self) -> tuple:
        """Words ordered by length, then letter by letter in alphabet order."""
        return tuple("".join(t) for n in range(self.max_len + 1)
                     for t in itertools.product(self.alphabet, repeat=n))

    def __contains__(self, w) -> bool:
        return isinstance(w, str) and len(w) <= self.max_len and all(c in self.alphabet for c in w)


def concat_triples(u: BoundedWordUniverse) -> set:
    return {(y + z, y, z) for y in u.elements for z in u.elements
            if len(y) + len(z) <= u.max_len}


def shuffle_triples(u: BoundedWordUniverse) -> set:
    return {(x, y, z) for y in u.elements for z in u.elements
            if len(y) + len(z) <= u.max_len for x in shuffle(y, z)}


def build_word_bimagma(u: BoundedWordUniverse) -> RelBiMagma:
    """Concatenation (sequential) and shuffle (parallel), both with unit ``eps``."""
    return RelBiMagma(u.elements, concat_triples(u), shuffle_triples(u), {""}, {""})


def word_grading(u: BoundedWordUniverse) -> dict:
    return {w: len(w) for w in u.elements}


def weighted_language_ops(u: BoundedWordUniverse,
                          weights: BiQuantale | FiniteQuantale | None = None) -> LiftedAlgebra:
    """Convolution algebra on words; Boolean weights give languages with
    language product and shuffle product."""
    return LiftedAlgebra(build_word_bimagma(u), weights or boolean_biquantale())

