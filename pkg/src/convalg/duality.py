"""Finite duality between relational magmas and atomic Boolean algebras
with a binary operator.

Algebra elements are frozensets of atoms, so union, intersection and
complement are the lattice operations and the order is inclusion.  A
relational magma ``X`` gives its complex algebra (subsets of ``X`` with
Boolean-weight convolution); an algebra gives its atom structure
(``alpha`` composes from ``beta`` and ``gamma`` when ``alpha`` lies below
their product).  ``sigma`` and ``eta`` compare each object with its round
trip; ``rho_plus`` and ``phi_lower`` transport maps across.

Everything here works on concrete finite instances.  Infinite or
non-atomic algebras are out of reach of this representation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .convolution import LiftedAlgebra
from .errors import MalformedTable, PreconditionError
from .laws import LawReport, LawResult
from .relstruct import RelMagma
from .weights import FiniteLattice, FiniteQuantale, boolean_quantale, subset_name


def subsets(atoms: Iterable) -> tuple:
    """All subsets as frozensets, by size and then in atom order."""
    atoms = tuple(atoms)
    return tuple(frozenset(c) for r in range(len(atoms) + 1)
                 for c in itertools.combinations(atoms, r))


def _show(a, order) -> str:
    if isinstance(a, frozenset):
        pos = {x: i for i, x in enumerate(order)}
        inner = sorted(a, key=lambda x: pos.get(x, len(pos)))
        return "{" + ",".join(_show(x, ()) for x in inner) + "}"
    return str(a)


@dataclass(frozen=True, eq=False)
class AtomicBoolPrequantale:
    """A finite powerset algebra with a binary operator that preserves
    unions in each argument (and hence sends the empty set to itself)."""
    atoms: tuple
    table: Mapping

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if len(set(atoms)) != len(atoms):
            raise MalformedTable("duplicate atom")
        object.__setattr__(self, "atoms", atoms)
        els = subsets(atoms)
        universe = frozenset(atoms)
        table = {}
        for a in els:
            for b in els:
                try:
                    c = frozenset(self.table[(a, b)])
                except KeyError:
                    raise MalformedTable(f"operator undefined on {_show(a, atoms)}, {_show(b, atoms)}") from None
                if not c <= universe:
                    raise MalformedTable(f"operator value {_show(c, atoms)} is not a set of atoms")
                table[(a, b)] = c
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "elements", els)
        bad = self.additivity_failure()
        if bad is not None:
            raise MalformedTable("operator is not additive at " + ", ".join(_show(x, atoms) for x in bad))

    @classmethod
    def from_atom_table(cls, atoms: Iterable, atom_table: Mapping) -> AtomicBoolPrequantale:
        """Extend an operator given on pairs of atoms by unions; missing
        pairs multiply to the empty set."""
        atoms = tuple(atoms)
        for pair in atom_table:
            if any(p not in atoms for p in pair):
                raise MalformedTable(f"atom table refers to unknown atom in {pair!r}")
        single = {(b, c): frozenset(atom_table.get((b, c), ())) for b in atoms for c in atoms}
        els = subsets(atoms)
        table = {(a, b): frozenset().union(*(single[(x, y)] for x in a for y in b))
                 for a in els for b in els}
        return cls(atoms, table)

    @classmethod
    def from_quantale(cls, q: FiniteQuantale) -> AtomicBoolPrequantale:
        """Transport a prequantale on a finite Boolean lattice along sigma."""
        if not q.lattice.is_boolean():
            raise PreconditionError("weight lattice is not Boolean")
        atoms = q.lattice.atoms()
        s = {a: sigma(q, a) for a in q.elements}
        return cls(atoms, {(s[a], s[b]): s[q.mul(a, b)] for a in q.elements for b in q.elements})

    @property
    def bottom(self) -> frozenset:
        return frozenset()

    @property
    def top(self) -> frozenset:
        return frozenset(self.atoms)

    def mul(self, a, b) -> frozenset:
        return self.table[(frozenset(a), frozenset(b))]

    def leq(self, a, b) -> bool:
        return frozenset(a) <= frozenset(b)

    def complement(self, a) -> frozenset:
        return self.top - frozenset(a)

    def atom_table(self) -> dict:
        return {(b, c): self.mul({b}, {c}) for b in self.atoms for c in self.atoms}

    def additivity_failure(self):
        """First ``(a, b)`` whose product differs from the union of atom products."""
        single = {(b, c): self.table[(frozenset([b]), frozenset([c]))]
                  for b in self.atoms for c in self.atoms}
        for a in self.elements:
            for b in self.elements:
                want = frozenset().union(*(single[(x, y)] for x in a for y in b))
                if self.table[(a, b)] != want:
                    return (a, b)
        return None

    def show(self, a) -> str:
        return _show(frozenset(a), self.atoms)

    def as_quantale(self, unit=None) -> FiniteQuantale:
        """The same algebra with subset names as weight elements."""
        lat = FiniteLattice.powerset([str(a) for a in self.atoms])
        name = {a: subset_name([str(x) for x in a], [str(x) for x in self.atoms])
                for a in self.elements}
        table = {(name[a], name[b]): name[self.table[(a, b)]] for a in self.elements for b in self.elements}
        return FiniteQuantale(lat, table, None if unit is None else name[frozenset(unit)])


# ---------------------------------------------------------------- the two constructions

def sigma(q: FiniteQuantale | AtomicBoolPrequantale, a) -> frozenset:
    """The atoms below ``a``."""
    if isinstance(q, AtomicBoolPrequantale):
        return frozenset(a)
    return frozenset(x for x in q.lattice.atoms() if q.lattice.leq(x, a))


def atom_structure(q: AtomicBoolPrequantale | FiniteQuantale) -> RelMagma:
    """Atoms as carrier; ``(alpha, beta, gamma)`` when ``alpha <= beta . gamma``."""
    if isinstance(q, FiniteQuantale):
        lat = q.lattice
        atoms = lat.atoms()
        rel = {(a, b, c) for a in atoms for b in atoms for c in atoms if lat.leq(a, q.mul(b, c))}
        return RelMagma(atoms, rel)
    rel = {(a, b, c) for b in q.atoms for c in q.atoms for a in q.mul({b}, {c})}
    return RelMagma(q.atoms, rel)


_BOOL = boolean_quantale()


def complex_algebra(x: RelMagma) -> AtomicBoolPrequantale:
    """Subsets of the carrier with Boolean-weight convolution as operator."""
    lifted = LiftedAlgebra(x, _BOOL)
    els = subsets(x.carrier)
    ind = {a: lifted.function({y: "1" for y in a}) for a in els}
    table = {(a, b): frozenset(lifted.seq(ind[a], ind[b]).support()) for a in els for b in els}
    return AtomicBoolPrequantale(x.carrier, table)


def eta(x) -> frozenset:
    """``x`` as a singleton element of the complex algebra."""
    return frozenset([x])


def atom_label(a: frozenset):
    """The carrier label of an atom element ``{alpha}`` of an algebra.

    Atom structures use labels as carrier elements, so the atom ``{x}``
    of a complex algebra is the carrier element ``x`` of its atom structure.
    """
    if len(a) != 1:
        raise ValueError("not an atom")
    return next(iter(a))


# ---------------------------------------------------------------- isomorphism checks

def _first(items, pred):
    for t in items:
        if not pred(*t):
            return t
    return None


def _bijection(mapping: Mapping, target: Iterable):
    """``None`` when bijective onto ``target``, else an offending element."""
    target = list(target)
    seen: dict = {}
    for k, v in mapping.items():
        if v in seen:
            return (seen[v], k)
        seen[v] = k
    for t in target:
        if t not in seen:
            return (t,)
    return None


def _fr(name, witness) -> LawResult:
    return LawResult(name, witness is None, witness)


def verify_jt_duality(obj) -> LawReport:
    """Round-trip isomorphism of an algebra (via sigma) or of a magma (via eta)."""
    if isinstance(obj, RelMagma):
        return _verify_eta(obj)
    return _verify_sigma(obj)


def _verify_sigma(q) -> LawReport:
    if isinstance(q, FiniteQuantale) and not q.lattice.is_boolean():
        raise PreconditionError("weight lattice is not Boolean")
    target = complex_algebra(atom_structure(q))
    els = q.elements
    s = {a: sigma(q, a) for a in els}
    rep = LawReport("sigma: Q -> (Q_+)^+")
    rep.add(_fr("sigma-bijective", _bijection(s, target.elements)))
    rep.add(_fr("sigma-order", _first(itertools.product(els, els),
                                      lambda a, b: q.leq(a, b) == (s[a] <= s[b]))))
    rep.add(_fr("sigma-operator", _first(itertools.product(els, els),
                                         lambda a, b: s[q.mul(a, b)] == target.mul(s[a], s[b]))))
    return rep


def _verify_eta(x: RelMagma) -> LawReport:
    xp = complex_algebra(x)
    target = atom_structure(xp)
    nonzero = [a for a in xp.elements if a]
    rep = LawReport("eta: X -> (X^+)_+")
    rep.add(_fr("eta-atoms", _first(((a,) for a in x.carrier),
                                    lambda a: all(not (b < eta(a)) for b in nonzero))))
    e = {a: atom_label(eta(a)) for a in x.carrier}
    rep.add(_fr("eta-bijective", _bijection(e, target.carrier)))
    rep.add(_fr("eta-relation", _first(itertools.product(x.carrier, repeat=3),
                                       lambda a, b, c: x.holds(a, b, c) == target.holds(e[a], e[b], e[c]))))
    return rep


# ---------------------------------------------------------------- morphisms

@dataclass(frozen=True, eq=False)
class RelMorphism:
    source: RelMagma
    target: RelMagma
    mapping: Mapping

    def __post_init__(self):
        mapping = dict(self.mapping)
        if set(mapping) != set(self.source.carrier):
            raise MalformedTable("map must be defined exactly on the source carrier")
        known = set(self.target.carrier)
        for k, v in mapping.items():
            if v not in known:
                raise MalformedTable(f"image of {k!r} is not in the target carrier")
        object.__setattr__(self, "mapping", mapping)

    def __call__(self, x):
        return self.mapping[x]

    @classmethod
    def identity(cls, m: RelMagma) -> RelMorphism:
        return cls(m, m, {x: x for x in m.carrier})

    def then(self, other: RelMorphism) -> RelMorphism:
        """``other`` after ``self``."""
        return RelMorphism(self.source, other.target, {x: other(self(x)) for x in self.source.carrier})


def morphism_failure(m: RelMorphism):
    """A source triple whose image is not related in the target."""
    src = m.source
    for x, y, z in sorted(src.rel, key=lambda t: tuple(src.index(e) for e in t)):
        if not m.target.holds(m(x), m(y), m(z)):
            return (x, y, z)
    return None


def boundedness_failure(m: RelMorphism):
    """``(x, y, z)`` with the image of ``x`` decomposing into ``y, z`` but no
    decomposition of ``x`` mapping onto that pair."""
    for x in m.source.carrier:
        images = {(m(u), m(v)) for u, v in m.source.decompositions(x)}
        for y, z in m.target.decompositions(m(x)):
            if (y, z) not in images:
                return (x, y, z)
    return None


def check_morphism(m: RelMorphism) -> str:
    if morphism_failure(m) is not None:
        return "not-a-morphism"
    if boundedness_failure(m) is not None:
        return "morphism"
    return "bounded-morphism"


def rho_plus(m: RelMorphism) -> dict:
    """Preimage map from target subsets to source subsets."""
    return {b: frozenset(x for x in m.source.carrier if m(x) in b) for b in subsets(m.target.carrier)}


def phi_lower(phi: Mapping, q1: AtomicBoolPrequantale, q2: AtomicBoolPrequantale) -> RelMorphism:
    """For ``phi: q1 -> q2``, send each atom ``beta`` of ``q2`` to the meet of
    everything whose image lies above it.  The result is an atom exactly when
    ``phi`` preserves joins and complements; otherwise PreconditionError."""
    out = {}
    for b in q2.atoms:
        above = [a for a in q1.elements if b in phi[a]]
        m = frozenset(q1.atoms).intersection(*above) if above else frozenset(q1.atoms)
        if len(m) != 1:
            raise PreconditionError(f"lower adjoint of {q2.show({b})} is {q1.show(m)}, not an atom")
        out[b] = next(iter(m))
    return RelMorphism(atom_structure(q2), atom_structure(q1), out)


def check_homomorphism(phi: Mapping, q1: AtomicBoolPrequantale, q2: AtomicBoolPrequantale) -> LawReport:
    els = q1.elements
    rep = LawReport("operator homomorphism")
    rep.add(_fr("bottom", None if phi[q1.bottom] == q2.bottom else (q1.bottom,)))
    rep.add(_fr("unions", _first(itertools.product(els, els), lambda a, b: phi[a | b] == phi[a] | phi[b])))
    rep.add(_fr("complements", _first(((a,) for a in els),
                                      lambda a: phi[q1.complement(a)] == q2.complement(phi[a]))))
    rep.add(_fr("operator", _first(itertools.product(els, els),
                                   lambda a, b: phi[q1.mul(a, b)] == q2.mul(phi[a], phi[b]))))
    return rep


@lru_cache(maxsize=4096)
def _complex_cached(m: RelMagma) -> AtomicBoolPrequantale:
    return complex_algebra(m)


def check_dual_map(m: RelMorphism) -> LawReport:
    """Stone-level preservation by the preimage map, and the two inclusions
    of operator preservation, each reported separately."""
    xp = _complex_cached(m.source)
    yp = _complex_cached(m.target)
    rp = rho_plus(m)
    els = yp.elements
    pairs = list(itertools.product(els, els))
    rep = LawReport("rho^+")
    rep.add(_fr("unions", _first(pairs, lambda a, b: rp[a | b] == rp[a] | rp[b])))
    rep.add(_fr("complements", _first(((a,) for a in els),
                                      lambda a: rp[yp.complement(a)] == xp.complement(rp[a]))))
    rep.add(_fr("operator-sub", _first(pairs, lambda a, b: xp.mul(rp[a], rp[b]) <= rp[yp.mul(a, b)])))
    rep.add(_fr("operator-sup", _first(pairs, lambda a, b: rp[yp.mul(a, b)] <= xp.mul(rp[a], rp[b]))))
    return rep


def check_functoriality(m1: RelMorphism, m2: RelMorphism | None = None) -> LawReport:
    """Identity and composition laws for both dual constructions on the given maps.

    With one map only the identity laws are checked (on its source)."""
    rep = LawReport("functoriality")
    ident = RelMorphism.identity(m1.source)
    idp = rho_plus(ident)
    rep.add(_fr("plus-identity", _first(((a,) for a in idp), lambda a: idp[a] == a)))
    xp = _complex_cached(m1.source)
    low = phi_lower(idp, xp, xp)
    rep.add(_fr("lower-identity", _first(((a,) for a in xp.atoms), lambda a: low(a) == a)))
    if m2 is None:
        return rep
    if m1.target is not m2.source and m1.target.carrier != m2.source.carrier:
        raise ValueError("maps are not composable")
    comp = m1.then(m2)
    cp, p1, p2 = rho_plus(comp), rho_plus(m1), rho_plus(m2)
    rep.add(_fr("plus-composition", _first(((b,) for b in cp), lambda b: cp[b] == p1[p2[b]])))
    # the lower construction, applied to psi = p1 after phi = p2
    zp, yp = _complex_cached(m2.target), _complex_cached(m1.target)
    whole = phi_lower(cp, zp, xp)
    low_phi = phi_lower(p2, zp, yp)
    low_psi = phi_lower(p1, yp, xp)
    rep.add(_fr("lower-composition", _first(((a,) for a in xp.atoms),
                                            lambda a: whole(a) == low_phi(low_psi(a)))))
    return rep


def check_naturality(m: RelMorphism) -> LawReport:
    """Both naturality squares for a bounded morphism ``rho: X -> Y``.

    eta square: ``eta_Y . rho = (rho^+)_+ . eta_X``.
    sigma square, for ``phi = rho^+: Y^+ -> X^+``:
    ``sigma_{X^+} . phi = (phi_+)^+ . sigma_{Y^+}``.
    """
    rep = LawReport("naturality")
    xp = _complex_cached(m.source)
    yp = _complex_cached(m.target)
    phi = rho_plus(m)
    low = phi_lower(phi, yp, xp)
    rep.add(_fr("eta-square", _first(((x,) for x in m.source.carrier),
                                     lambda x: atom_label(eta(m(x))) == low(atom_label(eta(x))))))
    low_plus = rho_plus(low)
    rep.add(_fr("sigma-square", _first(((b,) for b in yp.elements),
                                       lambda b: sigma(xp, phi[b]) == low_plus[sigma(yp, b)])))
    return rep


# ---------------------------------------------------------------- enumeration

def _perm_mask(mask: int, n: int, perm) -> int:
    out = 0
    for x, y, z in itertools.product(range(n), repeat=3):
        if mask >> ((x * n + y) * n + z) & 1:
            out |= 1 << ((perm[x] * n + perm[y]) * n + perm[z])
    return out


def magma_from_mask(mask: int, n: int) -> RelMagma:
    rel = {(x, y, z) for x, y, z in itertools.product(range(n), repeat=3)
           if mask >> ((x * n + y) * n + z) & 1}
    return RelMagma(tuple(range(n)), rel)


def enumerate_magmas(n: int) -> list[RelMagma]:
    """Relational magmas on ``range(n)`` up to isomorphism (smallest mask per class).

    Feasible for ``n <= 2``; three points already give 2**27 relations,
    which :func:`eta_check_all` handles in vectorised form."""
    perms = list(itertools.permutations(range(n)))[1:]
    out = []
    for mask in range(1 << n ** 3):
        if all(_perm_mask(mask, n, p) >= mask for p in perms):
            out.append(magma_from_mask(mask, n))
    return out


def enumerate_atom_algebras(n: int) -> list[AtomicBoolPrequantale]:
    """Operators on the powerset of ``n`` atoms, up to relabelling the atoms."""
    atoms = tuple(f"a{i}" for i in range(n))
    pairs = list(itertools.product(atoms, atoms))
    choices = subsets(atoms)
    perms = list(itertools.permutations(range(n)))[1:]
    idx = {a: i for i, a in enumerate(atoms)}
    code = {s: sum(1 << idx[a] for a in s) for s in choices}

    def key(tab):
        return tuple(code[tab[p]] for p in pairs)

    out = []
    for values in itertools.product(choices, repeat=len(pairs)):
        tab = dict(zip(pairs, values))
        k = key(tab)
        minimal = True
        for p in perms:
            ren = {a: atoms[p[idx[a]]] for a in atoms}
            other = {(ren[b], ren[c]): frozenset(ren[x] for x in v) for (b, c), v in tab.items()}
            if key(other) < k:
                minimal = False
                break
        if minimal:
            out.append(AtomicBoolPrequantale.from_atom_table(atoms, tab))
    return out


def complex_products_bits(masks, n: int):
    """Vectorised complex-algebra operators for a batch of relations.

    Each relation is an integer bitmask; bit ``(x*n + y)*n + z`` says ``x``
    composes from ``y`` and ``z``.  Subsets are ``n``-bit integers.  Returns
    ``(bits, ext)``: ``bits[(x, y, z)]`` is the relation bit per mask and
    ``ext[(a, b)]`` the product of subsets ``a`` and ``b`` per mask.
    """
    import numpy as np

    masks = np.asarray(masks, dtype=np.int32)
    cube = list(itertools.product(range(n), repeat=3))
    bits = {t: ((masks >> ((t[0] * n + t[1]) * n + t[2])) & 1).astype(np.uint8) for t in cube}
    ext = {}
    for y in range(n):
        for z in range(n):
            s = np.zeros(masks.shape, dtype=np.uint8)
            for x in range(n):
                s |= bits[(x, y, z)] << x
            ext[(1 << y, 1 << z)] = s
    # additive extension: split off the lowest atom of either argument
    zero = np.zeros(masks.shape, dtype=np.uint8)
    for a in range(1 << n):
        for b in range(1 << n):
            if (a, b) in ext:
                continue
            if a == 0 or b == 0:
                ext[(a, b)] = zero
            elif a & (a - 1):
                low = a & -a
                ext[(a, b)] = ext[(low, b)] | ext[(a ^ low, b)]
            else:
                low = b & -b
                ext[(a, b)] = ext[(a, low)] | ext[(a, b ^ low)]
    return bits, ext


def eta_check_all(n: int, chunk: int = 1 << 22):
    """Check eta on every relation over ``range(n)``, in numpy batches.

    The atom structure of each complex algebra is read back from the
    products of singletons and compared with the original relation.
    Returns ``(checked, first_failing_mask | None)``.
    """
    import numpy as np

    total = 1 << n ** 3
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int32)
        bits, ext = complex_products_bits(masks, n)
        ok = np.ones(masks.shape, dtype=bool)
        for (x, y, z), bit in bits.items():
            ok &= ((ext[(1 << y, 1 << z)] >> x) & 1) == bit
        if not ok.all():
            return start, int(masks[int(np.argmin(ok))])
    return total, None


def enumerate_bounded_morphisms(max_size: int = 2):
    """Every bounded morphism between iso-class representatives of size
    ``1..max_size``."""
    reps = [m for n in range(1, max_size + 1) for m in enumerate_magmas(n)]
    for x in reps:
        for y in reps:
            for images in itertools.product(y.carrier, repeat=len(x.carrier)):
                m = RelMorphism(x, y, dict(zip(x.carrier, images)))
                if check_morphism(m) == "bounded-morphism":
                    yield m


@dataclass(frozen=True)
class DualitySuite:
    algebras: int
    magmas: int
    relations: int
    morphisms: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"sigma: {self.algebras} operator algebras with <= 2 atoms",
               f"eta: {self.magmas} relational magmas with <= 2 points (up to iso)",
               f"eta: {self.relations} relations on 3 or more points (all, batched)",
               f"naturality: {self.morphisms} bounded morphisms"]
        out += [f"FAIL {f}" for f in self.failures]
        out.append("pass" if self.ok else "FAIL")
        return out


def duality_suite(max_atoms: int = 2, max_points: int = 3, morph_size: int = 2) -> DualitySuite:
    failures = []
    algebras = 0
    for n in range(max_atoms + 1):
        for q in enumerate_algebras_cached(n):
            algebras += 1
            rep = verify_jt_duality(q)
            if not rep.ok:
                failures.append(f"sigma {rep.failed()[0].line(str)} on atom table {q.atom_table()}")
    magmas = 0
    for n in range(min(max_points, 2) + 1):
        for x in enumerate_magmas(n):
            magmas += 1
            rep = verify_jt_duality(x)
            if not rep.ok:
                failures.append(f"eta {rep.failed()[0].line(str)} on {sorted(x.rel)}")
    relations = 0
    for n in range(3, max_points + 1):
        checked, bad = eta_check_all(n)
        relations += checked
        if bad is not None:
            failures.append(f"eta fails on {n}-point relation mask {bad}")
    morphisms = 0
    for m in enumerate_bounded_morphisms(morph_size):
        morphisms += 1
        rep = check_naturality(m)
        if not rep.ok:
            failures.append(f"naturality {rep.failed()[0].line(str)} on {m.mapping}")
    return DualitySuite(algebras, magmas, relations, morphisms, tuple(failures))


@lru_cache(maxsize=None)
def _algebras(n: int) -> tuple:
    return tuple(enumerate_atom_algebras(n))


def enumerate_algebras_cached(n: int) -> tuple:
    return _algebras(n)
