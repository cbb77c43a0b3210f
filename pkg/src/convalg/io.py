"""JSON structure files.

Every document carries ``"schema": 1`` and a ``kind``.  Binary tables are
lists of ``[a, b, a.b]`` rows, relations are lists of ``[x, y, z]``
triples (``x`` composes from ``y`` and ``z``) and orders are lists of
``[a, b]`` pairs meaning ``a <= b``.  Word elements use ``"eps"`` for the
empty word.  Shape errors raise :class:`SchemaError`; undeclared ids raise
:class:`MalformedTable` from the constructors.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .convolution import show_element
from .duality import AtomicBoolPrequantale
from .errors import MalformedTable, SchemaError
from .graphmodels import Digraph, TypeUniverse, build_graph_pim, build_type_bimagma, type_grading, type_preorder
from .langmodels import BoundedWordUniverse, build_word_bimagma, word_grading
from .partialmon import PartialInterchangeMonoid, PartialMonoid
from .relstruct import RelBiMagma, RelMagma
from .weights import BiQuantale, FiniteLattice, FiniteQuantale

_ID = {"type": "string"}
_IDS = {"type": "array", "items": _ID}
_ROWS = {"type": "array", "items": {"type": "array", "items": _ID, "minItems": 3, "maxItems": 3}}
_PAIRS = {"type": "array", "items": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2}}
_PM = {"type": "object", "required": ["table", "units"],
       "properties": {"table": _ROWS, "units": _IDS}}


def _obj(required, **props) -> dict:
    props = {"schema": {"const": 1}, "kind": {"type": "string"}, "name": {"type": "string"},
             "description": {"type": "string"}, **props}
    return {"type": "object", "required": ["schema", "kind", *required], "properties": props,
            "additionalProperties": False}


SCHEMAS = {
    "quantale": _obj(["elements", "order", "table"], elements=_IDS, order=_PAIRS, table=_ROWS,
                     unit={"type": ["string", "null"]}),
    "biquantale": _obj(["elements", "order", "seq", "par"], elements=_IDS, order=_PAIRS,
                       seq=_ROWS, par=_ROWS, unit_seq={"type": ["string", "null"]},
                       unit_par={"type": ["string", "null"]}),
    "relmagma": _obj(["carrier", "relation"], carrier=_IDS, relation=_ROWS,
                     units={"type": ["array", "null"], "items": _ID},
                     grading={"type": "object", "additionalProperties": {"type": "integer"}}),
    "relbimagma": _obj(["carrier", "seq", "par"], carrier=_IDS, seq=_ROWS, par=_ROWS,
                       units_seq={"type": ["array", "null"], "items": _ID},
                       units_par={"type": ["array", "null"], "items": _ID},
                       grading={"type": "object", "additionalProperties": {"type": "integer"}}),
    "partialmonoid": _obj(["carrier", "table", "units"], carrier=_IDS, table=_ROWS, units=_IDS),
    "pim": _obj(["carrier", "preorder", "seq", "par"], carrier=_IDS, preorder=_PAIRS, seq=_PM, par=_PM),
    "graph": _obj(["vertices", "edges"], vertices=_IDS, edges=_PAIRS,
                  labels={"type": ["object", "null"], "additionalProperties": _ID}),
    "atomic-algebra": _obj(["atoms", "atom_table"], atoms=_IDS,
                           atom_table={"type": "array", "items": {
                               "type": "array", "minItems": 3, "maxItems": 3,
                               "prefixItems": [_ID, _ID, _IDS]}}),
    "universe-spec": _obj(["model"], model={"enum": ["words", "graph-types", "graph-pim"]},
                          alphabet=_IDS, max_len={"type": "integer", "minimum": 0},
                          max_vertices={"type": "integer", "minimum": 0},
                          labels={"type": ["array", "null"], "items": _ID},
                          posets_only={"type": "boolean"}, loops={"type": "boolean"}),
}


@dataclass
class Structure:
    """A loaded document: the built object plus what the CLI needs around it."""
    kind: str
    name: str
    obj: Any
    grading: dict | None = None
    preorder: Any = None
    names: dict = field(default_factory=dict)

    def element(self, text: str):
        """Carrier element by its printed name."""
        try:
            return self.names[text]
        except KeyError:
            raise SchemaError(f"unknown element {text!r} in {self.name}") from None


def _lattice(doc) -> FiniteLattice:
    return FiniteLattice(tuple(doc["elements"]), frozenset(map(tuple, doc["order"])))


def _pm(carrier, sub) -> PartialMonoid:
    return PartialMonoid(carrier, {(a, b): c for a, b, c in sub["table"]}, frozenset(sub["units"]))


def _names(carrier) -> dict:
    return {show_element(x): x for x in carrier}


def build(doc: dict, name: str = "<input>") -> Structure:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("document must be an object with a 'kind'")
    kind = doc["kind"]
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown kind {kind!r}")
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{name}: {path}: {e.message}") from None
    name = doc.get("name", name)
    if kind == "quantale":
        q = FiniteQuantale(_lattice(doc), [tuple(r) for r in doc["table"]], doc.get("unit"))
        return Structure(kind, name, q, names=_names(q.elements))
    if kind == "biquantale":
        q = BiQuantale(_lattice(doc), [tuple(r) for r in doc["seq"]], [tuple(r) for r in doc["par"]],
                       doc.get("unit_seq"), doc.get("unit_par"))
        return Structure(kind, name, q, names=_names(q.elements))
    if kind == "relmagma":
        m = RelMagma(tuple(doc["carrier"]), map(tuple, doc["relation"]), doc.get("units"))
        return Structure(kind, name, m, grading=doc.get("grading"), names=_names(m.carrier))
    if kind == "relbimagma":
        b = RelBiMagma(tuple(doc["carrier"]), map(tuple, doc["seq"]), map(tuple, doc["par"]),
                       doc.get("units_seq"), doc.get("units_par"))
        return Structure(kind, name, b, grading=doc.get("grading"), names=_names(b.carrier))
    if kind == "partialmonoid":
        pm = _pm(tuple(doc["carrier"]), doc)
        return Structure(kind, name, pm, names=_names(pm.carrier))
    if kind == "pim":
        carrier = tuple(doc["carrier"])
        order = frozenset(map(tuple, doc["preorder"])) | {(x, x) for x in carrier}
        for pair in order:
            if any(p not in carrier for p in pair):
                raise MalformedTable(f"preorder refers to unknown element in {pair!r}")
        p = PartialInterchangeMonoid(carrier, order, _pm(carrier, doc["seq"]), _pm(carrier, doc["par"]))
        return Structure(kind, name, p, preorder=order, names=_names(carrier))
    if kind == "graph":
        labels = doc.get("labels")
        vs = tuple(doc["vertices"])
        g = Digraph(vs, frozenset(map(tuple, doc["edges"])),
                    None if labels is None else tuple(labels[v] for v in vs))
        return Structure(kind, name, g)
    if kind == "atomic-algebra":
        table = {(b, c): tuple(xs) for b, c, xs in doc["atom_table"]}
        q = AtomicBoolPrequantale.from_atom_table(tuple(doc["atoms"]), table)
        return Structure(kind, name, q)
    return _universe(doc, name)


def _universe(doc: dict, name: str) -> Structure:
    model = doc["model"]
    if model == "words":
        if "alphabet" not in doc or "max_len" not in doc:
            raise SchemaError(f"{name}: words need 'alphabet' and 'max_len'")
        u = BoundedWordUniverse(tuple(doc["alphabet"]), doc["max_len"])
        b = build_word_bimagma(u)
        return Structure("universe-spec", name, b, grading=word_grading(u), names=_names(b.carrier))
    if "max_vertices" not in doc:
        raise SchemaError(f"{name}: graph universes need 'max_vertices'")
    labels = doc.get("labels")
    if model == "graph-types":
        u = TypeUniverse(doc["max_vertices"], None if labels is None else tuple(labels),
                         doc.get("posets_only", False), doc.get("loops", False))
        b = build_type_bimagma(u)
        return Structure("universe-spec", name, b, grading=type_grading(u), preorder=type_preorder(u),
                         names=_names(b.carrier))
    p = build_graph_pim(doc["max_vertices"], labels, doc.get("posets_only", False), doc.get("loops", False))
    return Structure("pim", name, p, preorder=p.preorder, names=_names(p.carrier))


def fixture_names() -> list[str]:
    root = resources.files("convalg") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def fixture_path(name: str):
    return resources.files("convalg") / "fixtures" / f"{name}.json"


def load(ref: str) -> Structure:
    """Load a structure from a path, or from a shipped fixture by name."""
    path = Path(ref)
    if path.is_file():
        text, name = path.read_text(), path.stem
    else:
        fx = fixture_path(ref)
        if not fx.is_file():
            raise SchemaError(f"no such file or fixture: {ref!r}")
        text, name = fx.read_text(), ref
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{name}: invalid JSON: {e}") from None
    return build(doc, name)


# ---------------------------------------------------------------- writing

def _rows(table: dict) -> list:
    return [[a, b, c] for (a, b), c in table.items()]


def dump_quantale(q: FiniteQuantale, name: str = "") -> dict:
    lat = q.lattice
    return {"schema": 1, "kind": "quantale", "name": name, "elements": list(lat.elements),
            "order": [[a, b] for a in lat.elements for b in lat.elements if a != b and lat.leq(a, b)],
            "table": [[a, b, q.mul(a, b)] for a in lat.elements for b in lat.elements],
            "unit": q.unit}


def dump_biquantale(q: BiQuantale, name: str = "") -> dict:
    lat = q.lattice
    els = lat.elements
    return {"schema": 1, "kind": "biquantale", "name": name, "elements": list(els),
            "order": [[a, b] for a in els for b in els if a != b and lat.leq(a, b)],
            "seq": [[a, b, q.seq(a, b)] for a in els for b in els],
            "par": [[a, b, q.par(a, b)] for a in els for b in els],
            "unit_seq": q.unit_seq, "unit_par": q.unit_par}


def dump_pim(p: PartialInterchangeMonoid, name: str = "") -> dict:
    els = p.carrier
    return {"schema": 1, "kind": "pim", "name": name, "carrier": list(els),
            "preorder": [[a, b] for a in els for b in els if a != b and p.leq(a, b)],
            "seq": {"table": _rows(p.seq.table), "units": sorted(p.seq.units)},
            "par": {"table": _rows(p.par.table), "units": sorted(p.par.units)}}


def dump_partial_monoid(pm: PartialMonoid, name: str = "") -> dict:
    return {"schema": 1, "kind": "partialmonoid", "name": name, "carrier": list(pm.carrier),
            "table": _rows(pm.table), "units": sorted(pm.units)}


def dump_relmagma(m: RelMagma, name: str = "") -> dict:
    key = lambda t: tuple(m.index(e) for e in t)  # noqa: E731
    return {"schema": 1, "kind": "relmagma", "name": name, "carrier": [str(x) for x in m.carrier],
            "relation": [[str(e) for e in t] for t in sorted(m.rel, key=key)],
            "units": None if m.units is None else sorted(str(u) for u in m.units)}


def dump_atomic_algebra(q: AtomicBoolPrequantale, name: str = "") -> dict:
    return {"schema": 1, "kind": "atomic-algebra", "name": name, "atoms": [str(a) for a in q.atoms],
            "atom_table": [[str(b), str(c), [str(a) for a in q.atoms if a in v]]
                           for (b, c), v in q.atom_table().items()]}


def dump_relbimagma(b: RelBiMagma, name: str = "") -> dict:
    key = lambda t: tuple(b.index(e) for e in t)  # noqa: E731
    rows = lambda rel: [[str(e) for e in t] for t in sorted(rel, key=key)]  # noqa: E731
    units = lambda u: None if u is None else sorted(str(x) for x in u)  # noqa: E731
    return {"schema": 1, "kind": "relbimagma", "name": name, "carrier": [str(x) for x in b.carrier],
            "seq": rows(b.rel_seq), "par": rows(b.rel_par),
            "units_seq": units(b.units_seq), "units_par": units(b.units_par)}
