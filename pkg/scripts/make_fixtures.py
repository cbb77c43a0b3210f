"""Regenerate the JSON fixtures shipped under src/convalg/fixtures."""
from __future__ import annotations

import json
from pathlib import Path

from convalg.duality import AtomicBoolPrequantale
from convalg.io import (build, dump_atomic_algebra, dump_biquantale, dump_partial_monoid, dump_pim,
                        dump_quantale, dump_relbimagma, dump_relmagma)
from convalg.partialmon import (counterexample_pim, heaplet_monoid, interval_monoid, one_point_pim, pair_monoid,
                                pim_to_interchange_semigroup)
from convalg.relstruct import RelMagma
from convalg.weights import boolean_biquantale, boolean_quantale, chain_meet_quantale, minplus_quantale

OUT = Path(__file__).resolve().parent.parent / "src" / "convalg" / "fixtures"


def universe(name, **kw):
    return {"schema": 1, "kind": "universe-spec", "name": name, **kw}


def fixtures() -> dict:
    z2 = RelMagma(("0", "1"), {(str((a + b) % 2), str(a), str(b)) for a in (0, 1) for b in (0, 1)}, {"0"})
    return {
        "words1": universe("words1", model="words", alphabet=["a", "b"], max_len=1),
        "words2": universe("words2", model="words", alphabet=["a", "b"], max_len=2),
        "words3": universe("words3", model="words", alphabet=["a", "b"], max_len=3),
        "words4": universe("words4", model="words", alphabet=["a", "b"], max_len=4),
        "posettypes3": universe("posettypes3", model="graph-types", max_vertices=3, posets_only=True),
        "graphtypes3": universe("graphtypes3", model="graph-types", max_vertices=3),
        "graphpim3": universe("graphpim3", model="graph-pim", max_vertices=3),
        "posetpim3": universe("posetpim3", model="graph-pim", max_vertices=3, posets_only=True),
        "boolean": dump_quantale(boolean_quantale(), "boolean"),
        "boolean-bi": dump_biquantale(boolean_biquantale(), "boolean-bi"),
        "minplus3": dump_quantale(minplus_quantale(1), "minplus3"),
        "chain3": dump_quantale(chain_meet_quantale(), "chain3"),
        "counterexample-pim": dump_pim(counterexample_pim(), "counterexample-pim"),
        # both compositions encoded by equality: the parallel relation no longer contains the sequential one
        "counterexample-equational": dump_relbimagma(pim_to_interchange_semigroup(
            counterexample_pim(), "equality", "equality"), "counterexample-equational"),
        "one-point": dump_pim(one_point_pim(), "one-point"),
        "interval3": dump_partial_monoid(interval_monoid(3), "interval3"),
        "pair2": dump_partial_monoid(pair_monoid(), "pair2"),
        "heaplet22": dump_partial_monoid(heaplet_monoid(), "heaplet22"),
        "z2": dump_relmagma(z2, "z2"),
        "atoms2": dump_atomic_algebra(AtomicBoolPrequantale.from_atom_table(
            ("p", "q"), {("p", "p"): ("p",), ("p", "q"): ("q",), ("q", "p"): ("q",), ("q", "q"): ("p",)}),
            "atoms2"),
    }


def main() -> None:
    OUT.mkdir(exist_ok=True)
    for name, doc in fixtures().items():
        build(doc, name)  # refuse to write anything that does not load
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
        print("wrote", name)


if __name__ == "__main__":
    main()
