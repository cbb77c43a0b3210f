"""Command-line front end.

Exit codes: 0 when everything selected passes, 1 on a law failure (the
witness is printed), 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import correspond, duality, graphmodels, io
from .convolution import LIFTED_SUITE, LiftedAlgebra, check_lifted_laws, iterative_star, show_element, star_graded
from .errors import ConvAlgError, MalformedTable, NotALattice, SchemaError
from .laws import LawReport, LawResult
from .partialmon import (PartialInterchangeMonoid, check_partial_monoid, check_pim, check_positive,
                         check_serially_decomposable, check_small_partial_interchange,
                         pim_to_interchange_semigroup, serial_decomposition_failure)
from .relstruct import (RelBiMagma, RelMagma, check_grading, check_rel_assoc, check_rel_comm, check_rel_units,
                        check_relational_interchange)
from .weights import (BiQuantale, FiniteQuantale, KleeneAlgebraTable, check_algebraic_interchange,
                      check_biquantale_laws, check_commutative, check_quantale_laws)

INPUT_ERRORS = (SchemaError, MalformedTable, NotALattice, KeyError, ValueError, OSError)


class InputError(Exception):
    pass


def _prefixed(prefix: str, rep: LawReport) -> list[LawResult]:
    return [LawResult(prefix + r.law, r.holds, r.witness, r.strategy, r.note) for r in rep.results]


def _magma_laws(m: RelMagma, prefix: str, grading=None) -> list[LawResult]:
    out = [LawResult(prefix + "assoc", *_wit(check_rel_assoc(m))),
           LawResult(prefix + "comm", *_wit(check_rel_comm(m)))]
    if m.units is not None:
        out += _prefixed(prefix + "units.", check_rel_units(m))
    if grading is not None:
        out += _prefixed(prefix + "grading.", check_grading(m, grading, m.units))
    return out


def _wit(r: LawResult) -> tuple:
    return r.holds, r.witness


def full_report(s: io.Structure) -> LawReport:
    obj = s.obj
    rep = LawReport(s.name)
    if isinstance(obj, FiniteQuantale):
        rep.results += check_quantale_laws(obj).results
        rep.add(LawResult("commutativity", *_wit(check_commutative(obj))))
    elif isinstance(obj, BiQuantale):
        rep.results += check_biquantale_laws(obj).results
        for k in range(1, 8):
            r = check_algebraic_interchange(obj, k)
            rep.add(LawResult(f"I{k}", r.holds, r.witness))
    elif isinstance(obj, RelBiMagma):
        for k in range(1, 8):
            rep.add(check_relational_interchange(obj, k))
        rep.results += _magma_laws(obj.seq_magma, "seq.", _grading(s))
        rep.results += _magma_laws(obj.par_magma, "par.")
    elif isinstance(obj, RelMagma):
        rep.results += _magma_laws(obj, "", _grading(s))
    elif isinstance(obj, PartialInterchangeMonoid):
        rep.results += check_pim(obj).results
        for k in range(1, 7):
            rep.add(check_small_partial_interchange(obj, k))
        rep.add(LawResult("positive", check_positive(obj)))
        rep.add(LawResult("serially-decomposable", check_serially_decomposable(obj),
                          serial_decomposition_failure(obj)))
        rel = pim_to_interchange_semigroup(obj)
        for k in range(1, 8):
            rep.add(check_relational_interchange(rel, k))
    elif isinstance(obj, duality.AtomicBoolPrequantale):
        rep.results += duality.verify_jt_duality(obj).results
    elif isinstance(obj, graphmodels.Digraph):
        rep.add(LawResult("poset", obj.is_poset()))
        rep.add(LawResult("loop-free", not obj.has_loops()))
    else:  # a bare partial monoid
        rep.results += check_partial_monoid(obj).results
    return rep


def _grading(s: io.Structure):
    if s.grading is None:
        return None
    carrier = s.obj.carrier
    if all(x in carrier for x in s.grading):
        return s.grading
    return {s.element(k): v for k, v in s.grading.items()}


def select(rep: LawReport, laws: list[str] | None) -> LawReport:
    if not laws:
        return rep
    out = LawReport(rep.subject)
    for want in laws:
        w = want.lower()
        hit = [r for r in rep.results if r.law.lower() == w or r.law.lower().startswith(w + ".")]
        if not hit:
            known = ", ".join(r.law for r in rep.results)
            raise InputError(f"unknown law {want!r}; known: {known}")
        out.results += hit
    return out


def _fmt(x) -> str:
    if isinstance(x, frozenset):
        return "{" + ",".join(sorted(show_element(y) for y in x)) + "}"
    return show_element(x)


def _emit(args, payload: dict, text: str) -> None:
    print(text)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")


# ---------------------------------------------------------------- verbs

def cmd_check(args) -> int:
    s = io.load(args.file)
    rep = select(full_report(s), None if args.all else args.law)
    _emit(args, {"command": "check", "ok": rep.ok, **rep.to_dict(_fmt)}, rep.format(_fmt))
    return 0 if rep.ok else 1


def _weights(ref: str | None):
    if ref is None:
        ref = "boolean"
    w = io.load(ref)
    if not isinstance(w.obj, (FiniteQuantale, BiQuantale)):
        raise InputError(f"{ref} is not a weight algebra")
    return w.obj


def _base(s: io.Structure):
    obj = s.obj
    if isinstance(obj, PartialInterchangeMonoid):
        return pim_to_interchange_semigroup(obj)
    if isinstance(obj, (RelMagma, RelBiMagma)):
        return obj
    raise InputError(f"{s.name} is not a relational structure")


def parse_function(s: io.Structure, l: LiftedAlgebra, text: str):
    """``x`` (weight top), ``x:w,y:v``, ``0`` for the zero function, or a JSON object."""
    text = text.strip()
    top = l.weights.lattice.top
    if text in ("0", "{}"):
        return l.zero()
    if text.startswith("{"):
        raw = json.loads(text)
    else:
        raw = {}
        for part in text.split(","):
            name, _, w = part.strip().partition(":")
            raw[name.strip()] = w.strip() or top
    vals = {}
    for name, w in raw.items():
        if w not in l.weights.elements:
            raise InputError(f"unknown weight {w!r}")
        vals[s.element(name)] = w
    return l.function(vals)


def cmd_convolve(args) -> int:
    s = io.load(args.file)
    l = LiftedAlgebra(_base(s), _weights(args.weights))
    f = parse_function(s, l, args.f)
    g = parse_function(s, l, args.g)
    h = l.convolve(f, g, args.rel)
    _emit(args, {"command": "convolve", "result": {show_element(x): w for x, w in h.to_pairs()}}, l.show(h))
    return 0


def cmd_star(args) -> int:
    s = io.load(args.file)
    q = _weights(args.weights)
    if isinstance(q, BiQuantale):
        q = q.retract("seq")
    base = _base(s)
    m = base.seq_magma if isinstance(base, RelBiMagma) else base
    l = LiftedAlgebra(m, q)
    f = parse_function(s, l, args.f)
    graded = iterative = None
    if args.method in ("graded", "both"):
        graded = star_graded(f, m, KleeneAlgebraTable.from_quantale(q), _grading(s))
    if args.method in ("iterative", "both"):
        iterative = iterative_star(f, m, q)
    result = graded if graded is not None else iterative
    text = l.show(result)
    agree = graded is None or iterative is None or graded == iterative
    if not agree:
        text += f"\nFAIL iterative star differs: {l.show(iterative)}"
    _emit(args, {"command": "star", "result": {show_element(x): w for x, w in result.to_pairs()},
                 "methods_agree": agree}, text)
    return 0 if agree else 1


SUITES = {
    "interchange": [f"I{k}" for k in range(1, 8)],
    "all": list(LIFTED_SUITE),
    "monoid": ["assoc_seq", "assoc_par", "unit_seq", "unit_par"],
}


def cmd_lift(args) -> int:
    x = io.load(args.file_x)
    q = _weights(args.file_q)
    l = LiftedAlgebra(_base(x), q)
    laws = SUITES.get(args.suite, args.suite.split(","))
    rep = LawReport(f"{x.name} x {args.file_q}")
    for law in laws:
        domain = "antitone" if law in args.antitone else None
        rep.add(check_lifted_laws(l, law, budget=args.budget, domain=domain,
                                  preorder=x.preorder if domain else None, strategy=args.strategy))
    _emit(args, {"command": "lift", "ok": rep.ok, **rep.to_dict(_fmt)}, rep.format(_fmt))
    return 0 if rep.ok else 1


POMSET_OPS = ("seq", "par", "subsumes", "subsumed-by", "isomorphic")


def cmd_pomset(args) -> int:
    t1 = graphmodels.parse_type(args.term1)
    if args.op is None:
        print(t1)
        return 0
    if args.term2 is None:
        raise InputError(f"{args.op} needs a second term")
    t2 = graphmodels.parse_type(args.term2)
    if args.op == "seq":
        print(graphmodels.type_seq(t1, t2))
        return 0
    if args.op == "par":
        print(graphmodels.type_par(t1, t2))
        return 0
    if args.op == "subsumes":  # t1 subsumes t2: t2 has at least the order of t1
        verdict = graphmodels.type_subsumes(t2, t1)
    elif args.op == "subsumed-by":
        verdict = graphmodels.type_subsumes(t1, t2)
    else:
        verdict = t1 == t2
    print("true" if verdict else "false")
    return 0 if verdict else 1


def cmd_search(args) -> int:
    scopes = ["no-D", "no-RD", "no-unit"] if args.scope == "all" else [args.scope]
    found = []
    for scope in scopes:
        ws = correspond.search_counterexamples(scope, budget=args.budget, limit=args.limit)
        print(f"# {scope}: {len(ws)} witness(es)")
        for w in ws:
            print(w.line())
        found.append((scope, ws))
    payload = {"command": "search", "scopes": {sc: [w.to_dict() for w in ws] for sc, ws in found}}
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=1)
    return 0 if all(ws for _, ws in found) else 1


def cmd_correspond(args) -> int:
    res = correspond.correspondence_suite(args.max_x, args.max_q, args.budget, args.jobs, args.rule,
                                          None if args.strategy == "auto" else args.strategy)
    lines = [f"pairs: {res.pairs}{' (truncated)' if res.truncated else ''}",
             *(f"verified {k}: {v}" for k, v in res.verified.items()),
             f"alarms: {len(res.alarms)}"]
    lines += [" ; ".join(a) for a in res.alarms[:20]]
    _emit(args, {"command": "correspond", "ok": res.ok, "pairs": res.pairs, "verified": res.verified,
                 "alarms": [list(a) for a in res.alarms]}, "\n".join(lines))
    return 0 if res.ok else 1


def cmd_duality(args) -> int:
    if args.suite:
        res = duality.duality_suite(max_points=args.max_points)
        _emit(args, {"command": "duality", "ok": res.ok, "algebras": res.algebras, "magmas": res.magmas,
                     "relations": res.relations, "morphisms": res.morphisms,
                     "failures": list(res.failures)}, "\n".join(res.lines()))
        return 0 if res.ok else 1
    if args.file is None:
        raise InputError("give a structure file or --suite")
    s = io.load(args.file)
    obj = s.obj
    if isinstance(obj, RelBiMagma):
        obj = obj.seq_magma
    if not isinstance(obj, (RelMagma, FiniteQuantale, duality.AtomicBoolPrequantale)):
        raise InputError(f"{s.name}: duality needs a relational magma or an atomic Boolean algebra")
    rep = duality.verify_jt_duality(obj)
    _emit(args, {"command": "duality", "ok": rep.ok, **rep.to_dict(_fmt)}, rep.format(_fmt))
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convalg", description="Convolution algebras over relational structures.")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("check", help="run law checks on a structure file or fixture")
    c.add_argument("file")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--law", action="append", help="law id (repeatable); a prefix like 'seq.units' selects a group")
    g.add_argument("--all", action="store_true")
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("convolve", help="convolve two weighted functions")
    c.add_argument("file")
    c.add_argument("f")
    c.add_argument("g")
    c.add_argument("--rel", choices=["seq", "par"], default="seq")
    c.add_argument("--weights")
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(run=cmd_convolve)

    c = sub.add_parser("star", help="Kleene star of a weighted function")
    c.add_argument("file")
    c.add_argument("f")
    c.add_argument("--weights")
    c.add_argument("--method", choices=["graded", "iterative", "both"], default="both")
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(run=cmd_star)

    c = sub.add_parser("lift", help="check laws of the convolution algebra")
    c.add_argument("file_x")
    c.add_argument("file_q")
    c.add_argument("--suite", default="all", help="interchange, monoid, all, or comma-separated law ids")
    c.add_argument("--budget", type=int, default=4096)
    c.add_argument("--strategy", choices=["exhaustive", "delta-complete", "generated-fragment"])
    c.add_argument("--antitone", action="append", default=[], metavar="LAW",
                   help="check LAW on antitone functions for the structure's preorder")
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(run=cmd_lift)

    c = sub.add_parser("pomset", help="series-parallel terms over graph types")
    c.add_argument("term1")
    c.add_argument("op", nargs="?", choices=POMSET_OPS)
    c.add_argument("term2", nargs="?")
    c.set_defaults(run=cmd_pomset)

    c = sub.add_parser("search", help="counterexamples showing a side condition is needed")
    c.add_argument("--scope", choices=["no-D", "no-RD", "no-unit", "all"], default="all")
    c.add_argument("--budget", type=int, default=10 ** 6)
    c.add_argument("--limit", type=int, default=5)
    c.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; the search is sequential")
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(run=cmd_search)

    c = sub.add_parser("correspond", help="correspondence suite over small bi-magmas and weight tables")
    c.add_argument("--max-x", type=int, default=2)
    c.add_argument("--max-q", type=int, default=2)
    c.add_argument("--budget", type=int, default=10 ** 6)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--rule", choices=["shape", "ceil-half"], default="shape")
    c.add_argument("--strategy", choices=["delta-complete", "exhaustive", "auto"], default="delta-complete")
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(run=cmd_correspond)

    c = sub.add_parser("duality", help="round-trip isomorphisms and the enumerated duality suite")
    c.add_argument("file", nargs="?")
    c.add_argument("--suite", action="store_true")
    c.add_argument("--max-points", type=int, default=3)
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(run=cmd_duality)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (InputError, *INPUT_ERRORS) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ConvAlgError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
