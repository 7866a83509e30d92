"""Command-line entry point.  JSON on stdout; DOT for export-dot.

Exit codes: 0 success, 1 property violation, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .dot import export_dot
from .enumeration import KINDS, InstanceClass, census
from .errors import FindualError, InvalidInput, ParseError
from .functors import FUNCTORS, FunctorTag, apply_functor_mor, apply_functor_obj, verify_duality
from .io import jsonable, load_doc, read_json, to_doc
from .morphisms import check_gp_morphism, classify_map
from .spaces import check_space_axioms
from .suite import SuiteConfig, _poset_flags, _space_flags, check_bundle, run_suite

OK, VIOLATION, BAD_INPUT = 0, 1, 2


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def _load(path):
    return load_doc(read_json(path))


def _cmd_check(args) -> int:
    doc = read_json(args.file)
    if isinstance(doc, dict) and "claims" in doc:
        rep = check_bundle(doc)
        _emit(rep.to_json())
        return OK if rep.ok else VIOLATION
    kind, obj = load_doc(doc)
    out = {"kind": kind}
    status = OK
    if kind == "poset":
        out["flags"] = _poset_flags(obj)
    elif kind == "space":
        out["flags"] = _space_flags(obj)
        rep = check_space_axioms(obj)
        out["axioms"] = rep.to_json()["checks"]
        status = OK if rep.ok else VIOLATION
    elif kind == "map":
        out["classification"] = classify_map(obj).to_json()
    else:
        v = check_gp_morphism(obj)
        out["gp_morphism"] = {
            "condition1": {"ok": v.condition1.ok, "witness": jsonable(v.condition1.witness)},
            "condition2": {"ok": v.condition2.ok, "witness": jsonable(v.condition2.witness)},
        }
        status = OK if v.ok else VIOLATION
    _emit(out)
    return status


def _tag(name: str, bounded: bool) -> FunctorTag:
    return FunctorTag(name, "bounded" if bounded else "pointed")


def _cmd_dualize(args) -> int:
    _, obj = _load(args.file)
    _emit(to_doc(apply_functor_obj(_tag(args.functor, args.bounded), obj)))
    return OK


def _cmd_apply(args) -> int:
    _, mor = _load(args.morphism_file)
    _emit(to_doc(apply_functor_mor(_tag(args.functor, args.bounded), mor)))
    return OK


def _cmd_roundtrip(args) -> int:
    _, obj = _load(args.file)
    rep = verify_duality(obj)
    _emit(rep.to_json())
    return OK if rep.ok else VIOLATION


def _cmd_census(args) -> int:
    InstanceClass(args.kind, args.size)  # validates kind and the size cap
    _emit(census(args.kind, args.size))
    return OK


def _cmd_verify(args) -> int:
    classes = tuple(InstanceClass(k, args.size) for k in KINDS)
    cfg = SuiteConfig(
        classes=classes,
        seed=args.seed,
        samples=args.samples,
        fixture_files=tuple(args.fixture),
        mutants=args.mutants,
    )
    rep = run_suite(cfg)
    _emit(rep.to_json())
    return OK if rep.ok else VIOLATION


def _cmd_export_dot(args) -> int:
    kind, obj = _load(args.file)
    if args.pair and kind != "poset":
        raise InvalidInput("--pair needs a distributive meet-semilattice")
    sys.stdout.write(export_dot(obj, "dual-pair" if args.pair else "order"))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="findual", description="Finite dualities for distributive meet-semilattices and algebraic frames.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="classify a poset, space, map or relation (or check a claims bundle)")
    c.add_argument("file")
    c.set_defaults(func=_cmd_check)

    d = sub.add_parser("dualize", help="apply a functor to an object")
    d.add_argument("file")
    d.add_argument("--functor", required=True, choices=FUNCTORS)
    d.add_argument("--bounded", action="store_true")
    d.set_defaults(func=_cmd_dualize)

    a = sub.add_parser("apply", help="apply a functor to a morphism")
    a.add_argument("functor", choices=FUNCTORS)
    a.add_argument("morphism_file")
    a.add_argument("--bounded", action="store_true")
    a.set_defaults(func=_cmd_apply)

    r = sub.add_parser("roundtrip", help="run the duality round-trip checks on an object")
    r.add_argument("file")
    r.set_defaults(func=_cmd_roundtrip)

    cs = sub.add_parser("census", help="count isomorphism classes of one size")
    cs.add_argument("--class", dest="kind", required=True, choices=KINDS)
    cs.add_argument("--size", type=int, required=True)
    cs.set_defaults(func=_cmd_census)

    v = sub.add_parser("verify", help="run the check suite over every class")
    v.add_argument("--size", type=int, default=4)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=1000, help="random maps for the sampled morphism checks")
    v.add_argument("--fixture", action="append", default=[], help="extra bundle file (repeatable)")
    v.add_argument("--mutants", action="store_true", help="also run the built-in broken bundles")
    v.set_defaults(func=_cmd_verify)

    e = sub.add_parser("export-dot", help="write a Hasse diagram in DOT")
    e.add_argument("file")
    e.add_argument("--pair", action="store_true", help="M beside X(M)")
    e.set_defaults(func=_cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except (InvalidInput, ParseError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc), "witness": jsonable(exc.witness)})
        return BAD_INPUT
    except FindualError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc), "witness": jsonable(exc.witness)})
        return VIOLATION


if __name__ == "__main__":
    sys.exit(main())
