"""JSON documents for posets, spaces, maps and relations."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import ParseError
from .order import FinitePoset, hasse_covers


def label(x) -> str:
    """Stable text label: strings unchanged, sets as ``{a,b}`` of sorted labels."""
    if isinstance(x, str):
        return x
    if isinstance(x, (frozenset, set)):
        return "{" + ",".join(sorted(label(y) for y in x)) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(label(y) for y in x) + ")"
    return str(x)


def jsonable(v: Any):
    """Convert witnesses and structures into plain JSON values."""
    from .spaces import Space

    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, FinitePoset):
        return poset_to_doc(v)
    if isinstance(v, Space):
        return space_to_doc(v)
    if isinstance(v, dict):
        return {label(k): jsonable(x) for k, x in sorted(v.items(), key=lambda kv: label(kv[0]))}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, (frozenset, set)):
        return sorted(label(x) for x in v)
    if hasattr(v, "to_json"):
        return v.to_json()
    return label(v)


# -- readers ----------------------------------------------------------------------


def _expect_keys(doc, required: set, optional: set = frozenset(), what: str = "document"):
    if not isinstance(doc, dict):
        raise ParseError(f"{what} must be a JSON object")
    keys = set(doc)
    missing = required - keys
    if missing:
        raise ParseError(f"{what} is missing keys {sorted(missing)}")
    extra = keys - required - set(optional)
    if extra:
        raise ParseError(f"{what} has unknown keys {sorted(extra)}")


def _string_list(v, what: str) -> list:
    if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
        raise ParseError(f"{what} must be a list of strings")
    return v


def _pairs(v, what: str) -> list:
    if not isinstance(v, list):
        raise ParseError(f"{what} must be a list of pairs")
    out = []
    for p in v:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
            raise ParseError(f"{what} entries must be [string, string], got {p!r}")
        out.append((p[0], p[1]))
    return out


def _poset_fields(doc: dict, what: str) -> FinitePoset:
    elements = _string_list(doc["elements"], f"{what}.elements")
    if len(set(elements)) != len(elements):
        raise ParseError(f"{what}.elements contains duplicates")
    return FinitePoset.from_pairs(elements, _pairs(doc["leq"], f"{what}.leq"))


def load_poset(doc) -> FinitePoset:
    """``{"elements": [...], "leq": [[x, y], ...]}``; the order is the closure of ``leq``."""
    _expect_keys(doc, {"elements", "leq"}, what="poset document")
    return _poset_fields(doc, "poset")


def load_space(doc):
    from .spaces import Space

    _expect_keys(doc, {"elements", "leq", "x0"}, {"point"}, what="space document")
    P = _poset_fields(doc, "space")
    x0 = _string_list(doc["x0"], "space.x0")
    point = doc.get("point")
    if point is not None and not isinstance(point, str):
        raise ParseError("space.point must be a string")
    return Space(P, frozenset(x0), point)


def load_map(doc):
    from .morphisms import StructureMap

    _expect_keys(doc, {"dom", "cod", "map"}, what="map document")
    dom, cod = load_poset(doc["dom"]), load_poset(doc["cod"])
    m = doc["map"]
    if not isinstance(m, dict) or not all(isinstance(v, str) for v in m.values()):
        raise ParseError("map must be an object from element ids to element ids")
    return StructureMap(dom, cod, dict(m))


def load_relation(doc):
    from .morphisms import SpaceRelation

    _expect_keys(doc, {"dom", "cod", "pairs"}, what="relation document")
    X, Y = load_space(doc["dom"]), load_space(doc["cod"])
    return SpaceRelation(X, Y, frozenset(_pairs(doc["pairs"], "relation.pairs")))


def detect_kind(doc) -> str:
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    if "pairs" in doc:
        return "relation"
    if "map" in doc:
        return "map"
    if "x0" in doc:
        return "space"
    return "poset"


_LOADERS = {
    "poset": load_poset,
    "space": load_space,
    "map": load_map,
    "relation": load_relation,
}


def load_doc(doc):
    """Return ``(kind, object)`` for any supported document."""
    kind = detect_kind(doc)
    return kind, _LOADERS[kind](doc)


def read_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def load_file(path):
    return load_doc(read_json(path))


# -- writers ----------------------------------------------------------------------


def poset_to_doc(P: FinitePoset) -> dict:
    """Document with the cover relation as ``leq`` (the loader re-closes it)."""
    covers = sorted(hasse_covers(P), key=lambda c: (P.idx(c[0]), P.idx(c[1])))
    return {
        "elements": [label(x) for x in P.elements],
        "leq": [[label(a), label(b)] for a, b in covers],
    }


def space_to_doc(X) -> dict:
    doc = poset_to_doc(X.carrier)
    doc["x0"] = [label(x) for x in X.carrier.elements if x in X.x0]
    if X.point is not None:
        doc["point"] = label(X.point)
    return doc


def map_to_doc(f) -> dict:
    return {
        "dom": poset_to_doc(f.dom),
        "cod": poset_to_doc(f.cod),
        "map": {label(x): label(f.assignment[x]) for x in f.dom.elements},
    }


def relation_to_doc(R) -> dict:
    X, Y = R.dom.carrier, R.cod.carrier
    pairs = sorted(R.pairs, key=lambda p: (X.idx(p[0]), Y.idx(p[1])))
    return {
        "dom": space_to_doc(R.dom),
        "cod": space_to_doc(R.cod),
        "pairs": [[label(a), label(b)] for a, b in pairs],
    }


def to_doc(obj) -> dict:
    from .morphisms import SpaceRelation, StructureMap
    from .spaces import Space

    if isinstance(obj, FinitePoset):
        return poset_to_doc(obj)
    if isinstance(obj, Space):
        return space_to_doc(obj)
    if isinstance(obj, StructureMap):
        return map_to_doc(obj)
    if isinstance(obj, SpaceRelation):
        return relation_to_doc(obj)
    return jsonable(obj)


def dumps(obj) -> str:
    return json.dumps(to_doc(obj), indent=2, sort_keys=True, ensure_ascii=False)
