"""Small named structures used in examples and tests."""
from __future__ import annotations

from .order import FinitePoset
from .spaces import Space


def chain(n: int, names=None) -> FinitePoset:
    names = list(names) if names is not None else [str(i) for i in range(n)]
    return FinitePoset.from_pairs(names, zip(names, names[1:]))


def antichain(names) -> FinitePoset:
    return FinitePoset.from_pairs(list(names))


def boolean_lattice(atoms) -> FinitePoset:
    """Powerset of ``atoms`` with elements labelled by concatenated atom names."""
    atoms = list(atoms)
    n = len(atoms)
    names = {}
    for m in range(1 << n):
        picked = [atoms[i] for i in range(n) if (m >> i) & 1]
        names[m] = "0" if m == 0 else ("1" if m == (1 << n) - 1 and n > 1 else "".join(picked))
    order = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))
    pairs = [(names[a], names[b]) for a in order for b in order if a & b == a]
    return FinitePoset.from_pairs([names[m] for m in order], pairs)


CH1 = FinitePoset.from_pairs(["1"])
CH2 = chain(2, ["0", "1"])
CH3 = chain(3, ["0", "h", "1"])
B2 = FinitePoset.from_pairs(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
M3 = FinitePoset.from_pairs(
    ["0", "a", "b", "c", "1"],
    [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
)
N5 = FinitePoset.from_pairs(
    ["0", "a", "b", "c", "1"],
    [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
)

P3_CARRIER = FinitePoset.from_pairs(["p", "q", "m"], [("p", "m"), ("q", "m")])
P3 = Space(P3_CARRIER, frozenset({"p", "q"}), "m")
POINT = Space(FinitePoset.from_pairs(["m"]), frozenset(), "m")

LATTICES = {"CH1": CH1, "CH2": CH2, "CH3": CH3, "B2": B2, "M3": M3, "N5": N5}
SPACES = {"P3": P3, "POINT": POINT}


# -- bundles: a document plus claims frozen by hand ------------------------------------------

_LATTICE_CLAIMS = {
    "CH1": {"is_lattice": True, "is_distributive_lattice": True, "is_boolean": True},
    "CH2": {"is_lattice": True, "is_distributive_lattice": True, "is_boolean": True},
    "CH3": {"is_lattice": True, "is_distributive_lattice": True, "is_boolean": False},
    "B2": {"is_lattice": True, "is_distributive_lattice": True, "is_boolean": True},
    "M3": {"is_lattice": True, "is_distributive_lattice": False, "is_distributive_semilattice": False},
    "N5": {"is_lattice": True, "is_distributive_lattice": False, "is_distributive_semilattice": False},
}

_SPACE_CLAIMS = {
    "P3": {"valid": True, "pointed": True, "is_pointed_priestley": True, "is_pointed_stone": True},
    "POINT": {"valid": True, "pointed": True, "is_pointed_priestley": True},
}


def _map_doc(dom: FinitePoset, cod: FinitePoset, table: dict) -> dict:
    from .io import poset_to_doc

    return {"dom": poset_to_doc(dom), "cod": poset_to_doc(cod), "map": dict(table)}


def bundles() -> list:
    """Named fixture bundles ``(name, {name, kind, doc, claims})`` in a fixed order."""
    from .io import poset_to_doc, space_to_doc

    out = []
    for name, L in LATTICES.items():
        out.append((name, {"name": name, "kind": "poset", "doc": poset_to_doc(L), "claims": _LATTICE_CLAIMS[name]}))
    for name, X in SPACES.items():
        out.append((name, {"name": name, "kind": "space", "doc": space_to_doc(X), "claims": _SPACE_CLAIMS[name]}))
    alpha = _map_doc(CH3, B2, {"0": "0", "h": "a", "1": "1"})
    claims = {"meet_hom": True, "sup_hom": True, "dagger": True, "frame_hom": True}
    out.append(("CH3_to_B2", {"name": "CH3_to_B2", "kind": "map", "doc": alpha, "claims": claims}))
    ident = _map_doc(B2, B2, {x: x for x in B2.elements})
    out.append(("B2_identity", {"name": "B2_identity", "kind": "map", "doc": ident, "claims": dict(claims, order_preserving=True)}))
    return out


def _drop(doc: dict, pair) -> dict:
    return dict(doc, leq=[p for p in doc["leq"] if p != list(pair)])


def mutants() -> list:
    """Ten deliberately broken bundles, each with claims the broken object cannot meet."""
    from .io import poset_to_doc, space_to_doc

    p3 = space_to_doc(P3)
    chain_space = {"elements": ["p", "m"], "leq": [["p", "m"]], "x0": [], "point": "m"}
    out = [
        ("x0_only_p", {"kind": "space", "doc": dict(p3, x0=["p"]), "claims": {"valid": True}}),
        ("x0_empty", {"kind": "space", "doc": dict(p3, x0=[]), "claims": {"valid": True}}),
        ("x0_missing_maximal", {"kind": "space", "doc": chain_space, "claims": {"valid": True}}),
        ("B2_drop_a1", {"kind": "poset", "doc": _drop(poset_to_doc(B2), ("a", "1")), "claims": _LATTICE_CLAIMS["B2"]}),
        ("CH3_drop_h1", {"kind": "poset", "doc": _drop(poset_to_doc(CH3), ("h", "1")), "claims": _LATTICE_CLAIMS["CH3"]}),
        ("P3_drop_qm", {"kind": "space", "doc": _drop(p3, ("q", "m")), "claims": _SPACE_CLAIMS["P3"]}),
        ("B2_to_CH2_collapse", {
            "kind": "map",
            "doc": _map_doc(B2, CH2, {"0": "0", "a": "1", "b": "1", "1": "1"}),
            "claims": {"meet_hom": True},
        }),
        ("CH2_constant_bottom", {
            "kind": "map",
            "doc": _map_doc(CH2, CH2, {"0": "0", "1": "0"}),
            "claims": {"meet_hom": True},
        }),
        ("B2_lift_a", {
            "kind": "map",
            "doc": _map_doc(B2, B2, {"0": "0", "a": "1", "b": "b", "1": "1"}),
            "claims": {"meet_hom": True, "frame_hom": True},
        }),
        ("CH3_to_B2_twisted", {
            "kind": "map",
            "doc": _map_doc(CH3, B2, {"0": "0", "h": "b", "1": "a"}),
            "claims": {"order_preserving": True, "meet_hom": True},
        }),
    ]
    return [(name, dict(b, name=name)) for name, b in out]
