"""Batteries over enumerated instances, fixture bundles and mutants.

Every check lands in one DualityReport under a key of the form
``battery.kind.n<size>.<index>.check``; the report is a pure function of
the configuration, so equal seeds give byte-identical JSON.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import fixtures
from .algebra import (
    _is_boolean_lattice,
    classify_frame,
    is_distributive_lattice,
    is_distributive_semilattice,
    is_frame,
    prime_and_pseudoprime,
    prime_mask,
)
from .enumeration import (
    ADVISORY_COUNTS,
    InstanceClass,
    instances_of_size,
    posets_bruteforce,
)
from .equivalences import EXHAUSTIVE_LIMIT, check_morphism_equivalences
from .errors import FindualError, ParseError
from .filters import (
    filter_lattice,
    filters,
    optimal_filters_via_envelope,
    optimal_filters_via_pseudoprimes,
    prime_filters,
)
from .functors import compact_dual, compact_ideal_map, spectrum, verify_duality
from .io import load_doc, read_json
from .laws import check_category_laws
from .morphisms import check_gp_morphism, classify_map
from .order import FinitePoset, classify_poset, is_lattice, is_meet_semilattice, is_order_isomorphism
from .report import DualityReport
from .spaces import Space, check_space_axioms, minus, space_kind

BATTERIES = (
    "census",
    "filt_collapse",
    "distributivity",
    "coherence",
    "roundtrip",
    "equivalences",
    "laws",
    "triangles",
)

# largest size each battery runs at, whatever the class asks for
SIZE_LIMITS = {
    "filt_collapse": 7,
    "distributivity": 7,
    "coherence": 7,
    "roundtrip": 6,
    "triangles": 6,
    "equivalences.exhaustive": 4,
    "equivalences.sampled": 6,
    "laws.pgps": 4,
    "laws.gps": 3,
    "spaces": 4,
    "bruteforce": 5,
}

KIND_BATTERIES = {
    "poset": ("census",),
    "ms": ("census", "filt_collapse", "distributivity"),
    "dms": ("census", "roundtrip"),
    "bdms": ("census", "triangles"),
    "dl": ("census", "equivalences"),
    "frame": ("census", "coherence"),
    "ba": ("census", "triangles"),
    "gps": ("census", "roundtrip", "laws"),
    "pgps": ("census", "roundtrip", "laws"),
}


@dataclass(frozen=True)
class SuiteConfig:
    classes: tuple = ()
    seed: int = 0
    samples: int = 10_000
    exhaustive_limit: int = EXHAUSTIVE_LIMIT
    batteries: Optional[tuple] = None  # None runs everything that applies
    fixtures: bool = True
    fixture_files: tuple = ()
    mutants: bool = False

    def wants(self, battery: str) -> bool:
        return self.batteries is None or battery in self.batteries


# -- per-instance batteries ------------------------------------------------------------------------


def filt_collapse(M: FinitePoset) -> DualityReport:
    """F ↦ ⋀F is an order-isomorphism Filt(M) -> M^op."""
    rep = DualityReport()
    fam = filters(M)
    Mop = M.dual()
    meet_of = {F: M.elements[M.meet_idx(M.mask(F))] for F in fam.filters}
    rep.add("size", len(fam) == M.n, {"filters": len(fam), "elements": M.n})
    ok = is_order_isomorphism(fam.inclusion_order, Mop, meet_of)
    rep.add("meet_iso", ok, None if ok else meet_of)
    return rep


def _lattice_witness_genuine(L: FinitePoset, w) -> bool:
    a, b, c = (L.idx(x) for x in w)
    meet, join = L.meet_table, L.join_table
    return meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]


def _semilattice_witness_genuine(M: FinitePoset, w) -> bool:
    a, b, c = (M.idx(x) for x in w)
    meet, up = M.meet_table, M.up
    if not (up[meet[a][b]] >> c) & 1:
        return False
    return not any(meet[x][y] == c for x in range(M.n) if (up[a] >> x) & 1 for y in range(M.n) if (up[b] >> y) & 1)


def distributivity(L: FinitePoset) -> DualityReport:
    """Semilattice, lattice and filter-lattice distributivity agree; false answers carry real witnesses."""
    rep = DualityReport()
    s = is_distributive_semilattice(L)
    d = is_distributive_lattice(L)
    F = filter_lattice(L)
    f = is_distributive_lattice(F)
    rep.add("three_way", bool(s) == bool(d) == bool(f), {"semilattice": s.ok, "lattice": d.ok, "filters": f.ok})
    if not d.ok:
        genuine = (
            _semilattice_witness_genuine(L, s.witness)
            and _lattice_witness_genuine(L, d.witness)
            and _lattice_witness_genuine(F, f.witness)
        )
        rep.add("false_side_witnessed", genuine, {"semilattice": s.witness, "lattice": d.witness, "filters": f.witness})
    return rep


def coherence(L: FinitePoset) -> DualityReport:
    """Finite frames: PP = P, and optimal filters of K(L) are prime under a ↦ ↓a ∩ K."""
    rep = DualityReport()
    cls = prime_and_pseudoprime(L)
    rep.add("PP_equals_P", cls.pseudoprimes == cls.primes, cls.pseudoprimes ^ cls.primes)
    K = compact_dual(L)
    env = set(optimal_filters_via_envelope(K))
    pp = set(optimal_filters_via_pseudoprimes(K))
    rep.add("optimal_algorithms_agree", env == pp, env ^ pp)
    pr = set(prime_filters(K))
    rep.add("optimal_equals_prime", pp == pr, pp ^ pr)
    ident = compact_ideal_map(L)
    rep.add("pseudoprimes_to_optimal", {ident(p) for p in cls.pseudoprimes} == pp)
    rep.add("primes_to_prime_filters", {ident(p) for p in cls.primes} == pr)
    return rep


def roundtrip(obj) -> DualityReport:
    rep = verify_duality(obj)
    if isinstance(obj, FinitePoset):
        # pointed-Priestley triangle: M distributive, F(M) arithmetic, X(M) pointed Priestley
        F = filter_lattice(obj)
        arith = classify_frame(F).is_arithmetic
        pp = space_kind(spectrum(obj)).is_pointed_priestley
        rep.add("pointed_priestley_triangle", arith and pp, {"arithmetic": arith, "pointed_priestley": pp})
    return rep


def triangles(M: FinitePoset) -> tuple:
    """Coherence, Priestley and Stone triangles for a bounded distributive M; also returns the GBA/BA log entry."""
    rep = DualityReport()
    F = filter_lattice(M)
    prof = classify_frame(F)
    rep.add("F_coherent", prof.is_coherent, prof.witnesses.get("is_coherent"))
    Xm = minus(spectrum(M))
    kind = space_kind(Xm)
    rep.add("X_minus_priestley", kind.is_priestley)
    boolean = _is_boolean_lattice(M) is None
    stone = prof.is_stone_frame
    pm = prime_mask(F)
    antichain = all(F.up[i] & pm == 1 << i for i in range(F.n) if (pm >> i) & 1)
    rep.add("stone_triangle", boolean == stone == antichain, {"boolean": boolean, "stone": stone, "antichain": antichain})
    rep.add("stone_space", boolean == kind.is_stone, {"boolean": boolean, "equality_order": kind.is_stone})
    gba = classify_frame(M).is_generalized_boolean
    return rep, (gba, boolean)


# -- census ------------------------------------------------------------------------------------------

_PREDICATES = {
    "poset": lambda P: True,
    "ms": is_meet_semilattice,
    "dms": lambda M: is_meet_semilattice(M) and bool(is_distributive_semilattice(M)),
    "bdms": lambda M: is_meet_semilattice(M) and M.bottom_idx is not None and bool(is_distributive_semilattice(M)),
    "dl": lambda L: is_lattice(L) and bool(is_distributive_lattice(L)),
    "frame": lambda L: is_lattice(L) and is_frame(L),
    "ba": lambda L: is_lattice(L) and _is_boolean_lattice(L) is None,
    "gps": lambda X: not X.pointed and check_space_axioms(X).ok,
    "pgps": lambda X: X.pointed and check_space_axioms(X).ok,
}

_ADVISORY_TABLE = {"poset": "poset", "ms": "lattice", "dl": "dl", "frame": "dl"}


def census(kind: str, by_size: dict, meta: dict) -> DualityReport:
    rep = DualityReport()
    pred = _PREDICATES[kind]
    for n, items in sorted(by_size.items()):
        bad = [k for k, x in enumerate(items) if not pred(x)]
        rep.add(f"n{n}.sound", not bad, bad[:3] or None)
        meta[f"census.{kind}.n{n}"] = len(items)
        table = _ADVISORY_TABLE.get(kind)
        if table and n < len(ADVISORY_COUNTS[table]):
            meta[f"advisory.{kind}.n{n}"] = {"published": ADVISORY_COUNTS[table][n], "found": len(items)}
        if kind == "poset" and n <= SIZE_LIMITS["bruteforce"]:
            brute = len(posets_bruteforce(n))
            rep.add(f"n{n}.complete_vs_bruteforce", brute == len(items), {"bruteforce": brute, "found": len(items)})
    return rep


def _is_dms(M: FinitePoset) -> bool:
    return is_meet_semilattice(M) and bool(is_distributive_semilattice(M))


# -- fixture bundles -----------------------------------------------------------------------------------


def _poset_flags(P: FinitePoset) -> dict:
    c = classify_poset(P)
    flags = {k: getattr(c, k) for k in ("is_meet_semilattice", "is_lattice", "has_top", "has_bottom", "is_chain", "is_antichain")}
    if c.is_meet_semilattice:
        flags["is_distributive_semilattice"] = bool(is_distributive_semilattice(P))
    if c.is_lattice:
        flags.update(classify_frame(P).flags)
    return flags


def _space_flags(X: Space) -> dict:
    flags = {"valid": check_space_axioms(X).ok, "pointed": X.pointed}
    k = space_kind(X)
    flags.update(
        is_priestley=k.is_priestley,
        is_pointed_priestley=k.is_pointed_priestley,
        is_pointed_stone=k.is_pointed_stone,
        is_stone=k.is_stone,
    )
    return flags


def check_bundle(bundle) -> DualityReport:
    """Load a {name, kind, doc, claims} bundle, compare claims, then run the applicable battery."""
    rep = DualityReport()
    try:
        if not isinstance(bundle, dict) or not {"doc", "claims"} <= set(bundle):
            raise ParseError("bundle needs 'doc' and 'claims'")
        kind, obj = load_doc(bundle["doc"])
        if bundle.get("kind", kind) != kind:
            raise ParseError(f"bundle says kind {bundle['kind']!r}, document is a {kind}")
    except FindualError as exc:
        rep.add("load", False, exc.witness, note=f"{type(exc).__name__}: {exc}")
        return rep
    rep.add("load", True)
    if kind == "poset":
        flags = _poset_flags(obj)
    elif kind == "space":
        flags = _space_flags(obj)
    elif kind == "map":
        flags = {k: v for k, v in classify_map(obj).flags.items()}
    else:
        flags = {"gp_morphism": check_gp_morphism(obj).ok}
    for key, claimed in sorted(bundle["claims"].items()):
        if key not in flags:
            rep.add(f"claim.{key}", False, "unknown flag for this kind")
        else:
            rep.add(f"claim.{key}", flags[key] == claimed, {"claimed": claimed, "computed": flags[key]})
    if kind == "poset" and (flags.get("is_distributive_semilattice") or flags.get("is_frame")):
        rep.extend(verify_duality(obj), prefix="duality.")
    elif kind == "space":
        rep.extend(verify_duality(obj), prefix="duality.")
    elif kind == "map" and flags.get("meet_hom") and _is_dms(obj.dom) and _is_dms(obj.cod):
        rep.extend(verify_duality(obj.dom, morphisms=[obj]), prefix="duality.")
    return rep


def _load_fixture_file(path) -> list:
    doc = read_json(path)
    if isinstance(doc, dict) and "bundles" in doc:
        doc = doc["bundles"]
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list):
        raise ParseError(f"{path}: expected a bundle, a list of bundles or {{'bundles': [...]}}")
    return doc


# -- runner --------------------------------------------------------------------------------------------


def _instances(c: InstanceClass, limit: Optional[int] = None) -> dict:
    top = c.max_size if limit is None else min(c.max_size, limit)
    sizes = [c.max_size] if c.exact else range(1, top + 1)
    return {n: instances_of_size(c.kind, n) for n in sizes if n <= top}


def _per_instance(rep: DualityReport, battery: str, kind: str, by_size: dict, fn) -> None:
    for n, items in sorted(by_size.items()):
        for k, obj in enumerate(items):
            try:
                sub = fn(obj)
            except FindualError as exc:
                sub = DualityReport()
                sub.add("error", False, exc.witness, note=f"{type(exc).__name__}: {exc}")
            rep.extend(sub, prefix=f"{battery}.{kind}.n{n}.{k:03d}.")


def run_suite(cfg: SuiteConfig = SuiteConfig()) -> DualityReport:
    rep = DualityReport()
    meta = rep.meta
    meta["seed"] = cfg.seed
    meta["classes"] = [{"kind": c.kind, "max_size": c.max_size, "exact": c.exact} for c in cfg.classes]
    meta["samples"] = cfg.samples
    meta["batteries"] = list(cfg.batteries) if cfg.batteries is not None else list(BATTERIES)
    for c in cfg.classes:
        for battery in KIND_BATTERIES[c.kind]:
            if not cfg.wants(battery):
                continue
            _run_battery(rep, cfg, c, battery)
    if cfg.fixtures and cfg.wants("fixtures"):
        for name, bundle in fixtures.bundles():
            rep.extend(check_bundle(bundle), prefix=f"fixture.{name}.")
    for path in cfg.fixture_files:
        stem = Path(path).stem
        try:
            bundles = _load_fixture_file(path)
        except FindualError as exc:
            rep.add(f"file.{stem}.load", False, exc.witness, note=str(exc))
            continue
        for k, bundle in enumerate(bundles):
            name = bundle.get("name", str(k)) if isinstance(bundle, dict) else str(k)
            rep.extend(check_bundle(bundle), prefix=f"file.{stem}.{name}.")
    if cfg.mutants:
        for name, bundle in fixtures.mutants():
            rep.extend(check_bundle(bundle), prefix=f"mutant.{name}.")
    return rep


def _run_battery(rep: DualityReport, cfg: SuiteConfig, c: InstanceClass, battery: str) -> None:
    kind, meta = c.kind, rep.meta
    if battery == "census":
        rep.extend(census(kind, _instances(c), meta), prefix=f"census.{kind}.")
    elif battery == "filt_collapse":
        _per_instance(rep, battery, kind, _instances(c, SIZE_LIMITS[battery]), filt_collapse)
    elif battery == "distributivity":
        lat = {n: [L for L in items if is_lattice(L)] for n, items in _instances(c, SIZE_LIMITS[battery]).items()}
        _per_instance(rep, battery, kind, lat, distributivity)
    elif battery == "coherence":
        _per_instance(rep, battery, kind, _instances(c, SIZE_LIMITS[battery]), coherence)
    elif battery == "roundtrip":
        limit = SIZE_LIMITS["roundtrip"] if kind == "dms" else SIZE_LIMITS["spaces"]
        _per_instance(rep, battery, kind, _instances(c, limit), roundtrip)
    elif battery == "triangles":
        log = {"agree": 0, "disagree": 0}

        def one(M):
            sub, (gba, ba) = triangles(M)
            log["agree" if gba == ba else "disagree"] += 1
            return sub

        _per_instance(rep, battery, kind, _instances(c, SIZE_LIMITS[battery]), one)
        meta[f"log.{kind}.generalized_boolean_vs_boolean"] = log
    elif battery == "equivalences":
        sizes = _instances(c, SIZE_LIMITS["equivalences.sampled"])
        cut = SIZE_LIMITS["equivalences.exhaustive"]
        small = [L for n, items in sorted(sizes.items()) if n <= cut for L in items]
        large = [L for n, items in sorted(sizes.items()) if n > cut for L in items]
        sub = check_morphism_equivalences(small, large, samples=cfg.samples if large else 0, seed=cfg.seed)
        for k, v in sorted(sub.meta.items()):
            if k != "seed":
                meta[f"equivalences.{kind}.{k}"] = v
        rep.extend(sub, prefix=f"equivalences.{kind}.")
    elif battery == "laws":
        limit = SIZE_LIMITS[f"laws.{kind}"]
        spaces = [X for n, items in sorted(_instances(c, limit).items()) for X in items]
        sub = check_category_laws(spaces, seed=cfg.seed)
        for k, v in sorted(sub.meta.items()):
            if k != "seed":
                meta[f"laws.{kind}.{k}"] = v
        rep.extend(sub, prefix=f"laws.{kind}.")
