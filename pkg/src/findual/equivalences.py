"""Per-map equivalences between morphism classes and their dual descriptions.

Each ``*_conditions`` helper returns a tuple of booleans that must agree:
the algebraic flag first, then the dual-side descriptions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import compact_mask, is_distributive_lattice, is_frame
from .errors import FindualError
from .filters import _is_ideal, filter_masks, ideal_masks, _prime_filter_masks
from .morphisms import (
    PointMap,
    StructureMap,
    check_strong,
    classify_map,
    least_element_map,
    left_adjoint_on_filters,
    relation_from_frame_morphism,
    relation_of_map,
    right_adjoint,
    _dagger,
    _subsets_by_size,
)
from .order import FinitePoset, iter_bits
from .report import DualityReport
from .spaces import y_space

EXHAUSTIVE_LIMIT = 10**6


@lru_cache(maxsize=None)
def _y(L: FinitePoset):
    return y_space(L)


@lru_cache(maxsize=None)
def _filters(M: FinitePoset):
    fm = filter_masks(M)
    return fm, _prime_filter_masks(M, fm), ideal_masks(M)


def _preimage(f: StructureMap, mask: int) -> int:
    t, out = f.table, 0
    for i, j in enumerate(t):
        if (mask >> j) & 1:
            out |= 1 << i
    return out


def dagger_nonempty(beta: StructureMap) -> bool:
    """The dagger condition over nonempty S only (the empty meet is the top)."""
    return _dagger(beta, [S for S in _subsets_by_size(beta.dom.n) if S]) is None


def sup_strong_conditions(beta: StructureMap, cls=None) -> tuple:
    """For a join-complete map between frames: dagger over nonempty S, r[Y2] ⊆ Y1,
    r|Y strong with R_β as its relation."""
    r = right_adjoint(beta)
    Y1, Y2 = _y(beta.dom), _y(beta.cod)
    into = all(r(p) in Y1.carrier for p in Y2.carrier.elements)
    third = False
    if into:
        f = PointMap(Y2, Y1, {p: r(p) for p in Y2.carrier.elements})
        R = relation_from_frame_morphism(beta)
        try:
            third = bool(check_strong(f)) and relation_of_map(f) == R and least_element_map(R) == f
        except FindualError:
            third = False
    return dagger_nonempty(beta), into, third


def interpolation_fails(beta: StructureMap):
    """First (S, k) with S ⊆ K(L1), k ∈ K(L2), k <= ⋀β[S] and no compact c <= ⋀S with k <= β(c)."""
    L1, L2, t = beta.dom, beta.cod, beta.table
    K1, K2 = compact_mask(L1), compact_mask(L2)
    for S in _submasks(K1):
        lower = L1.down[L1.meet_idx(S)] & K1
        reach = 0
        for c in iter_bits(lower):
            reach |= L2.down[t[c]]
        bound = L2.down[L2.meet_idx(beta.image_mask(S))] & K2
        missing = bound & ~reach
        if missing:
            return L1.subset(S), L2.elements[next(iter_bits(missing))]
    return None


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def frame_hom_conditions(beta: StructureMap, cls=None) -> tuple:
    """For a join-complete map between frames: frame_hom, (r strong on Y and r(P2) ⊆ P1), interpolation."""
    cls = cls or classify_map(beta)
    r = right_adjoint(beta)
    Y1, Y2 = _y(beta.dom), _y(beta.cod)
    second = False
    if all(r(p) in Y1.carrier for p in Y2.carrier.elements):
        f = PointMap(Y2, Y1, {p: r(p) for p in Y2.carrier.elements})
        second = bool(check_strong(f)) and all(r(p) in Y1.x0 for p in Y2.x0)
    return bool(cls.frame_hom), second, interpolation_fails(beta) is None


def hansoul_conditions(alpha: StructureMap, cls=None) -> tuple:
    """For a meet-hom between bounded distributive semilattices: p_condition, prime and ideal preimages."""
    cls = cls or classify_map(alpha)
    M1, M2 = alpha.dom, alpha.cod
    _, pf1, _ = _filters(M1)
    _, pf2, id2 = _filters(M2)
    pf1 = set(pf1)
    primes = all(_preimage(alpha, P) in pf1 for P in pf2)
    ideals = all(_is_ideal(M1, _preimage(alpha, I)) for I in id2)
    return bool(cls.p_condition), primes, ideals


@dataclass
class MapEquivalences:
    """Condition tuples per applicable class; each must be constant."""

    results: dict = field(default_factory=dict)

    def discrepancies(self) -> list:
        return [k for k, v in sorted(self.results.items()) if len(set(v)) > 1]


def top_conditions(beta: StructureMap, cls=None) -> tuple:
    """Literal dagger (empty S included) against r[Y2] ⊆ Y1 with r⁻¹(1) = {1}."""
    cls = cls or classify_map(beta)
    r = right_adjoint(beta)
    Y1, Y2 = _y(beta.dom), _y(beta.cod)
    top1, top2 = beta.dom.top, beta.cod.top
    into = all(r(p) in Y1.carrier for p in Y2.carrier.elements)
    reflects = all((r(p) == top1) == (p == top2) for p in Y2.carrier.elements)
    return bool(cls.dagger), into and reflects


def _frame_side(out: dict, beta: StructureMap, suffix: str, cls=None) -> None:
    cls = cls or classify_map(beta)
    out["sup_strong" + suffix] = sup_strong_conditions(beta, cls)
    out["sup_strong_top" + suffix] = top_conditions(beta, cls)
    out["frame_hom" + suffix] = frame_hom_conditions(beta, cls)


def map_equivalences(alpha: StructureMap) -> MapEquivalences:
    """Every equivalence that applies to ``alpha`` between distributive lattices."""
    cls = classify_map(alpha)
    out = {}
    both_frames = is_frame(alpha.dom) and is_frame(alpha.cod)
    if both_frames and cls.join_complete:
        _frame_side(out, alpha, "", cls)
    if cls.meet_hom:
        ell = left_adjoint_on_filters(alpha)
        ecls = classify_map(ell)
        _frame_side(out, ell, ".ell", ecls)
        out["ell_transfer"] = (bool(cls.sup_hom), bool(ecls.dagger))
        out["ell_transfer.p"] = (bool(cls.p_condition), bool(ecls.frame_hom))
        if alpha.dom.bottom_idx is not None and alpha.cod.bottom_idx is not None:
            out["hansoul"] = hansoul_conditions(alpha, cls)
        # an implication: (holds, True) so a failure shows as a discrepancy
        out["p_implies_sup"] = (not cls.p_condition or bool(cls.sup_hom), True)
    return MapEquivalences(out)


# -- map generation -------------------------------------------------------------------------------


def all_maps(D: FinitePoset, C: FinitePoset):
    n, m = D.n, C.n
    t = [0] * n
    while True:
        yield StructureMap.from_table(D, C, t)
        k = 0
        while k < n:
            t[k] += 1
            if t[k] < m:
                break
            t[k] = 0
            k += 1
        if k == n:
            return


def _preserving(D: FinitePoset, C: FinitePoset, tD, tC, unit_d: int, unit_c: int) -> list:
    """All tables t with t(op(i,j)) = op(t(i), t(j)) and t(unit_d) = unit_c, by backtracking."""
    n = D.n
    t = [None] * n
    t[unit_d] = unit_c
    out = []
    rest = [i for i in range(n) if i != unit_d]

    def ok(i):
        # every fully assigned triple (j, l, op(j, l)) that involves i
        for j in range(n):
            if t[j] is None:
                continue
            for l in range(n):
                if t[l] is None:
                    continue
                k = tD[j][l]
                if t[k] is not None and i in (j, l, k) and t[k] != tC[t[j]][t[l]]:
                    return False
        return True

    def rec(pos):
        if pos == len(rest):
            out.append(tuple(t))
            return
        i = rest[pos]
        for v in range(C.n):
            t[i] = v
            if ok(i):
                rec(pos + 1)
        t[i] = None

    if n:
        rec(0)
    return out


@lru_cache(maxsize=None)
def hom_pool(D: FinitePoset, C: FinitePoset) -> tuple:
    """Meet-homomorphisms and join-complete maps D -> C (as tables, deduplicated)."""
    meets = _preserving(D, C, D.meet_table, C.meet_table, D.top_idx, C.top_idx)
    joins = _preserving(D, C, D.join_table, C.join_table, D.bottom_idx, C.bottom_idx)
    return tuple(sorted(set(meets) | set(joins)))


# -- battery ---------------------------------------------------------------------------------------


@dataclass
class _Tally:
    maps: int = 0
    applicable: dict = field(default_factory=dict)
    positive: dict = field(default_factory=dict)
    negative: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)

    def record(self, alpha: StructureMap) -> None:
        self.maps += 1
        eq = map_equivalences(alpha)
        for key, vals in eq.results.items():
            self.applicable[key] = self.applicable.get(key, 0) + 1
            bucket = self.positive if vals[0] else self.negative
            bucket[key] = bucket.get(key, 0) + 1
        for key in eq.discrepancies():
            if len(self.discrepancies) < 5:
                self.discrepancies.append({"class": key, "map": alpha, "conditions": eq.results[key]})


def check_morphism_equivalences(
    small: list, large: list, samples: int = 10_000, seed: int = 0
) -> DualityReport:
    """Exhaustive over ordered pairs of ``small`` lattices, seeded sampling over ``large``.

    Half the samples are uniform maps; the other half come from the pool of
    meet-homomorphisms and join-complete maps, since uniform maps almost never
    land in the classes under test.
    """
    for L in list(small) + list(large):
        if not is_distributive_lattice(L):
            raise ValueError("morphism equivalences are checked between distributive lattices")
    rep = DualityReport(meta={"seed": seed})
    ex = _Tally()
    for D in small:
        for C in small:
            if C.n ** D.n > EXHAUSTIVE_LIMIT:
                continue
            for alpha in all_maps(D, C):
                ex.record(alpha)
    rnd = _Tally()
    rng = random.Random(seed)
    pairs = [(D, C) for D in large for C in large]
    for s in range(samples if pairs else 0):
        D, C = pairs[rng.randrange(len(pairs))]
        pool = hom_pool(D, C)
        if s % 2 and pool:
            t = pool[rng.randrange(len(pool))]
        else:
            t = tuple(rng.randrange(C.n) for _ in range(D.n))
        rnd.record(StructureMap.from_table(D, C, t))

    rep.meta["exhaustive_maps"] = ex.maps
    rep.meta["sampled_maps"] = rnd.maps
    keys = sorted(set(ex.applicable) | set(rnd.applicable))
    for key in keys:
        pos = ex.positive.get(key, 0) + rnd.positive.get(key, 0)
        neg = ex.negative.get(key, 0) + rnd.negative.get(key, 0)
        rep.meta[f"counts.{key}"] = {"positive": pos, "negative": neg}
        bad = [d for d in ex.discrepancies + rnd.discrepancies if d["class"] == key]
        rep.add(f"equivalence.{key}", not bad, bad[:1] or None)
        if key != "p_implies_sup":
            rep.add(f"adequacy.{key}", pos > 0 and neg > 0, {"positive": pos, "negative": neg})
    for key in ("sup_strong", "frame_hom", "hansoul"):
        if key not in keys:
            rep.add(f"adequacy.{key}", False, "class never encountered")
    return rep
