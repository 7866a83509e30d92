"""Maps between algebras and relations between spaces."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Mapping, Optional

from .algebra import Verdict, compact_mask, is_frame
from .errors import (
    DomainMismatch,
    InternalMismatch,
    InvalidInput,
    NotAlgFrmJ,
    NotAMorphism,
    NotFunctional,
    NotJoinPreserving,
    NotMeetHom,
    NotStrong,
    UnknownElement,
)
from .order import FinitePoset, is_lattice, is_meet_semilattice, iter_bits, popcount
from .spaces import Space, fresh_point, minus, plus, y_space


# -- structure maps -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StructureMap:
    """A total function between poset carriers."""

    dom: FinitePoset
    cod: FinitePoset
    assignment: Mapping

    def __post_init__(self):
        a = dict(self.assignment)
        object.__setattr__(self, "assignment", a)
        for x in self.dom.elements:
            if x not in a:
                raise InvalidInput(f"map is undefined at {x!r}", witness=x)
        for x, y in a.items():
            if x not in self.dom:
                raise UnknownElement(f"map mentions unknown source element {x!r}", witness=x)
            if y not in self.cod:
                raise UnknownElement(f"map value {y!r} is not in the codomain", witness=y)

    def __call__(self, x):
        return self.assignment[x]

    def __eq__(self, other):
        if not isinstance(other, StructureMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.assignment == other.assignment

    def __hash__(self):
        return hash((self.dom, self.cod, frozenset(self.assignment.items())))

    def __repr__(self):
        body = ", ".join(f"{x!r}->{self.assignment[x]!r}" for x in self.dom.elements)
        return f"StructureMap({body})"

    @cached_property
    def table(self) -> tuple:
        """Codomain index of each domain index."""
        return tuple(self.cod.idx(self.assignment[x]) for x in self.dom.elements)

    def image_mask(self, mask: int) -> int:
        t, out = self.table, 0
        for i in iter_bits(mask):
            out |= 1 << t[i]
        return out

    @classmethod
    def identity(cls, P: FinitePoset) -> "StructureMap":
        return cls(P, P, {x: x for x in P.elements})

    @classmethod
    def from_table(cls, dom: FinitePoset, cod: FinitePoset, table) -> "StructureMap":
        return cls(dom, cod, {dom.elements[i]: cod.elements[j] for i, j in enumerate(table)})


def compose_maps(g: StructureMap, f: StructureMap) -> StructureMap:
    """g ∘ f."""
    if f.cod != g.dom:
        raise DomainMismatch("codomain of the first map is not the domain of the second")
    return StructureMap(f.dom, g.cod, {x: g(f(x)) for x in f.dom.elements})


@lru_cache(maxsize=None)
def _subsets_by_size(n: int) -> tuple:
    return tuple(sorted(range(1 << n), key=lambda m: (popcount(m), list(iter_bits(m)))))


MAP_FLAGS = (
    "order_preserving",
    "meet_hom",
    "top_preserving",
    "sup_hom",
    "p_condition",
    "join_complete",
    "dagger",
    "frame_hom",
)


@dataclass(frozen=True)
class MapClass:
    """Flags are True/False, or None when the flag does not apply."""

    flags: dict
    witnesses: dict
    not_applicable: dict = field(default_factory=dict)
    subset_bound: int = 0

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    def to_json(self) -> dict:
        from .io import jsonable

        return {
            "flags": dict(self.flags),
            "witnesses": jsonable(self.witnesses),
            "not_applicable": dict(self.not_applicable),
            "subset_bound": self.subset_bound,
        }


def _subset_witness(P: FinitePoset, S: int) -> frozenset:
    return P.subset(S)


def _check_meets(f: StructureMap, subsets) -> Optional[frozenset]:
    D, C, t = f.dom, f.cod, f.table
    for S in subsets:
        m = D.meet_idx(S)
        if m is None:
            continue
        if C.meet_idx(f.image_mask(S)) != t[m]:
            return _subset_witness(D, S)
    return None


def _check_joins(f: StructureMap, subsets) -> Optional[frozenset]:
    """First S whose existing join is not sent to the join of its image."""
    D, C, t = f.dom, f.cod, f.table
    for S in subsets:
        j = D.join_idx(S)
        if j is None:
            continue
        if C.join_idx(f.image_mask(S)) != t[j]:
            return _subset_witness(D, S)
    return None


def _p_condition(f: StructureMap, subsets) -> Optional[tuple]:
    D, C, t = f.dom, f.cod, f.table
    above = [C.up[t[c]] for c in range(D.n)]  # x with α(c) <= x
    for S in subsets:
        su = D.full
        for s in iter_bits(S):
            su &= D.up[s]
        xu = C.full
        for s in iter_bits(S):
            xu &= C.up[t[s]]
        reach = 0
        for c in iter_bits(su):
            reach |= above[c]
        missing = xu & ~reach
        if missing:
            x = next(iter_bits(missing))
            return (_subset_witness(D, S), C.elements[x])
    return None


def _dagger(f: StructureMap, subsets) -> Optional[frozenset]:
    D, C, t = f.dom, f.cod, f.table
    K = compact_mask(D)
    for S in subsets:
        if S & ~K:
            continue
        m = D.meet_idx(S)
        if not (K >> m) & 1:
            continue
        if C.meet_idx(f.image_mask(S)) != t[m]:
            return _subset_witness(D, S)
    return None


def classify_map(f: StructureMap) -> MapClass:
    """All morphism-class flags by exhaustive quantification over subsets of the domain."""
    D, C, t = f.dom, f.cod, f.table
    subsets = _subsets_by_size(D.n)
    flags, wit, na = {}, {}, {}

    def put(name, failure):
        flags[name] = failure is None
        if failure is not None:
            wit[name] = failure

    op = None
    for i in range(D.n):
        for j in iter_bits(D.up[i]):
            if not (C.up[t[i]] >> t[j]) & 1:
                op = (D.elements[i], D.elements[j])
                break
        if op:
            break
    put("order_preserving", op)

    ms = is_meet_semilattice(D) and is_meet_semilattice(C)
    if ms:
        put("meet_hom", _check_meets(f, subsets))
        put("top_preserving", None if t[D.top_idx] == C.top_idx else D.top)
        put("sup_hom", _check_joins(f, subsets))
        put("p_condition", _p_condition(f, subsets))
    else:
        for name in ("meet_hom", "top_preserving", "sup_hom", "p_condition"):
            flags[name] = None
            na[name] = "domain and codomain must be meet-semilattices"

    lat = is_lattice(D) and is_lattice(C)
    if lat:
        put("join_complete", _check_joins(f, subsets))
    else:
        flags["join_complete"] = None
        na["join_complete"] = "domain and codomain must be lattices"

    if lat and is_frame(D) and is_frame(C):
        put("dagger", _dagger(f, subsets))
        jw = _check_joins(f, subsets)
        put("frame_hom", jw if jw is not None else _check_meets(f, subsets))
    else:
        for name in ("dagger", "frame_hom"):
            flags[name] = None
            na[name] = "domain and codomain must be frames"
    return MapClass(flags=flags, witnesses=wit, not_applicable=na, subset_bound=D.n)


def is_algfrm_j(f: StructureMap) -> Verdict:
    """Preserves arbitrary joins and sends compact elements to compact elements."""
    if not (is_frame(f.dom) and is_frame(f.cod)):
        return Verdict(False, "domain and codomain must be frames")
    w = _check_joins(f, _subsets_by_size(f.dom.n))
    if w is not None:
        return Verdict(False, w)
    Kc = compact_mask(f.cod)
    for k in iter_bits(compact_mask(f.dom)):
        if not (Kc >> f.table[k]) & 1:
            return Verdict(False, f.dom.elements[k])
    return Verdict(True)


# -- adjoints -----------------------------------------------------------------------


def right_adjoint(f: StructureMap) -> StructureMap:
    """r(b) = ⋁{a : α(a) <= b}; the Galois law is checked before returning."""
    D, C, t = f.dom, f.cod, f.table
    if not (is_lattice(D) and is_lattice(C)):
        raise NotJoinPreserving("right adjoints need lattices on both sides")
    w = _check_joins(f, _subsets_by_size(D.n))
    if w is not None:
        raise NotJoinPreserving("map does not preserve all joins", witness=w)
    r = []
    for b in range(C.n):
        below = 0
        for a in range(D.n):
            if (C.down[b] >> t[a]) & 1:
                below |= 1 << a
        r.append(D.join_idx(below))
    for a in range(D.n):
        for b in range(C.n):
            if bool((C.up[t[a]] >> b) & 1) != bool((D.up[a] >> r[b]) & 1):
                raise InternalMismatch("Galois law fails", witness=(D.elements[a], C.elements[b]))
    return StructureMap.from_table(C, D, r)


def left_adjoint_on_filters(f: StructureMap) -> StructureMap:
    """ℓ: Filt(M1) -> Filt(M2), F ↦ ↑α[F], checked against the preimage map."""
    from .filters import filter_lattice

    cls = classify_map(f)
    if not cls.meet_hom:
        raise NotMeetHom("map does not preserve finite meets", witness=cls.witnesses.get("meet_hom"))
    M1, M2 = f.dom, f.cod
    F1, F2 = filter_lattice(M1), filter_lattice(M2)
    assign = {F: M2.subset(M2.up_closure(f.image_mask(M1.mask(F)))) for F in F1.elements}
    ell = StructureMap(F1, F2, assign)
    for G in F2.elements:
        pre = frozenset(a for a in M1.elements if f(a) in G)
        if pre not in F1:
            raise InternalMismatch("preimage of a filter is not a filter", witness=G)
        for F in F1.elements:
            if (assign[F] <= G) != (F <= pre):
                raise InternalMismatch("ℓ is not left adjoint to the preimage map", witness=(F, G))
    return ell


# -- relations between spaces -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpaceRelation:
    dom: Space
    cod: Space
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for x, y in self.pairs:
            if x not in self.dom.carrier:
                raise UnknownElement(f"relation mentions unknown source point {x!r}", witness=x)
            if y not in self.cod.carrier:
                raise UnknownElement(f"relation mentions unknown target point {y!r}", witness=y)

    def __eq__(self, other):
        if not isinstance(other, SpaceRelation):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.pairs == other.pairs

    def __hash__(self):
        return hash((self.dom, self.cod, self.pairs))

    def __repr__(self):
        return f"SpaceRelation({sorted(map(repr, self.pairs))})"

    @cached_property
    def images(self) -> tuple:
        """images[i] is the bitmask of R[x_i] in the codomain."""
        X, Y = self.dom.carrier, self.cod.carrier
        out = [0] * X.n
        for x, y in self.pairs:
            out[X.idx(x)] |= 1 << Y.idx(y)
        return tuple(out)

    def image(self, x) -> frozenset:
        return self.cod.carrier.subset(self.images[self.dom.carrier.idx(x)])

    @classmethod
    def from_images(cls, X: Space, Y: Space, images) -> "SpaceRelation":
        ex, ey = X.carrier.elements, Y.carrier.elements
        pairs = frozenset((ex[i], ey[j]) for i, m in enumerate(images) for j in iter_bits(m))
        rel = cls(X, Y, pairs)
        rel.__dict__["images"] = tuple(images)
        return rel


def identity_relation(X: Space) -> SpaceRelation:
    """The order ≤, identity morphism of a space."""
    return SpaceRelation.from_images(X, X, X.carrier.up)


def _box_mask(images: tuple, U: int) -> int:
    out = 0
    for i, m in enumerate(images):
        if m & ~U == 0:
            out |= 1 << i
    return out


def box(R: SpaceRelation, U) -> frozenset:
    """□_R U = {x : R[x] ⊆ U}."""
    Y = R.cod.carrier
    for y in U:
        if y not in Y:
            raise UnknownElement(f"{y!r} is not a point of the codomain", witness=y)
    return R.dom.carrier.subset(_box_mask(R.images, Y.mask(U)))


@dataclass(frozen=True)
class MorphismCheck:
    condition1: Verdict
    condition2: Verdict

    @property
    def ok(self) -> bool:
        return self.condition1.ok and self.condition2.ok

    def __bool__(self):
        return self.ok


def _is_admissible(X: Space, U: int) -> bool:
    P = X.carrier
    return P.is_upset(U) and P.maximal(P.full & ~U) & ~X.x0_mask == 0


def check_gp_morphism(R: SpaceRelation) -> MorphismCheck:
    X, Y = R.dom, R.cod
    PX, PY = X.carrier, Y.carrier
    A_Y = Y.a_masks
    c1 = Verdict(True)
    for i, img in enumerate(R.images):
        hull = PY.full
        for U in A_Y:
            if img & ~U == 0:
                hull &= U
        extra = hull & ~img
        if extra:
            c1 = Verdict(False, (PX.elements[i], PY.elements[next(iter_bits(extra))]))
            break
    c2 = Verdict(True)
    for U in A_Y:
        if not _is_admissible(X, _box_mask(R.images, U)):
            c2 = Verdict(False, PY.subset(U))
            break
    return MorphismCheck(c1, c2)


def _compose_images(X: Space, Z: Space, r_images: tuple, s_images: tuple) -> tuple:
    PZ = Z.carrier
    acc = [PZ.full] * X.carrier.n
    for U in Z.a_masks:
        inner = _box_mask(s_images, U)
        for x in iter_bits(_box_mask(r_images, inner)):
            acc[x] &= U
    return tuple(acc)


def compose_gp(S: SpaceRelation, R: SpaceRelation, check: bool = True) -> SpaceRelation:
    """S * R for R ⊆ X×Y and S ⊆ Y×Z."""
    if R.cod != S.dom:
        raise DomainMismatch("codomain of R is not the domain of S")
    if check:
        for name, rel in (("R", R), ("S", S)):
            verdict = check_gp_morphism(rel)
            if not verdict:
                raise NotAMorphism(f"{name} is not a generalized Priestley morphism", witness=verdict)
    out = SpaceRelation.from_images(R.dom, S.cod, _compose_images(R.dom, S.cod, R.images, S.images))
    if check and not check_gp_morphism(out):
        raise InternalMismatch("composite is not a generalized Priestley morphism")
    return out


def gp_morphism_images(X: Space, Y: Space) -> Iterator[tuple]:
    """All generalized Priestley morphisms X -> Y as tuples of image masks.

    Condition 1 forces each R[x] into V^a(Y); admissibility of boxes forces
    x <= x' to give R[x'] ⊆ R[x], which prunes the search.
    """
    PX = X.carrier
    cands = Y.va_masks
    order = sorted(range(PX.n), key=lambda i: (popcount(PX.down[i]), i))
    images = [0] * PX.n
    A_Y = Y.a_masks

    def rec(k):
        if k == PX.n:
            if all(_is_admissible(X, _box_mask(images, U)) for U in A_Y):
                yield tuple(images)
            return
        i = order[k]
        below = [j for j in iter_bits(PX.down[i]) if j != i]
        for C in cands:
            if all(C & ~images[j] == 0 for j in below):
                images[i] = C
                yield from rec(k + 1)

    yield from rec(0)


def gp_morphisms(X: Space, Y: Space) -> list:
    return [SpaceRelation.from_images(X, Y, im) for im in gp_morphism_images(X, Y)]


# -- functional relations and point maps -----------------------------------------------


@dataclass(frozen=True, eq=False)
class PointMap:
    """A function between space carriers."""

    dom: Space
    cod: Space
    assignment: Mapping

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))
        for x in self.dom.carrier.elements:
            if self.assignment.get(x) not in self.cod.carrier:
                raise InvalidInput(f"point map is undefined or leaves the codomain at {x!r}", witness=x)

    def __call__(self, x):
        return self.assignment[x]

    def __eq__(self, other):
        if not isinstance(other, PointMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.assignment == other.assignment

    def __hash__(self):
        return hash((self.dom, self.cod, frozenset(self.assignment.items())))


def least_element_map(R: SpaceRelation) -> PointMap:
    """f_R(x) = least element of R[x]."""
    PY = R.cod.carrier
    out = {}
    for x, img in zip(R.dom.carrier.elements, R.images):
        least = [j for j in iter_bits(img) if PY.up[j] & img == img]
        if not least:
            raise NotFunctional(f"R[{x!r}] has no least element", witness=x)
        out[x] = PY.elements[least[0]]
    return PointMap(R.dom, R.cod, out)


def check_strong(f: PointMap) -> Verdict:
    """Order-preserving with admissible preimages of admissible clopen upsets."""
    PX, PY = f.dom.carrier, f.cod.carrier
    t = [PY.idx(f(x)) for x in PX.elements]
    for i in range(PX.n):
        for j in iter_bits(PX.up[i]):
            if not (PY.up[t[i]] >> t[j]) & 1:
                return Verdict(False, ("order", PX.elements[i], PX.elements[j]))
    for U in f.cod.a_masks:
        pre = 0
        for i in range(PX.n):
            if (U >> t[i]) & 1:
                pre |= 1 << i
        if not _is_admissible(f.dom, pre):
            return Verdict(False, ("preimage", PY.subset(U)))
    return Verdict(True)


def relation_of_map(f: PointMap) -> SpaceRelation:
    """R_f = {(x, y) : f(x) <= y}."""
    PY = f.cod.carrier
    return SpaceRelation.from_images(f.dom, f.cod, tuple(PY.up[PY.idx(f(x))] for x in f.dom.carrier.elements))


def functional_strong_translation(obj):
    """Functional relation -> strong map, or strong map -> functional relation.

    Round trips are checked both ways.
    """
    if isinstance(obj, SpaceRelation):
        f = least_element_map(obj)
        verdict = check_strong(f)
        if not verdict:
            raise InternalMismatch("least-element map of a functional relation is not strong", witness=verdict.witness)
        if relation_of_map(f) != obj:
            raise InternalMismatch("R_{f_R} differs from R")
        return f
    if isinstance(obj, PointMap):
        verdict = check_strong(obj)
        if not verdict:
            raise NotStrong("map is not a strong Priestley morphism", witness=verdict.witness)
        R = relation_of_map(obj)
        if least_element_map(R) != obj:
            raise InternalMismatch("f_{R_f} differs from f")
        return R
    raise InvalidInput("expected a SpaceRelation or a PointMap")


# -- from frame maps to relations -------------------------------------------------------


def relation_from_frame_morphism(f: StructureMap, bounded: bool = False) -> SpaceRelation:
    """R_α ⊆ Y_{L2} × Y_{L1}: p R q iff r(p) <= q, for α: L1 -> L2."""
    verdict = is_algfrm_j(f)
    if not verdict:
        raise NotAlgFrmJ("map must preserve joins and compact elements", witness=verdict.witness)
    r = right_adjoint(f)
    L1 = f.dom
    Y1, Y2 = y_space(f.dom), y_space(f.cod)
    P1, P2 = Y1.carrier, Y2.carrier
    images = tuple(
        P1.mask(q for q in P1.elements if L1.le(r(p), q)) for p in P2.elements
    )
    R = SpaceRelation.from_images(Y2, Y1, images)
    if not check_gp_morphism(R):
        raise InternalMismatch("R_α fails the morphism conditions", witness=check_gp_morphism(R))
    if bounded:
        return relation_minus(R)
    return R


# -- pointed/unpointed lifts ------------------------------------------------------------


def relation_minus(R: SpaceRelation) -> SpaceRelation:
    """R⁻ = R ∩ (X⁻ × Y⁻)."""
    X, Y = minus(R.dom), minus(R.cod)
    pairs = {(x, y) for x, y in R.pairs if x != R.dom.point and y != R.cod.point}
    return SpaceRelation(X, Y, frozenset(pairs))


def relation_plus(R: SpaceRelation, x_point=None, y_point=None) -> SpaceRelation:
    """R⁺ = R ∪ (X⁺ × {n})."""
    X = plus(R.dom, x_point if x_point is not None else fresh_point(R.dom.carrier))
    Y = plus(R.cod, y_point if y_point is not None else fresh_point(R.cod.carrier))
    pairs = set(R.pairs) | {(x, Y.point) for x in X.carrier.elements}
    return SpaceRelation(X, Y, frozenset(pairs))
