"""The functors F, K, X, A, Y, Va, the natural isomorphisms and the duality battery."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import (
    compact_mask,
    is_distributive_semilattice,
    is_frame,
    prime_and_pseudoprime,
)
from .errors import (
    FindualError,
    NotAMorphismInSource,
    SourceAxiomFailure,
    WrongSourceKind,
)
from .filters import filter_lattice, optimal_filters, prime_filters
from .morphisms import (
    PointMap,
    SpaceRelation,
    StructureMap,
    _box_mask,
    check_gp_morphism,
    classify_map,
    compose_gp,
    identity_relation,
    is_algfrm_j,
    left_adjoint_on_filters,
    least_element_map,
    relation_from_frame_morphism,
    relation_minus,
    relation_of_map,
)
from .order import FinitePoset, find_isomorphism, is_meet_semilattice, is_order_isomorphism
from .report import DualityReport
from .spaces import (
    Space,
    a_lattice,
    check_space_axioms,
    is_valid_space,
    minus,
    plus,
    space_kind,
    va_lattice,
    y_space,
)

FUNCTORS = ("F", "K", "X", "A", "Y", "Va")


@dataclass(frozen=True)
class FunctorTag:
    name: str
    variant: str = "pointed"

    def __post_init__(self):
        if self.name not in FUNCTORS:
            raise WrongSourceKind(f"unknown functor {self.name!r}; expected one of {FUNCTORS}")
        if self.variant not in ("pointed", "bounded"):
            raise WrongSourceKind(f"unknown variant {self.variant!r}")

    @property
    def bounded(self) -> bool:
        return self.variant == "bounded"


def _tag(tag) -> FunctorTag:
    return tag if isinstance(tag, FunctorTag) else FunctorTag(tag)


# -- source validation ------------------------------------------------------------------


def _need_poset(obj, name):
    if not isinstance(obj, FinitePoset):
        raise WrongSourceKind(f"{name} expects a poset, got {type(obj).__name__}")


def _need_dms(M: FinitePoset, bounded: bool):
    if not is_meet_semilattice(M):
        raise SourceAxiomFailure("not a meet-semilattice")
    v = is_distributive_semilattice(M)
    if not v:
        raise SourceAxiomFailure("meet-semilattice is not distributive", witness=v.witness)
    if bounded and M.bottom_idx is None:
        raise SourceAxiomFailure("bounded variant needs a bottom element")


def _need_frame(L: FinitePoset, bounded: bool):
    if not is_frame(L):
        raise SourceAxiomFailure("not a frame")
    if bounded and not (compact_mask(L) >> L.top_idx) & 1:
        raise SourceAxiomFailure("bounded variant needs a compact frame")


def _need_space(X, bounded: bool):
    if not isinstance(X, Space):
        raise WrongSourceKind(f"expected a space, got {type(X).__name__}")
    if bounded == X.pointed:
        want = "an unpointed" if bounded else "a pointed"
        raise WrongSourceKind(f"this variant expects {want} space")
    rep = check_space_axioms(X)
    if X.carrier.n == 0 or not rep.ok:
        raise SourceAxiomFailure("space fails its axioms", witness=[f.check_id for f in rep.failures()])


# -- objects --------------------------------------------------------------------------------


def compact_dual(L: FinitePoset) -> FinitePoset:
    """K(L): compact elements under the reversed order.  The only order flip in the package."""
    return L.restrict(L.ordered(compact_mask(L))).dual()


def spectrum(M: FinitePoset, bounded: bool = False) -> Space:
    """X(M): optimal filters plus M itself, ordered by inclusion; X0 = prime filters."""
    opt = optimal_filters(M)
    top = frozenset(M.elements)
    points = list(opt) + [top]
    carrier = FinitePoset.from_relation(points, lambda F, G: F <= G)
    X = Space(carrier, frozenset(prime_filters(M)), top)
    return minus(X) if bounded else X


def apply_functor_obj(tag, obj):
    t = _tag(tag)
    b = t.bounded
    if t.name == "F":
        _need_poset(obj, "F")
        _need_dms(obj, b)
        return filter_lattice(obj)
    if t.name == "K":
        _need_poset(obj, "K")
        _need_frame(obj, b)
        return compact_dual(obj)
    if t.name == "X":
        _need_poset(obj, "X")
        _need_dms(obj, b)
        return spectrum(obj, bounded=b)
    if t.name == "Y":
        _need_poset(obj, "Y")
        _need_frame(obj, b)
        return y_space(obj, bounded=b)
    _need_space(obj, b)
    if t.name == "A":
        return a_lattice(obj)
    return va_lattice(obj)


# -- morphisms -------------------------------------------------------------------------------


def spectrum_relation(f: StructureMap, bounded: bool = False) -> SpaceRelation:
    """X(α) ⊆ X(M2) × X(M1): x R y iff α⁻¹(x) ⊆ y."""
    X1, X2 = spectrum(f.dom), spectrum(f.cod)
    P1 = X1.carrier
    images = []
    for x in X2.carrier.elements:
        pre = frozenset(a for a in f.dom.elements if f(a) in x)
        images.append(P1.mask(y for y in P1.elements if pre <= y))
    R = SpaceRelation.from_images(X2, X1, tuple(images))
    return relation_minus(R) if bounded else R


def box_map(R: SpaceRelation, closed: bool = False) -> StructureMap:
    """□_R as a map A(Y) -> A(X), or V^a(Y) -> V^a(X) when ``closed``."""
    X, Y = R.dom, R.cod
    src = va_lattice(Y) if closed else a_lattice(Y)
    dst = va_lattice(X) if closed else a_lattice(X)
    PX, PY = X.carrier, Y.carrier
    assign = {U: PX.subset(_box_mask(R.images, PY.mask(U))) for U in src.elements}
    return StructureMap(src, dst, assign)


def compact_restriction(f: StructureMap) -> StructureMap:
    K1, K2 = compact_dual(f.dom), compact_dual(f.cod)
    return StructureMap(K1, K2, {k: f(k) for k in K1.elements})


def apply_functor_mor(tag, mor):
    t = _tag(tag)
    b = t.bounded
    if t.name in ("F", "X"):
        if not isinstance(mor, StructureMap):
            raise WrongSourceKind(f"{t.name} acts on structure maps")
        _need_dms(mor.dom, b)
        _need_dms(mor.cod, b)
        cls = classify_map(mor)
        if not cls.meet_hom:
            raise NotAMorphismInSource("map does not preserve finite meets", witness=cls.witnesses.get("meet_hom"))
        if t.name == "F":
            return left_adjoint_on_filters(mor)
        R = spectrum_relation(mor, bounded=b)
        if not check_gp_morphism(R):
            raise SourceAxiomFailure("image relation is not a morphism")
        return R
    if t.name in ("K", "Y"):
        if not isinstance(mor, StructureMap):
            raise WrongSourceKind(f"{t.name} acts on structure maps")
        _need_frame(mor.dom, b)
        _need_frame(mor.cod, b)
        v = is_algfrm_j(mor)
        if not v:
            raise NotAMorphismInSource("map must preserve joins and compact elements", witness=v.witness)
        if t.name == "K":
            return compact_restriction(mor)
        return relation_from_frame_morphism(mor, bounded=b)
    if not isinstance(mor, SpaceRelation):
        raise WrongSourceKind(f"{t.name} acts on space relations")
    _need_space(mor.dom, b)
    _need_space(mor.cod, b)
    v = check_gp_morphism(mor)
    if not v:
        raise NotAMorphismInSource("relation is not a generalized Priestley morphism", witness=v)
    return box_map(mor, closed=(t.name == "Va"))


# -- natural isomorphisms -------------------------------------------------------------------


def epsilon(X: Space) -> PointMap:
    """ε_X(x) = ↑x, a map X -> Y_{V^a(X)}."""
    _need_space(X, bounded=False)
    P = X.carrier
    Y = y_space(va_lattice(X))
    assign = {x: P.subset(P.up[P.idx(x)]) for x in P.elements}
    for x, C in assign.items():
        if C not in Y.carrier:
            raise SourceAxiomFailure("↑x is not a point of the dual space", witness=x)
    return PointMap(X, Y, assign)


def upsilon(X: Space) -> SpaceRelation:
    """x Υ C iff ↑x ⊇ C."""
    return relation_of_map(epsilon(X))


def eta(L: FinitePoset) -> StructureMap:
    """η_L(a) = ↑a ∩ Y_L, a map L -> V^a(Y_L)."""
    _need_frame(L, bounded=False)
    Y = y_space(L)
    V = va_lattice(Y)
    PY = Y.carrier
    assign = {a: frozenset(p for p in PY.elements if L.le(a, p)) for a in L.elements}
    return StructureMap(L, V, assign)


def phi(M: FinitePoset) -> StructureMap:
    """φ(a) = {x ∈ X(M) : a ∈ x}, a map M -> A(X(M))."""
    X = spectrum(M)
    A = a_lattice(X)
    return StructureMap(M, A, {a: frozenset(x for x in X.carrier.elements if a in x) for a in M.elements})


def principal_embedding(M: FinitePoset) -> StructureMap:
    """a ↦ ↑a, a map M -> K(F(M))."""
    K = compact_dual(filter_lattice(M))
    return StructureMap(M, K, {a: M.subset(M.up[M.idx(a)]) for a in M.elements})


def compact_ideal_map(L: FinitePoset) -> StructureMap:
    """a ↦ {k compact : k <= a}, a map L -> F(K(L))."""
    K = compact_dual(L)
    FK = filter_lattice(K)
    Km = compact_mask(L)
    return StructureMap(L, FK, {a: L.subset(L.down[L.idx(a)] & Km) for a in L.elements})


def natural_iso(kind: str, obj):
    if kind == "epsilon":
        return epsilon(obj)
    if kind == "upsilon":
        return upsilon(obj)
    if kind == "eta":
        if not isinstance(obj, FinitePoset):
            raise WrongSourceKind("eta expects a frame")
        return eta(obj)
    raise WrongSourceKind(f"unknown natural isomorphism {kind!r}")


# -- verification battery -------------------------------------------------------------------


def _iso_check(rep: DualityReport, check_id: str, f: StructureMap) -> bool:
    ok = is_order_isomorphism(f.dom, f.cod, f.assignment)
    return rep.add(check_id, ok, witness=None if ok else {"dom": f.dom, "cod": f.cod})


def _space_iso(X: Space, Y: Space):
    return find_isomorphism(X.carrier, Y.carrier, X.colors(), Y.colors())


def _guard(rep: DualityReport, check_id: str, fn) -> None:
    try:
        fn()
    except FindualError as exc:
        rep.add(check_id, False, witness=exc.witness, note=f"{type(exc).__name__}: {exc}")


def _dms_battery(rep: DualityReport, M: FinitePoset) -> None:
    p = "dms."
    F = filter_lattice(M)
    X = spectrum(M)
    _iso_check(rep, p + "K_F_iso", principal_embedding(M))
    _iso_check(rep, p + "A_X_iso", phi(M))
    YF = y_space(F)
    rep.add(
        p + "Y_F_equals_X",
        YF == X,
        witness=None if YF == X else {"Y(F(M))": YF, "X(M)": X},
        note="labelled equality: same filters, order, X0 and point",
    )
    rep.add(p + "X_pointed_priestley", space_kind(X).is_pointed_priestley)
    primes = set(prime_filters(M))
    rep.add(p + "optimal_equals_prime", set(optimal_filters(M)) == primes)
    classes = prime_and_pseudoprime(F)
    rep.add(p + "prime_filters_are_prime_elements", set(classes.primes) == primes)
    has_bottom = M.bottom_idx is not None
    compact = bool((compact_mask(F) >> F.top_idx) & 1)
    top_point = X.carrier.top
    isolated = frozenset({top_point}) in set(a_lattice(X).elements)
    rep.add(
        p + "bounded_triangle",
        has_bottom == compact == isolated,
        witness={"bottom": has_bottom, "compact": compact, "isolated": isolated},
    )
    if has_bottom:
        Xb = spectrum(M, bounded=True)
        rep.add(p + "bounded_minus", Xb == minus(X))
        back = plus(Xb, X.point)
        rep.add(p + "bounded_roundtrip", back == X)
    rep.extend(_frame_report(F), prefix=p + "F.")
    rep.extend(_space_report(X), prefix=p + "X.")


def _frame_report(L: FinitePoset) -> DualityReport:
    rep = DualityReport()
    classes = prime_and_pseudoprime(L)
    rep.add("PP_equals_P", classes.pseudoprimes == classes.primes, witness=classes.pseudoprimes ^ classes.primes)
    K = compact_dual(L)
    rep.add("K_is_dms", is_meet_semilattice(K) and bool(is_distributive_semilattice(K)))
    _iso_check(rep, "F_K_iso", compact_ideal_map(L))
    Y = y_space(L)
    ax = check_space_axioms(Y)
    rep.extend(ax, prefix="Y.")
    _iso_check(rep, "eta_iso", eta(L))
    return rep


def _space_report(X: Space) -> DualityReport:
    rep = DualityReport()
    ax = check_space_axioms(X)
    rep.extend(ax, prefix="")
    if not ax.ok or X.carrier.n == 0:
        rep.skip("downstream", "space fails its axioms; derived checks not run")
        return rep
    P = X.carrier
    A = a_lattice(X)
    V = va_lattice(X)
    Km = compact_mask(V)
    rep.add(
        "K_Va_equals_A",
        set(V.subset(Km)) == set(A.elements),
        note="compactness in V^a recomputed, not assumed",
    )
    rep.add("A_is_dms", is_meet_semilattice(A) and bool(is_distributive_semilattice(A)))
    rep.add("Va_is_frame", is_frame(V))
    Y = y_space(V)
    up = {x: P.subset(P.up[P.idx(x)]) for x in P.elements}
    wd = all(C in Y.carrier for C in up.values())
    rep.add("epsilon.well_defined", wd)
    if wd:
        eps = epsilon(X)
        rep.add("epsilon.order_iso", is_order_isomorphism(P, Y.carrier, eps.assignment))
        rep.add("epsilon.homeomorphism", True, note="both topologies are discrete; a bijection suffices")
        rep.add("epsilon.x0", frozenset(eps(x) for x in X.x0) == Y.x0)
        rep.add("epsilon.point", eps(X.point) == Y.point)
        U = upsilon(X)
        rep.add("upsilon.morphism", bool(check_gp_morphism(U)))
        inv = relation_of_map(PointMap(Y, X, {C: x for x, C in eps.assignment.items()}))
        rep.add(
            "upsilon.iso",
            compose_gp(inv, U) == identity_relation(X) and compose_gp(U, inv) == identity_relation(Y),
        )
        rep.add("upsilon.functional", least_element_map(U) == eps)
        YA = y_space(V).carrier
        ok = True
        for Um in X.a_masks:
            Uset = P.subset(Um)
            Vset = YA.mask(C for C in YA.elements if C <= Uset)
            if P.subset(_box_mask(U.images, Vset)) != Uset:
                ok = False
                break
        rep.add("upsilon.box", ok, note="box of ↑U ∩ Y recovers U")
    XA = spectrum(A)
    rep.add("X_A_iso", _space_iso(X, XA) is not None)
    return rep


def _morphism_checks(rep: DualityReport, mor, k: int) -> None:
    p = f"morphism.{k}."
    if isinstance(mor, StructureMap):
        cls = classify_map(mor)
        dms = all(is_meet_semilattice(P) and is_distributive_semilattice(P) for P in (mor.dom, mor.cod))
        if dms and cls.meet_hom:
            ph1, ph2 = phi(mor.dom), phi(mor.cod)
            R = spectrum_relation(mor)
            ok = all(
                frozenset(box_of(R, ph1(a))) == ph2(mor(a)) for a in mor.dom.elements
            )
            rep.add(p + "phi_naturality", ok)
            ell = left_adjoint_on_filters(mor)
            pe1, pe2 = principal_embedding(mor.dom), principal_embedding(mor.cod)
            rep.add(p + "principal_naturality", all(ell(pe1(a)) == pe2(mor(a)) for a in mor.dom.elements))
        if is_algfrm_j(mor):
            e1, e2 = eta(mor.dom), eta(mor.cod)
            R = relation_from_frame_morphism(mor)
            rep.add(
                p + "eta_naturality",
                all(box_of(R, e1(a)) == e2(mor(a)) for a in mor.dom.elements),
            )
        if not dms and not is_algfrm_j(mor):
            rep.skip(p + "naturality", "map is not a morphism of either algebraic category")
        return
    if isinstance(mor, SpaceRelation):
        if not (is_valid_space(mor.dom) and is_valid_space(mor.cod) and mor.dom.pointed and mor.cod.pointed):
            rep.skip(p + "naturality", "relation between invalid or unpointed spaces")
            return
        if not check_gp_morphism(mor):
            rep.add(p + "is_morphism", False, witness=check_gp_morphism(mor))
            return
        ux, uy = upsilon(mor.dom), upsilon(mor.cod)
        lhs = compose_gp(uy, mor)
        rhs = compose_gp(relation_from_frame_morphism(box_map(mor, closed=True)), ux)
        rep.add(p + "upsilon_naturality", lhs == rhs)
        return
    rep.skip(p + "naturality", f"unsupported morphism type {type(mor).__name__}")


def box_of(R: SpaceRelation, U) -> frozenset:
    return R.dom.carrier.subset(_box_mask(R.images, R.cod.carrier.mask(U)))


def verify_duality(obj, morphisms: Iterable = ()) -> DualityReport:
    """Round-trip battery for a semilattice, a frame or a pointed space."""
    rep = DualityReport()
    if isinstance(obj, Space):
        if obj.pointed:
            rep.extend(_space_report(obj), prefix="space.")
        else:
            rep.extend(check_space_axioms(obj), prefix="space.")
            if is_valid_space(obj):
                rep.extend(_space_report(plus(obj)), prefix="space.plus.")
            else:
                rep.skip("space.downstream", "space fails its axioms; derived checks not run")
    elif isinstance(obj, FinitePoset):
        ms = is_meet_semilattice(obj)
        dms = ms and bool(is_distributive_semilattice(obj))
        frame = is_frame(obj)
        if not dms and not frame:
            v = is_distributive_semilattice(obj) if ms else None
            rep.add(
                "source.kind",
                False,
                witness=v.witness if v is not None else "not a meet-semilattice",
                note="neither a distributive meet-semilattice nor a frame",
            )
        if dms:
            _guard(rep, "dms.error", lambda: _dms_battery(rep, obj))
        if frame:
            _guard(rep, "frame.error", lambda: rep.extend(_frame_report(obj), prefix="frame."))
    else:
        raise WrongSourceKind(f"cannot verify a {type(obj).__name__}")
    for k, mor in enumerate(morphisms):
        _guard(rep, f"morphism.{k}.error", lambda: _morphism_checks(rep, mor, k))
    return rep
