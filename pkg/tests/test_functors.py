import pytest

from findual.enumeration import distributive_lattices, instances_of_size
from findual.errors import NotAMorphismInSource, SourceAxiomFailure, WrongSourceKind
from findual.fixtures import B2, CH1, CH2, CH3, M3, P3, P3_CARRIER, POINT
from findual.functors import (
    FunctorTag,
    apply_functor_mor,
    apply_functor_obj,
    compact_dual,
    epsilon,
    eta,
    phi,
    spectrum,
    upsilon,
    verify_duality,
)
from findual.morphisms import SpaceRelation, StructureMap, compose_gp, identity_relation
from findual.order import find_isomorphism
from findual.spaces import Space, minus

fs = frozenset
UP_A, UP_B, TOP = fs({"a", "1"}), fs({"b", "1"}), fs(B2.elements)


def test_filter_functor_on_chain():
    F = apply_functor_obj("F", CH2)
    assert find_isomorphism(F, CH2) is not None


def test_spectrum_of_b2():
    X = apply_functor_obj("X", B2)
    assert set(X.carrier.elements) == {UP_A, UP_B, TOP}
    assert X.x0 == {UP_A, UP_B} and X.point == TOP
    assert X.carrier.le(UP_A, TOP) and not X.carrier.le(UP_A, UP_B)
    assert find_isomorphism(X.carrier, P3.carrier, X.colors(), P3.colors()) is not None


def test_bounded_spectrum_drops_point():
    Xb = apply_functor_obj(FunctorTag("X", "bounded"), B2)
    assert not Xb.pointed and set(Xb.carrier.elements) == {UP_A, UP_B}
    assert Xb == minus(spectrum(B2))


def test_y_of_b2_and_a_of_p3():
    Y = apply_functor_obj("Y", B2)
    assert Y.x0 == {"a", "b"} and Y.point == "1"
    A = apply_functor_obj("A", P3)
    assert find_isomorphism(A, B2) is not None
    V = apply_functor_obj("Va", P3)
    assert find_isomorphism(V, B2) is not None


def test_compact_dual_is_the_only_flip():
    K = compact_dual(CH3)
    assert K.le("1", "h") and K.le("h", "0")


def test_source_validation():
    with pytest.raises(SourceAxiomFailure):
        apply_functor_obj("X", M3)
    with pytest.raises(SourceAxiomFailure):
        apply_functor_obj("Y", M3)
    with pytest.raises(WrongSourceKind):
        apply_functor_obj("A", B2)
    with pytest.raises(WrongSourceKind):
        apply_functor_obj(FunctorTag("A", "bounded"), P3)
    with pytest.raises(WrongSourceKind):
        FunctorTag("Z")
    with pytest.raises(SourceAxiomFailure):
        apply_functor_obj("A", Space(P3_CARRIER, fs({"p"}), "m"))


def test_epsilon_on_p3():
    e = epsilon(P3)
    assert e.assignment == {"p": fs({"p", "m"}), "q": fs({"q", "m"}), "m": fs({"m"})}
    R = upsilon(P3)
    assert R.image("p") == {fs({"p", "m"}), fs({"m"})}


def test_eta_on_b2():
    h = eta(B2)
    assert h.assignment == {"0": fs({"a", "b", "1"}), "a": fs({"a", "1"}), "b": fs({"b", "1"}), "1": fs({"1"})}


def test_phi_on_ch3():
    p = phi(CH3)
    assert p("h") == fs({fs({"h", "1"}), fs(CH3.elements)})
    assert p("1") == fs(spectrum(CH3).carrier.elements)


def test_verify_duality_fixtures():
    for obj in (B2, CH1, CH3, P3, POINT):
        rep = verify_duality(obj)
        assert rep.ok, rep.failures()
    assert "dms.Y_F_equals_X" in verify_duality(B2)


def test_verify_duality_corrupt_space():
    rep = verify_duality(Space(P3_CARRIER, fs({"p"}), "m"))
    assert not rep.ok
    assert rep["space.downstream"].status == "skipped"
    assert "space.X_A_iso" not in rep


def test_verify_duality_non_distributive():
    rep = verify_duality(M3)
    assert rep["source.kind"].status == "fail"


def test_x_on_morphism_b2_to_ch3():
    f = StructureMap(B2, CH3, {"0": "0", "a": "h", "b": "0", "1": "1"})
    R = apply_functor_mor("X", f)
    assert R.dom == spectrum(CH3) and R.cod == spectrum(B2)
    # alpha^-1(↑h) = ↑a, so ↑h relates to ↑a and the top filter
    assert R.image(fs({"h", "1"})) == {UP_A, TOP}


def test_a_on_identity_relation():
    g = apply_functor_mor("A", identity_relation(P3))
    assert all(g(U) == U for U in g.dom.elements)


def test_morphism_rejection():
    with pytest.raises(NotAMorphismInSource):
        apply_functor_mor("F", StructureMap(B2, CH2, {"0": "0", "a": "1", "b": "1", "1": "1"}))
    with pytest.raises(NotAMorphismInSource):
        apply_functor_mor("A", SpaceRelation(P3, P3, {("m", "p")}))
    with pytest.raises(WrongSourceKind):
        apply_functor_mor("A", StructureMap.identity(B2))


def test_functor_x_preserves_identity_and_composition():
    f = StructureMap(CH3, B2, {"0": "0", "h": "a", "1": "1"})
    g = StructureMap(B2, CH3, {"0": "0", "a": "h", "b": "0", "1": "1"})
    Xf, Xg = apply_functor_mor("X", f), apply_functor_mor("X", g)
    gf = StructureMap(CH3, CH3, {x: g(f(x)) for x in CH3.elements})
    assert apply_functor_mor("X", gf) == compose_gp(Xf, Xg)
    assert apply_functor_mor("X", StructureMap.identity(B2)) == identity_relation(spectrum(B2))


@pytest.mark.parametrize("L", [L for n in range(1, 6) for L in distributive_lattices(n)], ids=lambda L: f"n{L.n}")
def test_roundtrip_on_small_lattices(L):
    assert verify_duality(L).ok


@pytest.mark.parametrize("X", [X for n in range(1, 5) for X in instances_of_size("pgps", n)], ids=lambda X: f"n{X.carrier.n}")
def test_roundtrip_on_small_spaces(X):
    rep = verify_duality(X, morphisms=[identity_relation(X)])
    assert rep.ok and rep["morphism.0.upsilon_naturality"].status == "pass"
