import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from findual.enumeration import distributive_lattices, instances_of_size
from findual.equivalences import hom_pool
from findual.errors import NotFunctional, NotJoinPreserving, NotMeetHom
from findual.filters import filter_lattice
from findual.fixtures import B2, CH2, CH3, P3, antichain
from findual.morphisms import (
    MAP_FLAGS,
    SpaceRelation,
    StructureMap,
    box,
    check_gp_morphism,
    classify_map,
    compose_gp,
    functional_strong_translation,
    gp_morphisms,
    identity_relation,
    left_adjoint_on_filters,
    relation_from_frame_morphism,
    right_adjoint,
)
from findual.spaces import Space, admissible_clopen_upsets, y_space

from conftest import brute_admissible, subsets

fs = frozenset
B2_TO_CH3 = StructureMap(B2, CH3, {"0": "0", "a": "h", "b": "0", "1": "1"})
CH3_TO_B2 = StructureMap(CH3, B2, {"0": "0", "h": "a", "1": "1"})
CH2_TO_CH3 = StructureMap(CH2, CH3, {"0": "0", "1": "1"})
P3_ALL_M = SpaceRelation(P3, P3, {(x, "m") for x in "pqm"})


def brute_right_adjoint(f):
    D, C = f.dom, f.cod
    out = {}
    for b in C.elements:
        below = [a for a in D.elements if C.le(f(a), b)]
        top = [a for a in below if all(D.le(x, a) for x in below)]
        out[b] = top[0]
    return out


def brute_is_gp(R):
    """Both morphism conditions straight from their statements."""
    X, Y = R.dom, R.cod
    AY = brute_admissible(Y)
    AX = brute_admissible(X)
    for x in X.carrier.elements:
        img = R.image(x)
        for y in Y.carrier.elements:
            if y not in img and not any(img <= U and y not in U for U in AY):
                return False
    for U in AY:
        if fs(x for x in X.carrier.elements if R.image(x) <= U) not in AX:
            return False
    return True


def test_classify_examples():
    c = classify_map(B2_TO_CH3)
    assert c.meet_hom and not c.sup_hom and not c.p_condition
    assert all(classify_map(StructureMap.identity(B2)).flags[k] for k in MAP_FLAGS)
    d = classify_map(CH3_TO_B2)
    assert d.meet_hom and d.sup_hom and d.dagger and d.frame_hom


def test_classify_not_applicable():
    A = antichain(["x", "y"])
    c = classify_map(StructureMap(A, A, {"x": "x", "y": "y"}))
    assert c.order_preserving and c.meet_hom is None and "meet_hom" in c.not_applicable


def test_right_adjoint_examples():
    assert right_adjoint(CH2_TO_CH3).assignment == {"0": "0", "h": "0", "1": "1"}
    ident = StructureMap.identity(B2)
    assert right_adjoint(ident) == ident
    with pytest.raises(NotJoinPreserving) as exc:
        right_adjoint(B2_TO_CH3)
    assert exc.value.witness == fs({"a", "b"})


def test_left_adjoint_examples():
    ell = left_adjoint_on_filters(CH2_TO_CH3)
    assert ell(fs({"1"})) == fs({"1"})
    assert ell(fs({"0", "1"})) == fs(CH3.elements)
    ident = left_adjoint_on_filters(StructureMap.identity(B2))
    assert ident == StructureMap.identity(filter_lattice(B2))
    assert left_adjoint_on_filters(CH3_TO_B2)(fs({"h", "1"})) == fs({"a", "1"})
    with pytest.raises(NotMeetHom):
        left_adjoint_on_filters(StructureMap(CH2, CH2, {"0": "0", "1": "0"}))


def test_gp_morphism_examples():
    assert check_gp_morphism(identity_relation(P3))
    assert check_gp_morphism(P3_ALL_M)
    bad = check_gp_morphism(SpaceRelation(P3, P3, {("m", "p")}))
    assert not bad.condition2.ok


def test_box_examples():
    ident = identity_relation(P3)
    for U in admissible_clopen_upsets(P3):
        assert box(ident, U) == U
    assert box(P3_ALL_M, {"q", "m"}) == fs("pqm")
    assert box(P3_ALL_M, P3.carrier.elements) == fs("pqm")


def test_hom_p3_p3_by_brute_force():
    els = P3.carrier.elements
    pairs = [(x, y) for x in els for y in els]
    brute = set()
    for chosen in subsets(range(len(pairs))):
        R = SpaceRelation(P3, P3, {pairs[k] for k in chosen})
        if brute_is_gp(R):
            brute.add(R.pairs)
    got = {R.pairs for R in gp_morphisms(P3, P3)}
    assert got == brute and len(got) == 16


def test_composition_laws_on_p3():
    homs = gp_morphisms(P3, P3)
    ident = identity_relation(P3)
    A = list(admissible_clopen_upsets(P3))
    for R in homs:
        assert compose_gp(R, ident) == R and compose_gp(ident, R) == R
        for S in homs:
            SR = compose_gp(S, R)
            for U in A:
                assert box(SR, U) == box(R, box(S, U))


def test_functional_strong_examples():
    f = functional_strong_translation(identity_relation(P3))
    assert f.assignment == {"p": "p", "q": "q", "m": "m"}
    g = functional_strong_translation(P3_ALL_M)
    assert set(g.assignment.values()) == {"m"}
    assert functional_strong_translation(g) == P3_ALL_M
    dom = Space(antichain(["z"]), fs({"z"}))
    cod = Space(antichain(["x", "y"]), fs({"x", "y"}))
    R = SpaceRelation(dom, cod, {("z", "x"), ("z", "y")})
    assert check_gp_morphism(R)
    with pytest.raises(NotFunctional):
        functional_strong_translation(R)


def test_relation_from_identity_is_order():
    R = relation_from_frame_morphism(StructureMap.identity(B2))
    Y = y_space(B2)
    assert R == identity_relation(Y)


def test_relation_from_ch2_to_ch3_box_identity():
    R = relation_from_frame_morphism(CH2_TO_CH3)
    Y1, Y2 = y_space(CH2), y_space(CH3)
    for k in CH2.elements:
        U = fs(y for y in Y1.carrier.elements if CH2.le(k, y))
        assert box(R, U) == fs(y for y in Y2.carrier.elements if CH3.le(CH2_TO_CH3(k), y))


def test_relation_from_ch3_to_b2_pairs():
    R = relation_from_frame_morphism(CH3_TO_B2)
    r = brute_right_adjoint(CH3_TO_B2)
    Y1, Y2 = y_space(CH3), y_space(B2)
    expect = {(x, y) for x in Y2.carrier.elements for y in Y1.carrier.elements if CH3.le(r[x], y)}
    assert R.pairs == expect


DLS = [L for n in range(1, 6) for L in distributive_lattices(n)]
POOL = [(D, C, t) for D in DLS for C in DLS for t in hom_pool(D, C)]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(POOL))
def test_galois_law_on_join_complete_maps(item):
    D, C, t = item
    f = StructureMap.from_table(D, C, t)
    if not classify_map(f).join_complete:
        return
    r = right_adjoint(f)
    assert r.assignment == brute_right_adjoint(f)
    for a in D.elements:
        for b in C.elements:
            assert C.le(f(a), b) == D.le(a, r(b))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(POOL))
def test_meet_hom_flag_by_brute_force(item):
    D, C, t = item
    f = StructureMap.from_table(D, C, t)
    brute = all(
        f(D.meet(*S)) == C.meet(*[f(s) for s in S]) for S in subsets(D.elements)
    )
    assert classify_map(f).meet_hom == brute


SMALL_SPACES = [X for n in range(1, 4) for X in instances_of_size("pgps", n)]


@pytest.mark.parametrize("X", SMALL_SPACES, ids=lambda X: f"n{X.carrier.n}")
@pytest.mark.parametrize("Y", SMALL_SPACES, ids=lambda X: f"n{X.carrier.n}")
def test_enumerated_morphisms_pass_brute_force(X, Y):
    for R in gp_morphisms(X, Y):
        assert brute_is_gp(R)
