import pytest

from findual.enumeration import instances_of_size
from findual.fixtures import B2, P3, P3_CARRIER, POINT, antichain
from findual.order import find_isomorphism
from findual.spaces import (
    Space,
    admissible_clopen_upsets,
    admissible_closed_upsets,
    check_space_axioms,
    closed_admissible_by_definition,
    ix_family,
    minus,
    plus,
    space_kind,
    y_space,
)

from conftest import brute_admissible, subsets

fs = frozenset
AC2 = antichain(["x", "y"])
PRIESTLEY_AC2 = Space(AC2, fs({"x", "y"}))
CORRUPT = Space(P3_CARRIER, fs({"p"}), "m")


def test_a_of_p3():
    got = set(admissible_clopen_upsets(P3))
    assert got == {fs({"m"}), fs({"p", "m"}), fs({"q", "m"}), fs({"p", "q", "m"})}
    assert find_isomorphism(admissible_clopen_upsets(P3).order, B2) is not None


def test_a_of_small_cases():
    assert set(admissible_clopen_upsets(POINT)) == {fs({"m"})}
    assert set(admissible_clopen_upsets(PRIESTLEY_AC2)) == {fs(), fs({"x"}), fs({"y"}), fs({"x", "y"})}


def test_closed_admissibles():
    assert set(admissible_closed_upsets(P3)) == set(admissible_clopen_upsets(P3))
    assert set(admissible_closed_upsets(PRIESTLEY_AC2)) == set(subsets(["x", "y"]))
    assert set(admissible_closed_upsets(POINT)) == {fs({"m"})}


def test_ix_families():
    f = ix_family(P3, "p")
    assert set(f.sets) == {fs({"m"}), fs({"q", "m"})} and f.nonempty and f.directed
    g = ix_family(P3, "m")
    assert g.sets == () and not g.nonempty
    for x in ("x", "y"):
        assert fs() in ix_family(PRIESTLEY_AC2, x).sets


def test_axioms_pass_on_fixtures():
    assert check_space_axioms(P3).ok
    assert check_space_axioms(POINT).ok
    assert check_space_axioms(PRIESTLEY_AC2).ok
    assert sorted(check_space_axioms(P3).entries) == [f"axiom.{k}" for k in range(1, 7)]


def test_corrupted_x0():
    rep = check_space_axioms(CORRUPT)
    failed = {e.check_id for e in rep.failures()}
    assert failed == {"axiom.3", "axiom.4", "axiom.6"}
    # I_q is empty here: the only admissible sets are {q,m} and the carrier
    assert set(admissible_clopen_upsets(CORRUPT)) == {fs({"q", "m"}), fs({"p", "q", "m"})}
    assert not ix_family(CORRUPT, "q").nonempty
    assert rep["axiom.5"].status == "pass"


def test_pointed_translation():
    Xm = minus(P3)
    assert Xm.carrier.n == 2 and Xm.x0 == {"p", "q"} and not Xm.pointed
    assert space_kind(Xm).is_priestley
    back = plus(Xm, "m")
    assert find_isomorphism(back.carrier, P3.carrier, back.colors(), P3.colors()) is not None
    empty = minus(POINT)
    assert empty.carrier.n == 0
    assert check_space_axioms(empty)["axiom.all"].status == "skipped"


def test_space_kind_examples():
    k = space_kind(P3)
    assert k.is_pointed_priestley and k.is_pointed_stone
    assert space_kind(PRIESTLEY_AC2).is_priestley and space_kind(PRIESTLEY_AC2).is_stone
    bad = space_kind(CORRUPT)
    assert not any((bad.is_priestley, bad.is_pointed_priestley, bad.is_pointed_stone, bad.is_stone))


def test_y_of_b2_is_p3():
    Y = y_space(B2)
    assert set(Y.carrier.elements) == {"a", "b", "1"} and Y.x0 == {"a", "b"} and Y.point == "1"
    assert find_isomorphism(Y.carrier, P3.carrier, Y.colors(), P3.colors()) is not None


SPACES = [X for n in range(1, 5) for kind in ("gps", "pgps") for X in instances_of_size(kind, n)]


@pytest.mark.parametrize("X", SPACES, ids=lambda X: f"n{X.carrier.n}{'p' if X.pointed else 'u'}")
def test_admissible_families_by_brute_force(X):
    assert set(admissible_clopen_upsets(X)) == brute_admissible(X)
    closed = {X.carrier.subset(m) for m in closed_admissible_by_definition(X)}
    assert set(admissible_closed_upsets(X)) == closed
    assert set(admissible_clopen_upsets(X)) <= closed
