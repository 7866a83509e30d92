from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from findual.enumeration import (
    InstanceClass,
    boolean_algebras,
    canonical_form,
    census,
    distributive_lattices,
    distributive_lattices_birkhoff,
    enumerate_instances,
    instances_of_size,
    lattices,
    meet_semilattices,
    posets,
    posets_bruteforce,
)
from findual.errors import SizeCapExceeded, WrongSourceKind
from findual.fixtures import B2, chain
from findual.order import FinitePoset, find_isomorphism

from conftest import closure, leq_set, random_posets

# OEIS A000112, A006966, A006982 for n = 0..7
POSETS = (1, 1, 2, 5, 16, 63, 318, 2045)
LATTICES = (1, 1, 1, 1, 2, 5, 15, 53)
DLS = (1, 1, 1, 1, 2, 3, 5, 8)


def relabel_key(P):
    """Minimum over all relabellings of the order relation, as an index set."""
    els = list(P.elements)
    rel = leq_set(P)
    best = None
    for perm in permutations(range(len(els))):
        pos = {els[i]: perm[i] for i in range(len(els))}
        key = tuple(sorted((pos[a], pos[b]) for a, b in rel))
        if best is None or key < best:
            best = key
    return best


def brute_poset_classes(n):
    names = list(range(n))
    cand = [(i, j) for i in names for j in names if i < j]
    keys = set()
    for bits in range(1 << len(cand)):
        pairs = {cand[k] for k in range(len(cand)) if bits >> k & 1}
        rel = closure(names, pairs)
        if any((a, b) in rel and (b, a) in rel and a != b for a in names for b in names):
            continue
        keys.add(relabel_key(FinitePoset.from_pairs(names, rel)))
    return len(keys)


@pytest.mark.parametrize("n", range(1, 7))
def test_poset_counts(n):
    assert len(posets(n)) == POSETS[n]


@pytest.mark.parametrize("n", range(1, 8))
def test_lattice_counts(n):
    assert len(lattices(n)) == LATTICES[n]
    assert len(distributive_lattices(n)) == DLS[n]


@pytest.mark.parametrize("n", range(1, 5))
def test_poset_classes_by_relabelling(n):
    assert brute_poset_classes(n) == len(posets(n))


@pytest.mark.parametrize("n", range(1, 6))
def test_bruteforce_and_birkhoff_agree(n):
    fast = {canonical_form(P) for P in posets(n)}
    slow = {canonical_form(P) for P in posets_bruteforce(n)}
    assert fast == slow
    a = {canonical_form(L) for L in distributive_lattices(n)}
    b = {canonical_form(L) for L in distributive_lattices_birkhoff(n)}
    assert a == b


def test_size_four_lattices():
    found = distributive_lattices(4)
    assert len(found) == 2
    assert any(find_isomorphism(L, chain(4)) is not None for L in found)
    assert any(find_isomorphism(L, B2) is not None for L in found)


def test_boolean_algebras_only_at_powers_of_two():
    assert [len(boolean_algebras(n)) for n in range(1, 9)] == [1, 1, 0, 1, 0, 0, 0, 1]


@pytest.mark.parametrize("n", range(1, 7))
def test_meet_semilattices_are_lattices(n):
    # a finite meet-semilattice with a top has all joins
    found = meet_semilattices(n)
    assert {canonical_form(M) for M in found} == {canonical_form(L) for L in lattices(n)}
    for M in found:
        assert all(M.join(a, b) is not None for a in M.elements for b in M.elements)


def test_census_shape():
    c = census("dl", 6)
    assert c == {"kind": "dl", "size": 6, "count": 5, "advisory_published_count": 5}
    assert census("gps", 2)["advisory_published_count"] is None


def test_enumerate_instances_order():
    sizes = [L.n for L in enumerate_instances(InstanceClass("dl", 4))]
    assert sizes == sorted(sizes) and sizes[0] == 1
    assert all(L.n == 4 for L in enumerate_instances(InstanceClass("dl", 4, exact=True)))


def test_unknown_kind():
    with pytest.raises(WrongSourceKind):
        instances_of_size("tree", 3)
    with pytest.raises(WrongSourceKind):
        InstanceClass("tree", 3)


def test_size_cap(monkeypatch):
    monkeypatch.setenv("FINDUAL_MAX_SIZE", "3")
    with pytest.raises(SizeCapExceeded):
        InstanceClass("poset", 4)
    with pytest.raises(SizeCapExceeded):
        posets(5)
    monkeypatch.setenv("FINDUAL_MAX_SIZE", "many")
    with pytest.raises(SizeCapExceeded):
        InstanceClass("poset", 2)


def test_spaces_are_valid_and_distinct():
    for kind in ("gps", "pgps"):
        for n in range(1, 4):
            found = instances_of_size(kind, n)
            keys = {canonical_form(X.carrier, X.colors()) for X in found}
            assert len(keys) == len(found)


@settings(max_examples=60, deadline=None)
@given(random_posets(max_size=6), st.randoms(use_true_random=False))
def test_canonical_form_is_relabelling_invariant(P, rnd):
    els = list(P.elements)
    shuffled = els[:]
    rnd.shuffle(shuffled)
    ren = {a: f"z{shuffled.index(a)}" for a in els}
    pairs = [(ren[a], ren[b]) for a, b in leq_set(P)]
    Q = FinitePoset.from_pairs(sorted(ren.values()), pairs)
    assert canonical_form(P) == canonical_form(Q)


@settings(max_examples=60, deadline=None)
@given(random_posets(max_size=5), random_posets(max_size=5))
def test_canonical_form_separates(P, Q):
    same = P.n == Q.n and find_isomorphism(P, Q) is not None
    assert (canonical_form(P) == canonical_form(Q)) == same
