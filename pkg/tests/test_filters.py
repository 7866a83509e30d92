import pytest

from findual.enumeration import distributive_lattices, lattices
from findual.errors import NotASemilattice
from findual.filters import (
    distributive_envelope,
    filter_generated,
    filters,
    ideals,
    is_filter,
    is_ideal,
    is_prime_filter,
    optimal_filters,
    optimal_filters_via_envelope,
    optimal_filters_via_pseudoprimes,
    prime_filters,
    principal_filter,
)
from findual.fixtures import B2, CH1, CH3, antichain
from findual.order import find_isomorphism

from conftest import subsets

fs = frozenset


def brute_filters(M):
    out = []
    for S in subsets(M.elements):
        if not S:
            continue
        up = all(y in S for x in S for y in M.elements if M.le(x, y))
        closed = all(M.meet(a, b) in S for a in S for b in S)
        if up and closed:
            out.append(S)
    return set(out)


def brute_prime_filters(M):
    F = brute_filters(M)
    full = fs(M.elements)
    return {P for P in F if P != full and all(A <= P or B <= P for A in F for B in F if A & B <= P)}


def test_filters_examples():
    assert filters(CH1).filters == (fs({"1"}),)
    got = set(filters(CH3).filters)
    assert got == {fs({"1"}), fs({"h", "1"}), fs({"0", "h", "1"})}
    assert filters(CH3).inclusion_order.n == 3
    assert set(filters(B2).filters) == {fs({"1"}), fs({"a", "1"}), fs({"b", "1"}), fs(B2.elements)}


def test_filters_need_semilattice():
    with pytest.raises(NotASemilattice):
        filters(antichain(["x", "y"]))


def test_prime_filters_examples():
    assert set(prime_filters(B2)) == {fs({"a", "1"}), fs({"b", "1"})}
    assert set(prime_filters(CH3)) == {fs({"1"}), fs({"h", "1"})}
    assert prime_filters(CH1) == []


def test_ideals_examples():
    ch3 = {I.members: I.prime for I in ideals(CH3)}
    assert ch3 == {fs({"0"}): True, fs({"0", "h"}): True, fs({"0", "h", "1"}): False}
    b2 = {I.members: I.prime for I in ideals(B2)}
    assert b2 == {fs({"0"}): False, fs({"0", "a"}): True, fs({"0", "b"}): True, fs(B2.elements): False}
    assert {I.members: I.prime for I in ideals(CH1)} == {fs({"1"}): False}


def test_envelope_examples():
    for M in (CH1, B2, CH3):
        assert find_isomorphism(distributive_envelope(M).envelope, M) is not None


def test_optimal_examples():
    assert set(optimal_filters(B2)) == {fs({"a", "1"}), fs({"b", "1"})}
    assert set(optimal_filters(CH3)) == {fs({"1"}), fs({"h", "1"})}
    assert optimal_filters(CH1) == []


def test_membership_helpers():
    assert is_filter(B2, {"a", "1"}) and not is_filter(B2, {"a", "b", "1"})
    assert is_prime_filter(B2, {"a", "1"}) and not is_prime_filter(B2, B2.elements)
    assert is_ideal(B2, {"0", "a"}) and not is_ideal(B2, {"a"})
    assert principal_filter(B2, "a") == fs({"a", "1"})
    assert filter_generated(B2, {"a", "b"}) == fs(B2.elements)


@pytest.mark.parametrize("M", [L for n in range(1, 7) for L in lattices(n)], ids=lambda L: f"n{L.n}")
def test_filters_and_primes_by_brute_force(M):
    assert set(filters(M).filters) == brute_filters(M)
    assert set(prime_filters(M)) == brute_prime_filters(M)


@pytest.mark.parametrize("M", [L for n in range(1, 8) for L in distributive_lattices(n)], ids=lambda L: f"n{L.n}")
def test_optimal_algorithms_agree(M):
    env = set(optimal_filters_via_envelope(M))
    pp = set(optimal_filters_via_pseudoprimes(M))
    assert env == pp
    assert pp == set(prime_filters(M))
