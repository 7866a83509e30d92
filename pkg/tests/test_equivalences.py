import pytest

from findual.enumeration import distributive_lattices
from findual.equivalences import (
    MapEquivalences,
    all_maps,
    check_morphism_equivalences,
    dagger_nonempty,
    hom_pool,
    interpolation_fails,
    map_equivalences,
)
from findual.fixtures import B2, CH1, CH2, CH3
from findual.morphisms import StructureMap, classify_map

from conftest import subsets

SMALL = [L for n in range(1, 4) for L in distributive_lattices(n)]


def brute_meet_hom(f):
    D, C = f.dom, f.cod
    return all(f(D.meet(*S)) == C.meet(*[f(s) for s in S]) for S in subsets(D.elements))


def test_empty_meet_case_on_ch1_to_ch2():
    f = StructureMap(CH1, CH2, {"1": "0"})
    c = classify_map(f)
    assert c.sup_hom and not c.dagger
    assert dagger_nonempty(f)
    eq = map_equivalences(f).results
    assert eq["sup_strong"] == (True, True, True)
    # literal dagger fails through the empty meet; the extra clause catches it
    assert eq["sup_strong_top"] == (False, False)


def test_identity_satisfies_everything():
    eq = map_equivalences(StructureMap.identity(B2)).results
    for key, vals in eq.items():
        assert all(vals), key


def test_frame_hom_and_interpolation():
    f = StructureMap(CH3, B2, {"0": "0", "h": "a", "1": "1"})
    assert interpolation_fails(f) is None
    assert map_equivalences(f).results["frame_hom"] == (True, True, True)
    g = StructureMap(CH2, CH3, {"0": "0", "1": "h"})
    assert classify_map(g).sup_hom and not classify_map(g).frame_hom
    assert interpolation_fails(g) is not None


def test_discrepancy_detection():
    eq = MapEquivalences({"a": (True, True), "b": (True, False), "c": (False, False, False)})
    assert eq.discrepancies() == ["b"]


def test_all_maps_count():
    assert len(list(all_maps(B2, CH3))) == 3 ** 4


@pytest.mark.parametrize("D", SMALL + [B2], ids=lambda L: f"n{L.n}")
@pytest.mark.parametrize("C", SMALL + [B2], ids=lambda L: f"n{L.n}")
def test_hom_pool_by_brute_force(D, C):
    pool = set(hom_pool(D, C))
    for f in all_maps(D, C):
        c = classify_map(f)
        assert c.meet_hom == brute_meet_hom(f)
        assert (f.table in pool) == bool(c.meet_hom or c.join_complete)


@pytest.mark.parametrize("D", SMALL + [B2], ids=lambda L: f"n{L.n}")
@pytest.mark.parametrize("C", SMALL + [B2], ids=lambda L: f"n{L.n}")
def test_no_discrepancies_exhaustively(D, C):
    for f in all_maps(D, C):
        assert map_equivalences(f).discrepancies() == []


def test_small_battery_run_is_green_and_deterministic():
    large = distributive_lattices(5)
    a = check_morphism_equivalences(SMALL, large, samples=300, seed=3)
    b = check_morphism_equivalences(SMALL, large, samples=300, seed=3)
    assert a.ok, a.failures()
    assert a.dumps() == b.dumps()
    assert a.meta["sampled_maps"] == 300
    assert "equivalence.sup_strong_top" in a and "adequacy.hansoul" in a


def test_battery_rejects_non_distributive():
    from findual.fixtures import M3

    with pytest.raises(ValueError):
        check_morphism_equivalences([M3], [])
