"""Filters, ideals, prime/optimal filters and the distributive envelope."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import is_distributive_semilattice, prime_and_pseudoprime
from .errors import NotASemilattice, NotDistributive, OracleMismatch
from .order import FinitePoset, is_meet_semilattice, iter_bits, popcount


def _require_ms(M: FinitePoset) -> None:
    if not is_meet_semilattice(M):
        raise NotASemilattice("carrier is not a meet-semilattice")


def _require_dms(M: FinitePoset) -> None:
    _require_ms(M)
    verdict = is_distributive_semilattice(M)
    if not verdict:
        raise NotDistributive("meet-semilattice is not distributive", witness=verdict.witness)


def _meet_closed(M: FinitePoset, mask: int) -> bool:
    meet = M.meet_table
    members = list(iter_bits(mask))
    return all((mask >> meet[a][b]) & 1 for a in members for b in members)


def filter_masks(M: FinitePoset) -> list:
    """Nonempty meet-closed upsets, ordered by size then declared order."""
    _require_ms(M)
    out = [U for U in M.upsets() if U and _meet_closed(M, U)]
    out.sort(key=lambda m: (popcount(m), list(iter_bits(m))))
    return out


@dataclass(frozen=True)
class FilterFamily:
    base: FinitePoset
    filters: tuple
    inclusion_order: FinitePoset

    def __len__(self):
        return len(self.filters)


def filter_lattice(M: FinitePoset) -> FinitePoset:
    """Filt(M) as a poset whose elements are the filters (frozensets)."""
    return filters(M).inclusion_order


def filters(M: FinitePoset) -> FilterFamily:
    masks = filter_masks(M)
    sets = tuple(M.subset(m) for m in masks)
    order = FinitePoset.from_relation(sets, lambda F, G: F <= G)
    return FilterFamily(base=M, filters=sets, inclusion_order=order)


def _is_prime_filter_mask(M: FinitePoset, P: int, fmasks: list) -> bool:
    if P == M.full:
        return False
    escaping = [F for F in fmasks if F & ~P]
    return all((F1 & F2) & ~P for F1 in escaping for F2 in escaping)


def _prime_filter_masks(M: FinitePoset, fmasks: list) -> list:
    return [P for P in fmasks if _is_prime_filter_mask(M, P, fmasks)]


def prime_filters(M: FinitePoset) -> list:
    """Proper filters P with F1 ∩ F2 ⊆ P forcing F1 ⊆ P or F2 ⊆ P."""
    fm = filter_masks(M)
    return [M.subset(m) for m in _prime_filter_masks(M, fm)]


@dataclass(frozen=True)
class Ideal:
    members: frozenset
    prime: bool


def _is_ideal(M: FinitePoset, I: int) -> bool:
    if not I or not M.is_downset(I):
        return False
    members = list(iter_bits(I))
    return all(M.up[a] & M.up[b] & I for a in members for b in members)


def ideal_masks(M: FinitePoset) -> list:
    _require_ms(M)
    out = [I for I in M.downsets() if _is_ideal(M, I)]
    out.sort(key=lambda m: (popcount(m), list(iter_bits(m))))
    return out


def _is_prime_ideal(M: FinitePoset, I: int) -> bool:
    if I == M.full:
        return False
    meet = M.meet_table
    for a in range(M.n):
        for b in range(M.n):
            if (I >> meet[a][b]) & 1 and not (I >> a) & 1 and not (I >> b) & 1:
                return False
    return True


def ideals(M: FinitePoset) -> list:
    """Nonempty downsets in which every pair has an upper bound inside, with prime flags."""
    return [Ideal(M.subset(I), _is_prime_ideal(M, I)) for I in ideal_masks(M)]


def is_ideal(M: FinitePoset, subset) -> bool:
    return _is_ideal(M, M.mask(subset))


def is_filter(M: FinitePoset, subset) -> bool:
    m = M.mask(subset)
    return bool(m) and M.is_upset(m) and _meet_closed(M, m)


def is_prime_filter(M: FinitePoset, subset) -> bool:
    m = M.mask(subset)
    fm = filter_masks(M)
    return m in fm and _is_prime_filter_mask(M, m, fm)


# -- distributive envelope ---------------------------------------------------------


@dataclass(frozen=True)
class EnvelopeResult:
    envelope: FinitePoset
    embedding: dict  # element of M -> element of envelope
    prime_filters: tuple


def distributive_envelope(M: FinitePoset) -> EnvelopeResult:
    """D(M) realised inside the powerset of prime filters.

    Points of the envelope are frozensets of prime filters; a ↦ φ(a), the
    set of prime filters containing a.  The empty set and the full set are
    always included so the result is bounded.
    """
    _require_dms(M)
    primes = tuple(prime_filters(M))
    npr = len(primes)
    phi = {}
    for a in M.elements:
        m = 0
        for k, P in enumerate(primes):
            if a in P:
                m |= 1 << k
        phi[a] = m
    gen = set(phi.values()) | {0, (1 << npr) - 1}
    frontier = set(gen)
    while frontier:
        new = set()
        for x in frontier:
            for y in list(gen):
                for z in (x | y, x & y):
                    if z not in gen:
                        new.add(z)
        gen |= new
        frontier = new
    ordered = sorted(gen, key=lambda m: (popcount(m), list(iter_bits(m))))
    points = tuple(frozenset(primes[k] for k in iter_bits(m)) for m in ordered)
    env = FinitePoset.from_relation(points, lambda A, B: A <= B)
    to_point = {m: p for m, p in zip(ordered, points)}
    embedding = {a: to_point[phi[a]] for a in M.elements}
    return EnvelopeResult(envelope=env, embedding=embedding, prime_filters=primes)


def optimal_filters_via_envelope(M: FinitePoset) -> list:
    env = distributive_envelope(M)
    D = env.envelope
    out = []
    for P in prime_filters(D):
        F = frozenset(a for a in M.elements if env.embedding[a] in P)
        if F != frozenset(M.elements) and F not in out:
            out.append(F)
    return out


def optimal_filters_via_pseudoprimes(M: FinitePoset) -> list:
    _require_dms(M)
    L = filter_lattice(M)
    classes = prime_and_pseudoprime(L)
    return [F for F in L.elements if F in classes.pseudoprimes]


def optimal_filters(M: FinitePoset) -> list:
    """Optimal filters, computed through the envelope and through pseudoprimes of Filt(M).

    Raises OracleMismatch if the two constructions disagree.
    """
    via_env = optimal_filters_via_envelope(M)
    via_pp = optimal_filters_via_pseudoprimes(M)
    if set(via_env) != set(via_pp):
        raise OracleMismatch(
            "envelope and pseudoprime constructions of optimal filters disagree",
            witness=(set(via_env) ^ set(via_pp)),
        )
    order = {F: k for k, F in enumerate(filter_lattice(M).elements)}
    return sorted(via_pp, key=order.__getitem__)


def principal_filter(M: FinitePoset, a) -> frozenset:
    return M.subset(M.up[M.idx(a)])


def filter_generated(M: FinitePoset, subset) -> Optional[frozenset]:
    """The least filter containing ``subset`` (↑ of all finite meets)."""
    m = M.mask(subset)
    closed = m
    changed = True
    while changed:
        changed = False
        for a in list(iter_bits(closed)):
            for b in list(iter_bits(closed)):
                c = M.meet_table[a][b]
                if c is not None and not (closed >> c) & 1:
                    closed |= 1 << c
                    changed = True
    closed = M.up_closure(closed)
    if M.top_idx is not None:
        closed |= 1 << M.top_idx
    return M.subset(closed)
