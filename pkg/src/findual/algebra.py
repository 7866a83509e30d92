"""Lattice- and frame-level predicates on finite carriers.

Every predicate is evaluated from its definition by exhaustive
quantification.  On finite lattices many of these collapse (every element
is compact, pseudoprimes are primes, ...); those collapses are tested
elsewhere, never used as shortcuts here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import NoBottom, NoPrimeFound, NotAFrame, NotALattice, NotASemilattice, PreconditionViolated
from .order import FinitePoset, is_lattice, is_meet_semilattice, iter_bits, submasks

# powerset oracles are exponential; refuse beyond this
ORACLE_MAX = 12


@dataclass(frozen=True)
class Verdict:
    """A boolean answer with an optional counterexample."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


def require_lattice(L: FinitePoset) -> None:
    if not is_lattice(L):
        raise NotALattice("carrier is not a lattice")


def _idx_witness(L, *idx):
    return tuple(L.elements[i] for i in idx)


# -- distributivity -----------------------------------------------------------


def is_distributive_semilattice(M: FinitePoset) -> Verdict:
    """Semilattice distributivity: a∧b <= c lifts to a'∧b' = c with a<=a', b<=b'."""
    if not is_meet_semilattice(M):
        raise NotASemilattice("carrier is not a meet-semilattice")
    n, meet, up = M.n, M.meet_table, M.up
    for a in range(n):
        for b in range(n):
            ab = meet[a][b]
            for c in range(n):
                if not (up[ab] >> c) & 1:
                    continue
                lifted = any(
                    meet[a2][b2] == c for a2 in iter_bits(up[a]) for b2 in iter_bits(up[b])
                )
                if not lifted:
                    return Verdict(False, _idx_witness(M, a, b, c))
    return Verdict(True)


def is_distributive_lattice(L: FinitePoset) -> Verdict:
    """a∧(b∨c) = (a∧b)∨(a∧c) for all triples; witness is the least failing triple."""
    require_lattice(L)
    n, meet, join = L.n, L.meet_table, L.join_table
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return Verdict(False, _idx_witness(L, a, b, c))
    return Verdict(True)


def satisfies_jid(L: FinitePoset) -> Verdict:
    """Join infinite distributive law over every subset S (finite carrier)."""
    require_lattice(L)
    if L.n > 16:
        raise PreconditionViolated("join distributivity scan is limited to 16 elements")
    meet = L.meet_table
    for S in range(L.full + 1):
        js = L.join_idx(S)
        for a in range(L.n):
            rhs = 0
            for s in iter_bits(S):
                rhs |= 1 << meet[a][s]
            if meet[a][js] != L.join_idx(rhs):
                return Verdict(False, (L.elements[a], frozenset(L.ordered(S))))
    return Verdict(True)


def is_frame(L: FinitePoset) -> bool:
    return is_lattice(L) and bool(is_distributive_lattice(L))


def require_frame(L: FinitePoset) -> None:
    if not is_frame(L):
        raise NotAFrame("carrier is not a frame")


# -- way-below and compactness --------------------------------------------------


def _way_below_directed(L: FinitePoset, a: int, b: int) -> bool:
    # A finite directed set contains its own join, so directed sets are
    # exactly the subsets D of some ↓t with t ∈ D.  Grouping them by t:
    # every such D contains t, so a <= t settles them all, and otherwise
    # D = {t} is a counterexample.
    for t in iter_bits(L.up[b]):
        if not (L.up[a] >> t) & 1:
            return False
    return True


def _way_below_powerset(L: FinitePoset, a: int, b: int) -> bool:
    for S in range(L.full + 1):
        j = L.join_idx(S)
        if not (L.up[b] >> j) & 1:
            continue
        if not any((L.up[a] >> L.join_idx(T)) & 1 for T in submasks(S)):
            return False
    return True


def way_below(L: FinitePoset, a, b) -> bool:
    """a ≪ b, quantified over directed subsets."""
    require_lattice(L)
    return _way_below_directed(L, L.idx(a), L.idx(b))


def way_below_oracle(L: FinitePoset, a, b) -> bool:
    """a ≪ b by brute force over all subsets S and all finite T ⊆ S."""
    require_lattice(L)
    if L.n > ORACLE_MAX:
        raise PreconditionViolated(f"powerset oracle is limited to {ORACLE_MAX} elements")
    return _way_below_powerset(L, L.idx(a), L.idx(b))


def way_below_matrix(L: FinitePoset) -> tuple:
    """wb[i] is the bitmask of j with elements[i] ≪ elements[j]."""
    require_lattice(L)
    rows = []
    for a in range(L.n):
        m = 0
        for b in range(L.n):
            if _way_below_directed(L, a, b):
                m |= 1 << b
        rows.append(m)
    return tuple(rows)


def compact_mask(L: FinitePoset) -> int:
    require_lattice(L)
    m = 0
    for k in range(L.n):
        if _way_below_directed(L, k, k):
            m |= 1 << k
    return m


def compact_elements(L: FinitePoset) -> frozenset:
    return L.subset(compact_mask(L))


# -- prime, pseudoprime, irreducible ---------------------------------------------


@dataclass(frozen=True)
class ElementClasses:
    primes: frozenset
    pseudoprimes: frozenset
    irreducibles: frozenset
    primes_mask: int = field(repr=False, default=0)
    pseudoprimes_mask: int = field(repr=False, default=0)


def prime_mask(L: FinitePoset) -> int:
    require_lattice(L)
    n, meet, up, top = L.n, L.meet_table, L.up, L.top_idx
    out = 0
    for p in range(n):
        if p == top:
            continue
        ok = True
        for a in range(n):
            if (up[a] >> p) & 1:
                continue
            for b in range(n):
                if not (up[b] >> p) & 1 and (up[meet[a][b]] >> p) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out |= 1 << p
    return out


def pseudoprime_mask(L: FinitePoset, wb: Optional[tuple] = None) -> int:
    """p != 1 such that a1∧...∧an ≪ p forces some ai <= p, for every n >= 1."""
    require_lattice(L)
    if wb is None:
        wb = way_below_matrix(L)
    out = 0
    for p in range(L.n):
        if p == L.top_idx:
            continue
        # families containing some ai <= p satisfy the condition outright
        not_below = L.full & ~L.down[p]
        ok = True
        for A in submasks(not_below):
            if A and (wb[L.meet_idx(A)] >> p) & 1:
                ok = False
                break
        if ok:
            out |= 1 << p
    return out


def irreducible_mask(L: FinitePoset) -> int:
    require_lattice(L)
    n, meet, top = L.n, L.meet_table, L.top_idx
    out = 0
    for p in range(n):
        if p == top:
            continue
        if all(meet[a][b] != p or a == p or b == p for a in range(n) for b in range(n)):
            out |= 1 << p
    return out


def prime_and_pseudoprime(L: FinitePoset) -> ElementClasses:
    pm, ppm = prime_mask(L), pseudoprime_mask(L)
    return ElementClasses(
        primes=L.subset(pm),
        pseudoprimes=L.subset(ppm),
        irreducibles=L.subset(irreducible_mask(L)),
        primes_mask=pm,
        pseudoprimes_mask=ppm,
    )


def separating_prime(L: FinitePoset, a, b):
    """Least prime p (declared order) with b <= p and a not <= p."""
    require_frame(L)
    ia, ib = L.idx(a), L.idx(b)
    if (L.up[ia] >> ib) & 1:
        raise PreconditionViolated(f"{a!r} <= {b!r}; nothing to separate", witness=(a, b))
    for p in iter_bits(prime_mask(L) & L.up[ib]):
        if not (L.up[ia] >> p) & 1:
            return L.elements[p]
    raise NoPrimeFound(f"no prime separates {a!r} from {b!r}", witness=(a, b))


# -- complements -------------------------------------------------------------------


def _pseudocomplement_idx(L: FinitePoset, a: int) -> int:
    bot, meet = L.bottom_idx, L.meet_table
    disjoint = 0
    for x in range(L.n):
        if meet[a][x] == bot:
            disjoint |= 1 << x
    return L.join_idx(disjoint)


def pseudocomplement(L: FinitePoset, a):
    """a* = ⋁{x : a∧x = 0}."""
    require_frame(L)
    if L.bottom_idx is None:
        raise NoBottom("carrier has no bottom")
    ia = L.idx(a)
    star = _pseudocomplement_idx(L, ia)
    assert L.meet_table[ia][star] == L.bottom_idx
    return L.elements[star]


def complemented_mask(L: FinitePoset) -> int:
    require_frame(L)
    out = 0
    for a in range(L.n):
        if L.join_table[a][_pseudocomplement_idx(L, a)] == L.top_idx:
            out |= 1 << a
    return out


def _join_dense(L: FinitePoset, gen: int) -> Optional[int]:
    """First element that is not the join of the ``gen`` members below it."""
    for x in range(L.n):
        if L.join_idx(L.down[x] & gen) != x:
            return x
    return None


def _is_boolean_lattice(L: FinitePoset) -> Optional[Any]:
    """None when boolean, else a witness (element lacking a complement)."""
    if not is_distributive_lattice(L):
        return "not distributive"
    top, bot = L.top_idx, L.bottom_idx
    for a in range(L.n):
        if not any(
            L.meet_table[a][b] == bot and L.join_table[a][b] == top for b in range(L.n)
        ):
            return L.elements[a]
    return None


# -- frame taxonomy --------------------------------------------------------------------

FRAME_FLAGS = (
    "is_distributive_lattice",
    "satisfies_jid",
    "is_frame",
    "is_compact_frame",
    "is_algebraic",
    "is_coherent",
    "is_arithmetic",
    "is_zero_dimensional",
    "is_stone_frame",
    "is_generalized_stone_frame",
    "is_boolean",
    "is_generalized_boolean",
)


@dataclass(frozen=True)
class FrameProfile:
    flags: dict
    witnesses: dict

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    def to_json(self) -> dict:
        from .io import label

        out = dict(self.flags)
        out["witnesses"] = {k: _jsonable(v, label) for k, v in sorted(self.witnesses.items())}
        return out


def _jsonable(v, label):
    if isinstance(v, (tuple, list)):
        return [_jsonable(x, label) for x in v]
    if isinstance(v, (frozenset, set)):
        return sorted(label(x) for x in v)
    if isinstance(v, str):
        return v
    return label(v)


def classify_frame(L: FinitePoset) -> FrameProfile:
    """All taxonomy flags from their definitions, with counterexamples."""
    require_lattice(L)
    flags, wit = {}, {}

    def put(name, ok, witness=None):
        flags[name] = bool(ok)
        if not ok:
            wit[name] = witness

    dist = is_distributive_lattice(L)
    put("is_distributive_lattice", dist, dist.witness)
    jid = satisfies_jid(L)
    put("satisfies_jid", jid, jid.witness)
    frame = bool(dist)  # finite lattices are complete
    put("is_frame", frame, dist.witness)

    K = compact_mask(L)
    top = L.top_idx
    top_compact = bool((K >> top) & 1)
    put("is_compact_frame", frame and top_compact, "not a frame" if not frame else L.elements[top])

    dense_fail = _join_dense(L, K)
    put("is_algebraic", dense_fail is None, None if dense_fail is None else L.elements[dense_fail])
    algebraic_frame = frame and dense_fail is None

    def meets_closed(max_size):
        for S in submasks(K):
            if max_size is not None and bin(S).count("1") > max_size:
                continue
            if not (K >> L.meet_idx(S)) & 1:
                return frozenset(L.ordered(S))
        return None

    arith_fail = meets_closed(2) if algebraic_frame else "not an algebraic frame"
    coh_fail = meets_closed(None) if algebraic_frame else "not an algebraic frame"
    put("is_arithmetic", arith_fail is None, arith_fail)
    put("is_coherent", coh_fail is None, coh_fail)

    if frame:
        C = complemented_mask(L)
        zd_fail = _join_dense(L, C)
        put("is_zero_dimensional", zd_fail is None, None if zd_fail is None else L.elements[zd_fail])
        zd = zd_fail is None
    else:
        put("is_zero_dimensional", False, "not a frame")
        zd = False
    put("is_stone_frame", flags["is_compact_frame"] and zd, "not compact and zero-dimensional")
    put("is_generalized_stone_frame", algebraic_frame and zd, "not algebraic and zero-dimensional")

    bool_fail = _is_boolean_lattice(L)
    put("is_boolean", bool_fail is None, bool_fail)
    gba_fail = None
    if not dist:
        gba_fail = "not distributive"
    else:
        for a in range(L.n):
            interval = L.restrict(L.ordered(L.up[a]))
            if _is_boolean_lattice(interval) is not None:
                gba_fail = L.elements[a]
                break
    put("is_generalized_boolean", gba_fail is None, gba_fail)
    return FrameProfile(flags=flags, witnesses=wit)
