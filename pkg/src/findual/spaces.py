"""Finite (pointed) generalized Priestley spaces.

The topology of a finite space is discrete, so "clopen", "closed" and
"dense" are evaluated in the discrete topology: every subset is clopen and
the only dense subset of a set is the set itself.  Each axiom report says
which finite reduction it used.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .errors import InternalMismatch, UnknownElement
from .order import FinitePoset, iter_bits, popcount
from .report import DualityReport


@dataclass(frozen=True, eq=False)
class Space:
    """Carrier poset, distinguished subset X0 and an optional point m."""

    carrier: FinitePoset
    x0: frozenset
    point: object = None

    def __post_init__(self):
        object.__setattr__(self, "x0", frozenset(self.x0))
        for x in self.x0:
            if x not in self.carrier:
                raise UnknownElement(f"x0 mentions unknown element {x!r}", witness=x)
        if self.point is not None and self.point not in self.carrier:
            raise UnknownElement(f"point {self.point!r} is not in the carrier", witness=self.point)

    @property
    def pointed(self) -> bool:
        return self.point is not None

    def __len__(self):
        return self.carrier.n

    def __eq__(self, other):
        if not isinstance(other, Space):
            return NotImplemented
        return self.carrier == other.carrier and self.x0 == other.x0 and self.point == other.point

    def __hash__(self):
        return hash((self.carrier, self.x0, self.point))

    def __repr__(self):
        return f"Space({self.carrier!r}, x0={sorted(map(repr, self.x0))}, point={self.point!r})"

    @cached_property
    def x0_mask(self) -> int:
        return self.carrier.mask(self.x0)

    @cached_property
    def point_idx(self) -> Optional[int]:
        return None if self.point is None else self.carrier.idx(self.point)

    @cached_property
    def a_masks(self) -> tuple:
        """Admissible clopen upsets as bitmasks, sorted by size then position."""
        X = self.carrier
        out = [U for U in X.upsets() if X.maximal(X.full & ~U) & ~self.x0_mask == 0]
        out.sort(key=_mask_key)
        return tuple(out)

    @cached_property
    def va_masks(self) -> tuple:
        """Closure of the admissible clopens under arbitrary intersections."""
        fam = set(self.a_masks)
        fam.add(self.carrier.full)  # empty intersection
        changed = True
        while changed:
            changed = False
            for U in list(fam):
                for V in list(fam):
                    W = U & V
                    if W not in fam:
                        fam.add(W)
                        changed = True
        return tuple(sorted(fam, key=_mask_key))

    def colors(self) -> dict:
        """Labels used by colour-preserving isomorphism search."""
        return {
            x: ("m" if x == self.point else "x0" if x in self.x0 else "-")
            for x in self.carrier.elements
        }


def _mask_key(m: int):
    return (popcount(m), list(iter_bits(m)))


def pointed_space(carrier: FinitePoset, x0: Iterable, point) -> Space:
    return Space(carrier, frozenset(x0), point)


@dataclass(frozen=True)
class AdmissibleFamily:
    space: Space
    sets: tuple
    order: FinitePoset  # by inclusion

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, s):
        return frozenset(s) in set(self.sets)


def _family(X: Space, masks) -> AdmissibleFamily:
    sets = tuple(X.carrier.subset(m) for m in masks)
    order = FinitePoset.from_relation(sets, lambda A, B: A <= B)
    return AdmissibleFamily(space=X, sets=sets, order=order)


def admissible_clopen_upsets(X: Space) -> AdmissibleFamily:
    """A(X): upsets U with max(X \\ U) ⊆ X0."""
    return _family(X, X.a_masks)


def satisfies_closed_admissibility(X: Space, C: int) -> bool:
    """X \\ C = ↓(X0 \\ C), for an upset C given as a bitmask."""
    P = X.carrier
    return P.is_upset(C) and P.full & ~C == P.down_closure(X.x0_mask & ~C)


def admissible_closed_upsets(X: Space) -> AdmissibleFamily:
    """V^a(X) as the intersection closure of A(X), each member re-checked."""
    for C in X.va_masks:
        if not satisfies_closed_admissibility(X, C):
            raise InternalMismatch(
                "intersection of admissible clopens fails closed admissibility",
                witness=X.carrier.subset(C),
            )
    return _family(X, X.va_masks)


def closed_admissible_by_definition(X: Space) -> tuple:
    """All upsets C with X \\ C = ↓(X0 \\ C), as bitmasks."""
    out = [C for C in X.carrier.upsets() if satisfies_closed_admissibility(X, C)]
    return tuple(sorted(out, key=_mask_key))


def va_lattice(X: Space) -> FinitePoset:
    """(V^a(X), ⊇): elements are frozensets, C <= D iff C ⊇ D."""
    sets = admissible_closed_upsets(X).sets
    return FinitePoset.from_relation(sets, lambda C, D: C >= D)


def a_lattice(X: Space) -> FinitePoset:
    """(A(X), ⊆)."""
    return admissible_clopen_upsets(X).order


@dataclass(frozen=True)
class IxFamily:
    sets: tuple
    nonempty: bool
    directed: bool


def _ix_masks(X: Space, i: int) -> list:
    return [U for U in X.a_masks if not (U >> i) & 1]


def _directed(masks: list) -> bool:
    # pairwise upper bounds only; emptiness is reported separately
    fam = masks
    for U in fam:
        for V in fam:
            if not any(U | V == (U | V) & W for W in fam):
                return False
    return True


def ix_family(X: Space, x) -> IxFamily:
    """I_x = {U ∈ A(X) : x ∉ U}."""
    i = X.carrier.idx(x)
    masks = _ix_masks(X, i)
    return IxFamily(
        sets=tuple(X.carrier.subset(m) for m in masks),
        nonempty=bool(masks),
        directed=_directed(masks),
    )


# -- axioms -----------------------------------------------------------------------


def check_space_axioms(X: Space) -> DualityReport:
    """Per-axiom pass/fail with witnesses; check ids are ``axiom.<n>``."""
    rep = DualityReport()
    P = X.carrier
    if P.n == 0:
        rep.skip("axiom.all", "empty space: excluded from axiom checking")
        return rep
    els = P.elements
    rep.add(
        "axiom.1",
        True,
        note="finite poset with discrete topology is always a Priestley space",
    )
    k = 1
    if X.pointed:
        m = X.point_idx
        k += 1
        rep.add(
            f"axiom.{k}",
            P.up[m] == 1 << m and all((P.up[i] >> m) & 1 for i in range(P.n)),
            witness=els[m],
            note="m is the unique maximum",
        )
        rest = P.full & ~(1 << m)
    else:
        rest = P.full
    k += 1
    bad = rest ^ X.x0_mask
    rep.add(
        f"axiom.{k}",
        bad == 0,
        witness=P.ordered(bad),
        note="density in the discrete topology reduces to X0 = " + ("X \\ {m}" if X.pointed else "X"),
    )
    k += 1
    missing = [els[i] for i in iter_bits(rest) if not P.up[i] & X.x0_mask]
    rep.add(f"axiom.{k}", not missing, witness=missing, note="order-density")
    k += 1
    wrong = []
    for i in range(P.n):
        ix = _ix_masks(X, i)
        good = bool(ix) and _directed(ix)
        if good != bool((X.x0_mask >> i) & 1):
            wrong.append(els[i])
    rep.add(
        f"axiom.{k}",
        not wrong,
        witness=wrong,
        note="x in X0 iff I_x is nonempty and directed",
    )
    k += 1
    order_fail = None
    for i in range(P.n):
        for j in range(P.n):
            separated = all((U >> j) & 1 for U in X.a_masks if (U >> i) & 1)
            if separated != bool((P.up[i] >> j) & 1):
                order_fail = (els[i], els[j])
                break
        if order_fail:
            break
    rep.add(
        f"axiom.{k}",
        order_fail is None,
        witness=order_fail,
        note="x <= y iff every admissible clopen upset containing x contains y",
    )
    return rep


def is_valid_space(X: Space) -> bool:
    return X.carrier.n > 0 and check_space_axioms(X).ok


# -- pointed translation ------------------------------------------------------------


def fresh_point(carrier: FinitePoset, base: str = "m"):
    name = base
    while name in carrier:
        name += "'"
    return name


def minus(X: Space) -> Space:
    """X⁻: drop the point, keep X0.  May be empty."""
    if not X.pointed:
        raise ValueError("minus() needs a pointed space")
    rest = [x for x in X.carrier.elements if x != X.point]
    return Space(X.carrier.restrict(rest), X.x0)


def plus(X: Space, point=None) -> Space:
    """X⁺: adjoin a fresh isolated top, (X⁺)0 = X0."""
    if X.pointed:
        raise ValueError("plus() needs an unpointed space")
    if point is None:
        point = fresh_point(X.carrier)
    els = X.carrier.elements + (point,)
    pairs = set(X.carrier.leq) | {(x, point) for x in els}
    return Space(FinitePoset.from_pairs(els, pairs), X.x0, point)


@dataclass(frozen=True)
class SpaceKind:
    is_priestley: bool
    is_pointed_priestley: bool
    is_pointed_stone: bool
    is_stone: bool


def _is_identity_order(P: FinitePoset, mask: int) -> bool:
    return all(P.up[i] & mask == 1 << i for i in iter_bits(mask))


def space_kind(X: Space) -> SpaceKind:
    P = X.carrier
    priestley = not X.pointed and X.x0_mask == P.full
    pp = False
    if X.pointed:
        pp = is_valid_space(X) and X.x0_mask == P.full & ~(1 << X.point_idx)
    pstone = pp and _is_identity_order(P, X.x0_mask)
    return SpaceKind(
        is_priestley=priestley,
        is_pointed_priestley=pp,
        is_pointed_stone=pstone,
        is_stone=priestley and _is_identity_order(P, P.full),
    )


# -- the spectrum side of a frame --------------------------------------------------


def y_space(L: FinitePoset, bounded: bool = False) -> Space:
    """Y_L = PP(L) ∪ {1} with X0 = P(L) and point 1; ``bounded`` drops 1."""
    from .algebra import prime_and_pseudoprime

    cls = prime_and_pseudoprime(L)
    keep = cls.pseudoprimes_mask
    if not bounded:
        keep |= 1 << L.top_idx
    carrier = L.restrict(L.ordered(keep))
    return Space(carrier, cls.primes, None if bounded else L.top)
