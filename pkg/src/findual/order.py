"""Finite posets and the order-theoretic primitives built on them.

Elements are arbitrary hashable labels (strings when loaded from JSON,
frozensets for derived structures such as filter lattices).  Internally
every subset is a Python int used as a bitmask over element positions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Optional

from .errors import CycleError, UnknownElement

Element = Hashable


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True, eq=False)
class FinitePoset:
    """A finite partial order.

    ``up[i]`` is the bitmask of positions j with ``elements[i] <= elements[j]``.
    Use :meth:`from_pairs` to build one from a generating relation.
    """

    elements: tuple
    up: tuple

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise ValueError("elements must be pairwise distinct")
        if len(self.up) != n:
            raise ValueError("order table has the wrong size")
        for i, u in enumerate(self.up):
            if not (u >> i) & 1:
                raise ValueError(f"order is not reflexive at {self.elements[i]!r}")
            for j in iter_bits(u):
                if j != i and (self.up[j] >> i) & 1:
                    raise CycleError(
                        f"{self.elements[i]!r} and {self.elements[j]!r} are mutually below",
                        witness=(self.elements[i], self.elements[j]),
                    )
                if self.up[j] & ~u:
                    raise ValueError("order is not transitive")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_pairs(cls, elements: Iterable, pairs: Iterable = ()) -> "FinitePoset":
        """Reflexive-transitive closure of ``pairs`` over ``elements``."""
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("elements must be pairwise distinct")
        up = [1 << i for i in range(len(elements))]
        for a, b in pairs:
            if a not in index:
                raise UnknownElement(f"unknown element {a!r}", witness=a)
            if b not in index:
                raise UnknownElement(f"unknown element {b!r}", witness=b)
            up[index[a]] |= 1 << index[b]
        # Warshall on bitmasks
        for k in range(len(elements)):
            bit = 1 << k
            for i in range(len(elements)):
                if up[i] & bit:
                    up[i] |= up[k]
        return cls(elements, tuple(up))

    @classmethod
    def from_relation(cls, elements: Iterable, le) -> "FinitePoset":
        """Build from a predicate ``le(x, y)`` that is already an order."""
        elements = tuple(elements)
        up = []
        for x in elements:
            mask = 0
            for j, y in enumerate(elements):
                if le(x, y):
                    mask |= 1 << j
            up.append(mask)
        return cls(elements, tuple(up))

    # -- basic accessors --------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __repr__(self) -> str:
        covers = ", ".join(f"{a!r}<{b!r}" for a, b in sorted(self.covers_idx()))
        return f"FinitePoset({list(self.elements)!r}; {covers})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self.leq == other.leq

    def __hash__(self) -> int:
        return hash((frozenset(self.elements), self.leq))

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def n(self) -> int:
        return len(self.elements)

    @cached_property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    @cached_property
    def down(self) -> tuple:
        down = [0] * self.n
        for i, u in enumerate(self.up):
            for j in iter_bits(u):
                down[j] |= 1 << i
        return tuple(down)

    @cached_property
    def leq(self) -> frozenset:
        """The order as a set of pairs (x, y) with x <= y."""
        els = self.elements
        return frozenset((els[i], els[j]) for i, u in enumerate(self.up) for j in iter_bits(u))

    def idx(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}", witness=x) from None

    def le(self, x, y) -> bool:
        return bool((self.up[self.idx(x)] >> self.idx(y)) & 1)

    def mask(self, subset: Iterable) -> int:
        m = 0
        for x in subset:
            m |= 1 << self.idx(x)
        return m

    def subset(self, mask: int) -> frozenset:
        els = self.elements
        return frozenset(els[i] for i in iter_bits(mask))

    def ordered(self, mask: int) -> list:
        """Members of ``mask`` in declared element order."""
        els = self.elements
        return [els[i] for i in iter_bits(mask)]

    # -- up/down closures ---------------------------------------------------

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.up[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.down[i]
        return out

    def is_upset(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    def is_downset(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    def maximal(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            if self.up[i] & mask == 1 << i:
                out |= 1 << i
        return out

    def minimal(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            if self.down[i] & mask == 1 << i:
                out |= 1 << i
        return out

    def upsets(self) -> Iterator[int]:
        """Every upset exactly once, as bitmasks."""
        order = sorted(range(self.n), key=lambda i: popcount(self.up[i]))
        strict_up = [self.up[i] & ~(1 << i) for i in range(self.n)]

        def rec(k: int, cur: int):
            if k == len(order):
                yield cur
                return
            i = order[k]
            yield from rec(k + 1, cur)
            if strict_up[i] & ~cur == 0:
                yield from rec(k + 1, cur | (1 << i))

        yield from rec(0, 0)

    def downsets(self) -> Iterator[int]:
        return self.dual().upsets()

    # -- bounds -------------------------------------------------------------

    @cached_property
    def _down_lookup(self) -> dict:
        return {d: i for i, d in enumerate(self.down)}

    @cached_property
    def _up_lookup(self) -> dict:
        return {u: i for i, u in enumerate(self.up)}

    def meet_idx(self, mask: int) -> Optional[int]:
        lower = self.full
        for i in iter_bits(mask):
            lower &= self.down[i]
        return self._down_lookup.get(lower)

    def join_idx(self, mask: int) -> Optional[int]:
        upper = self.full
        for i in iter_bits(mask):
            upper &= self.up[i]
        return self._up_lookup.get(upper)

    @cached_property
    def meet_table(self) -> tuple:
        look = self._down_lookup
        d = self.down
        return tuple(tuple(look.get(d[i] & d[j]) for j in range(self.n)) for i in range(self.n))

    @cached_property
    def join_table(self) -> tuple:
        look = self._up_lookup
        u = self.up
        return tuple(tuple(look.get(u[i] & u[j]) for j in range(self.n)) for i in range(self.n))

    @cached_property
    def top_idx(self) -> Optional[int]:
        return self.meet_idx(0)

    @cached_property
    def bottom_idx(self) -> Optional[int]:
        return self.join_idx(0)

    @property
    def top(self):
        t = self.top_idx
        return None if t is None else self.elements[t]

    @property
    def bottom(self):
        b = self.bottom_idx
        return None if b is None else self.elements[b]

    def meet(self, *xs):
        r = self.meet_idx(self.mask(xs))
        return None if r is None else self.elements[r]

    def join(self, *xs):
        r = self.join_idx(self.mask(xs))
        return None if r is None else self.elements[r]

    # -- derived posets -----------------------------------------------------

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.elements, self.down)

    def restrict(self, subset: Iterable) -> "FinitePoset":
        """Induced suborder on ``subset`` (kept in declared order)."""
        keep = self.mask(subset)
        els = self.ordered(keep)
        pos = {x: k for k, x in enumerate(els)}
        up = []
        for x in els:
            m = 0
            for j in iter_bits(self.up[self.index[x]] & keep):
                m |= 1 << pos[self.elements[j]]
            up.append(m)
        return FinitePoset(tuple(els), tuple(up))

    def relabel(self, mapping: Mapping) -> "FinitePoset":
        return FinitePoset(tuple(mapping[x] for x in self.elements), self.up)

    def covers_idx(self) -> set:
        out = set()
        for i, u in enumerate(self.up):
            strict = u & ~(1 << i)
            for j in iter_bits(strict):
                # j covers i iff nothing strictly between
                if popcount(strict & self.down[j]) == 1:
                    out.add((i, j))
        return out


def hasse_covers(P: FinitePoset) -> set:
    """Pairs (x, y) with x < y and nothing strictly between."""
    els = P.elements
    return {(els[i], els[j]) for i, j in P.covers_idx()}


def bound(P: FinitePoset, S: Iterable, kind: str = "meet"):
    """Infimum (``kind="meet"``) or supremum (``kind="join"``) of S, or None."""
    mask = P.mask(S)
    if kind == "meet":
        r = P.meet_idx(mask)
    elif kind == "join":
        r = P.join_idx(mask)
    else:
        raise ValueError(f"kind must be 'meet' or 'join', not {kind!r}")
    return None if r is None else P.elements[r]


@dataclass(frozen=True)
class PosetClass:
    is_meet_semilattice: bool
    is_lattice: bool
    has_top: bool
    has_bottom: bool
    is_chain: bool
    is_antichain: bool


def _all_binary(table) -> bool:
    return all(v is not None for row in table for v in row)


def is_meet_semilattice(P: FinitePoset) -> bool:
    return P.top_idx is not None and _all_binary(P.meet_table)


def is_lattice(P: FinitePoset) -> bool:
    return (
        is_meet_semilattice(P)
        and P.bottom_idx is not None
        and _all_binary(P.join_table)
    )


def classify_poset(P: FinitePoset) -> PosetClass:
    up = P.up
    chain = all((up[i] >> j) & 1 or (up[j] >> i) & 1 for i in range(P.n) for j in range(P.n))
    antichain = all(u == 1 << i for i, u in enumerate(up))
    return PosetClass(
        is_meet_semilattice=is_meet_semilattice(P),
        is_lattice=is_lattice(P),
        has_top=P.top_idx is not None,
        has_bottom=P.bottom_idx is not None,
        is_chain=chain,
        is_antichain=antichain,
    )


def find_isomorphism(
    P: FinitePoset,
    Q: FinitePoset,
    p_colors: Optional[Mapping] = None,
    q_colors: Optional[Mapping] = None,
) -> Optional[dict]:
    """An order-isomorphism P -> Q, or None.

    Optional colour maps restrict the search to colour-preserving
    bijections (used for spaces, where X0 and the point must match).
    Search is backtracking in P's declared order over candidates in Q's
    declared order, so the result is deterministic.
    """
    n = P.n
    if n != Q.n:
        return None

    def sig(R, i, colors):
        c = colors.get(R.elements[i]) if colors is not None else None
        return (popcount(R.up[i]), popcount(R.down[i]), repr(c))

    psig = [sig(P, i, p_colors) for i in range(n)]
    qsig = [sig(Q, j, q_colors) for j in range(n)]
    if sorted(psig) != sorted(qsig):
        return None
    cands = [[j for j in range(n) if qsig[j] == psig[i]] for i in range(n)]
    # most constrained first, ties in declared order
    order = sorted(range(n), key=lambda i: (len(cands[i]), i))
    image = [-1] * n
    used = 0

    def consistent(i, j):
        for k in range(n):
            jk = image[k]
            if jk < 0:
                continue
            if bool((P.up[i] >> k) & 1) != bool((Q.up[j] >> jk) & 1):
                return False
            if bool((P.up[k] >> i) & 1) != bool((Q.up[jk] >> j) & 1):
                return False
        return True

    def rec(pos):
        nonlocal used
        if pos == n:
            return True
        i = order[pos]
        for j in cands[i]:
            if (used >> j) & 1 or not consistent(i, j):
                continue
            image[i] = j
            used |= 1 << j
            if rec(pos + 1):
                return True
            image[i] = -1
            used &= ~(1 << j)
        return False

    if not rec(0):
        return None
    return {P.elements[i]: Q.elements[image[i]] for i in range(n)}


def is_order_isomorphism(P: FinitePoset, Q: FinitePoset, f: Mapping) -> bool:
    """True iff ``f`` is a bijection P -> Q that preserves and reflects order."""
    if len(f) != P.n or set(f) != set(P.elements) or set(f.values()) != set(Q.elements):
        return False
    return all(P.le(x, y) == Q.le(f[x], f[y]) for x in P.elements for y in P.elements)


def is_order_preserving(P: FinitePoset, Q: FinitePoset, f: Mapping) -> bool:
    return all(Q.le(f[x], f[y]) for x, y in P.leq)
