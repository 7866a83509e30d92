"""Isomorphism-class enumeration of small posets, lattices and spaces."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .algebra import is_distributive_lattice, is_distributive_semilattice, _is_boolean_lattice
from .errors import SizeCapExceeded, WrongSourceKind
from .order import FinitePoset, is_lattice, is_meet_semilattice, iter_bits, popcount
from .spaces import Space, check_space_axioms

KINDS = ("poset", "ms", "dms", "bdms", "dl", "ba", "frame", "gps", "pgps")
CAP_ENV = "FINDUAL_MAX_SIZE"
DEFAULT_CAP = 8

# Published counts, logged for comparison only.
ADVISORY_COUNTS = {
    "poset": (1, 1, 2, 5, 16, 63, 318, 2045, 16999),
    "lattice": (1, 1, 1, 1, 2, 5, 15, 53, 222),
    "dl": (1, 1, 1, 1, 2, 3, 5, 8, 15),
}


def size_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise SizeCapExceeded(f"{CAP_ENV} must be an integer, got {raw!r}")


def _check_cap(n: int) -> None:
    cap = size_cap()
    if n > cap:
        raise SizeCapExceeded(f"size {n} exceeds the enumeration cap {cap} (set {CAP_ENV})", witness=n)


# -- canonical forms ------------------------------------------------------------------


def _refine(up: tuple, down: tuple, colors: tuple) -> list:
    """Colour refinement: stable partition by order degrees and neighbour colours."""
    n = len(up)
    col = [(popcount(up[i]), popcount(down[i]), colors[i]) for i in range(n)]
    while True:
        ranks = {c: k for k, c in enumerate(sorted(set(col)))}
        cur = [ranks[c] for c in col]
        new = [
            (
                cur[i],
                tuple(sorted(cur[j] for j in iter_bits(up[i]))),
                tuple(sorted(cur[j] for j in iter_bits(down[i]))),
            )
            for i in range(n)
        ]
        ranks2 = {c: k for k, c in enumerate(sorted(set(new)))}
        nxt = [ranks2[c] for c in new]
        if len(set(nxt)) == len(set(cur)):
            return nxt
        col = nxt


def canonical_form(P: FinitePoset, colors: Optional[dict] = None) -> tuple:
    """Minimal (colours, order-matrix) encoding over cell-respecting permutations."""
    n = P.n
    cvals = tuple(repr(colors.get(x)) if colors else "" for x in P.elements)
    cells = _refine(P.up, P.down, cvals)
    groups = {}
    for i, c in enumerate(cells):
        groups.setdefault(c, []).append(i)
    ordered_cells = [groups[c] for c in sorted(groups)]
    best = None
    for choice in itertools.product(*(itertools.permutations(g) for g in ordered_cells)):
        perm = [i for block in choice for i in block]
        pos = {old: new for new, old in enumerate(perm)}
        rows = []
        for old in perm:
            m = 0
            for j in iter_bits(P.up[old]):
                m |= 1 << pos[j]
            rows.append(m)
        code = tuple(rows)
        if best is None or code < best:
            best = code
    return (n, tuple(cvals[i] for g in ordered_cells for i in g), best or ())


def _from_rows(rows: tuple, names=None) -> FinitePoset:
    n = len(rows)
    # relabel along a linear extension so names read bottom-up
    order = sorted(range(n), key=lambda i: (sum(1 for j in range(n) if (rows[j] >> i) & 1), i))
    pos = {old: new for new, old in enumerate(order)}
    up = []
    for old in order:
        m = 0
        for j in iter_bits(rows[old]):
            m |= 1 << pos[j]
        up.append(m)
    names = names or [f"e{i}" for i in range(n)]
    return FinitePoset(tuple(names), tuple(up))


# -- posets -------------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _posets_rows(n: int) -> tuple:
    """One representative (as row masks) per isomorphism class, grown by maximal elements."""
    if n == 0:
        return ((),)
    seen = {}
    for rows in _posets_rows(n - 1):
        P = FinitePoset(tuple(range(n - 1)), rows)
        new_bit = 1 << (n - 1)
        for D in P.downsets():
            up = tuple(r | new_bit if (D >> i) & 1 else r for i, r in enumerate(rows)) + (new_bit,)
            Q = FinitePoset(tuple(range(n)), up)
            key = canonical_form(Q)
            if key not in seen:
                seen[key] = up
    return tuple(seen[k] for k in sorted(seen))


def posets(n: int) -> list:
    _check_cap(n)
    return [_from_rows(r) for r in _posets_rows(n)]


def posets_bruteforce(n: int) -> list:
    """Every naturally labelled order on n points (i < j only), deduplicated."""
    _check_cap(n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = {}
    for bits in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if (bits >> k) & 1:
                up[i] |= 1 << j
        if any(up[j] & ~up[i] for i in range(n) for j in iter_bits(up[i])):
            continue  # not transitive
        P = FinitePoset(tuple(range(n)), tuple(up))
        key = canonical_form(P)
        seen.setdefault(key, tuple(up))
    return [_from_rows(seen[k]) for k in sorted(seen)]


def _with_bounds(rows: tuple, top: bool, bottom: bool) -> tuple:
    out = list(rows)
    if bottom:
        out = [r << 1 for r in out]
        out = [(1 << (len(out) + 1)) - 1] + out
    k = len(out)
    if top:
        out = [r | (1 << k) for r in out] + [1 << k]
    return tuple(out)


def _dedup(candidates) -> list:
    seen = {}
    for rows in candidates:
        P = FinitePoset(tuple(range(len(rows))), rows)
        seen.setdefault(canonical_form(P), rows)
    return [_from_rows(seen[k]) for k in sorted(seen)]


def meet_semilattices(n: int) -> list:
    """Posets with a top whose binary meets exist (posets of size n-1 under a new top)."""
    _check_cap(n)
    if n == 0:
        return []
    cands = [_with_bounds(r, True, False) for r in _posets_rows(n - 1)]
    return [P for P in _dedup(cands) if is_meet_semilattice(P)]


def lattices(n: int) -> list:
    """Bounded posets that are lattices, from posets of size n-2."""
    _check_cap(n)
    if n == 0:
        return []
    if n == 1:
        return [_from_rows((1,))]
    cands = [_with_bounds(r, True, True) for r in _posets_rows(n - 2)]
    return [P for P in _dedup(cands) if is_lattice(P)]


def distributive_lattices(n: int) -> list:
    return [L for L in lattices(n) if is_distributive_lattice(L)]


def distributive_lattices_birkhoff(n: int) -> list:
    """Downset lattices of posets; each distributive lattice of size n arises once per class."""
    _check_cap(n)
    if n == 0:
        return []
    cands = []
    for k in range(n):
        for rows in _posets_rows(k):
            P = FinitePoset(tuple(range(k)), rows)
            ds = sorted(P.downsets(), key=lambda m: (popcount(m), m))
            if len(ds) != n:
                continue
            up = tuple(
                sum(1 << j for j, E in enumerate(ds) if D & ~E == 0) for D in ds
            )
            cands.append(up)
    return _dedup(cands)


def boolean_algebras(n: int) -> list:
    _check_cap(n)
    return [L for L in distributive_lattices(n) if _is_boolean_lattice(L) is None]


def _spaces(n: int, pointed: bool) -> list:
    """All (poset, X0[, point]) of size n passing the axioms, deduplicated with colours."""
    _check_cap(n)
    seen = {}
    for P in posets(n):
        if pointed and P.top_idx is None:
            continue
        point = P.top if pointed else None
        rest = P.full & ~(1 << P.top_idx) if pointed else P.full
        for x0 in _submask_list(rest):
            X = Space(P, P.subset(x0), point)
            if n == 0 or not check_space_axioms(X).ok:
                continue
            key = canonical_form(P, X.colors())
            seen.setdefault(key, X)
    return [seen[k] for k in sorted(seen)]


def _submask_list(mask: int) -> list:
    bits = list(iter_bits(mask))
    out = []
    for k in range(1 << len(bits)):
        out.append(sum(1 << bits[i] for i in range(len(bits)) if (k >> i) & 1))
    return out


# -- instance classes -----------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceClass:
    kind: str
    max_size: int
    exact: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise WrongSourceKind(f"unknown instance kind {self.kind!r}; expected one of {KINDS}")
        if self.max_size < 0:
            raise WrongSourceKind("max_size must be non-negative")
        _check_cap(self.max_size)


def instances_of_size(kind: str, n: int) -> list:
    if kind == "poset":
        return posets(n)
    if kind == "ms":
        return meet_semilattices(n)
    if kind == "dms":
        return [M for M in meet_semilattices(n) if is_distributive_semilattice(M)]
    if kind == "bdms":
        return [M for M in meet_semilattices(n) if M.bottom_idx is not None and is_distributive_semilattice(M)]
    if kind in ("dl", "frame"):
        return distributive_lattices(n)
    if kind == "ba":
        return boolean_algebras(n)
    if kind == "gps":
        return _spaces(n, pointed=False)
    if kind == "pgps":
        return _spaces(n, pointed=True)
    raise WrongSourceKind(f"unknown instance kind {kind!r}")


def enumerate_instances(c: InstanceClass) -> Iterator:
    """Every isomorphism class of the kind, once, by increasing size (from 1)."""
    sizes = [c.max_size] if c.exact else range(1, c.max_size + 1)
    for n in sizes:
        yield from instances_of_size(c.kind, n)


def census(kind: str, size: int) -> dict:
    found = instances_of_size(kind, size)
    table = {"dl": "dl", "frame": "dl", "ms": "lattice", "poset": "poset"}.get(kind)
    advisory = None
    if table and size < len(ADVISORY_COUNTS[table]):
        advisory = ADVISORY_COUNTS[table][size]
    return {"kind": kind, "size": size, "count": len(found), "advisory_published_count": advisory}
