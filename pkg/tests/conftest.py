"""Shared strategies and small brute-force oracles written independently of the package."""
from itertools import combinations

from hypothesis import strategies as st

from findual.order import FinitePoset


def closure(elements, pairs):
    """Reflexive-transitive closure as a set of pairs (Warshall over plain sets)."""
    rel = {(x, x) for x in elements} | set(pairs)
    for k in elements:
        for i in elements:
            if (i, k) in rel:
                for j in elements:
                    if (k, j) in rel:
                        rel.add((i, j))
    return rel


def leq_set(P):
    return {(a, b) for a in P.elements for b in P.elements if P.le(a, b)}


def subsets(xs):
    xs = list(xs)
    for r in range(len(xs) + 1):
        for c in combinations(xs, r):
            yield frozenset(c)


def brute_meet(P, S):
    lower = [x for x in P.elements if all(P.le(x, s) for s in S)]
    best = [x for x in lower if all(P.le(y, x) for y in lower)]
    return best[0] if best else None


def brute_join(P, S):
    upper = [x for x in P.elements if all(P.le(s, x) for s in S)]
    best = [x for x in upper if all(P.le(x, y) for y in upper)]
    return best[0] if best else None


def brute_admissible(X):
    """Upsets U whose complement's maximal points all lie in X0."""
    P = X.carrier
    out = set()
    for U in subsets(P.elements):
        if not all(y in U for x in U for y in P.elements if P.le(x, y)):
            continue
        rest = [x for x in P.elements if x not in U]
        maxima = [x for x in rest if not any(y != x and P.le(x, y) for y in rest)]
        if all(x in X.x0 for x in maxima):
            out.add(U)
    return out


@st.composite
def random_posets(draw, max_size=6):
    """Posets on e0..e(n-1) from a random strict upper-triangular relation."""
    n = draw(st.integers(min_value=1, max_value=max_size))
    names = [f"e{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    perm = draw(st.permutations(names))
    return FinitePoset.from_pairs(perm, pairs)
