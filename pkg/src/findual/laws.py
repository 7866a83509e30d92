"""Exhaustive category-law checks for generalized Priestley morphisms.

Hom-sets are enumerated once; composites are computed in bulk from the
defining formula (x (S*R) z iff x ∈ □_R□_S U forces z ∈ U for every
admissible U) and stored as composition tables, so identity, box and
associativity laws over every composable triple reduce to array lookups.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .morphisms import SpaceRelation, _box_mask, compose_gp, gp_morphism_images
from .report import DualityReport
from .spaces import Space


@dataclass
class HomSet:
    X: Space
    Y: Space
    images: list
    index: dict = field(repr=False)
    box: np.ndarray = field(repr=False)  # (H, |A(Y)|) masks over X
    box_idx: np.ndarray = field(repr=False)  # (H, |A(Y)|) positions in A(X)

    def __len__(self):
        return len(self.images)

    def relation(self, k: int) -> SpaceRelation:
        return SpaceRelation.from_images(self.X, self.Y, self.images[k])


def hom_set(X: Space, Y: Space) -> HomSet:
    images = list(gp_morphism_images(X, Y))
    A_Y, A_pos = Y.a_masks, {U: k for k, U in enumerate(X.a_masks)}
    box = np.zeros((len(images), len(A_Y)), dtype=np.int64)
    box_idx = np.zeros_like(box)
    for r, im in enumerate(images):
        for u, U in enumerate(A_Y):
            b = _box_mask(im, U)
            box[r, u] = b
            box_idx[r, u] = A_pos[b]  # admissible by construction
    return HomSet(X, Y, images, {im: k for k, im in enumerate(images)}, box, box_idx)


def _key(images, nz: int) -> int:
    k = 0
    for x, m in enumerate(images):
        k |= m << (x * nz)
    return k


def composition_table(hXY: HomSet, hYZ: HomSet, hXZ: HomSet):
    """C[r, s] = index of s*r in hXZ (-1 if absent) and the raw □_R□_S table."""
    X, Z = hXY.X, hYZ.Y
    nx, nz = X.carrier.n, Z.carrier.n
    A_Z = np.array(Z.a_masks, dtype=np.int64)
    full = (1 << nz) - 1
    T = hXY.box[:, hYZ.box_idx]  # (R, S, |A(Z)|)
    key = np.zeros(T.shape[:2], dtype=np.int64)
    for x in range(nx):
        hit = ((T >> x) & 1).astype(bool)
        img = np.where(hit, A_Z[None, None, :], full)
        acc = np.bitwise_and.reduce(img, axis=2) if img.shape[2] else np.full(T.shape[:2], full)
        key |= acc << (x * nz)
    lookup = np.full(1 << (nx * nz), -1, dtype=np.int64)
    for k, im in enumerate(hXZ.images):
        lookup[_key(im, nz)] = k
    return lookup[key], T


def _identity_index(h: HomSet) -> int:
    return h.index[tuple(h.X.carrier.up)]


def check_category_laws(spaces: list, seed: int = 0, reference_samples: int = 200) -> DualityReport:
    """Identity, box and associativity laws over every composable triple among ``spaces``."""
    rep = DualityReport(meta={"spaces": len(spaces), "seed": seed})
    n = len(spaces)
    H = {(i, j): hom_set(spaces[i], spaces[j]) for i in range(n) for j in range(n)}
    rep.meta["morphisms"] = sum(len(h) for h in H.values())
    C = {}
    closed = ident = boxlaw = True
    wit = {}
    pairs = 0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                hij, hjk, hik = H[i, j], H[j, k], H[i, k]
                if not len(hij) or not len(hjk):
                    C[i, j, k] = np.zeros((len(hij), len(hjk)), dtype=np.int64)
                    continue
                table, T = composition_table(hij, hjk, hik)
                C[i, j, k] = table
                pairs += table.size
                if (table < 0).any() and closed:
                    closed = False
                    r, s = map(int, np.argwhere(table < 0)[0])
                    wit["closed"] = (i, j, k, r, s)
                if closed and not np.array_equal(hik.box[table], T) and boxlaw:
                    boxlaw = False
                    wit["box"] = (i, j, k)
    rep.meta["composable_pairs"] = pairs
    rep.add("composite_is_morphism", closed, wit.get("closed"))
    rep.add("box_of_composite", boxlaw, wit.get("box"), note="□_{S*R} = □_R∘□_S on every admissible set")

    for i in range(n):
        for j in range(n):
            h = H[i, j]
            if not len(h):
                continue
            rng = np.arange(len(h))
            left = C[i, j, j][:, _identity_index(H[j, j])]
            right = C[i, i, j][_identity_index(H[i, i]), :]
            if not (np.array_equal(left, rng) and np.array_equal(right, rng)):
                ident = False
                wit["identity"] = (i, j)
    rep.add("identity_laws", ident, wit.get("identity"))

    assoc, triples = True, 0
    if closed:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    Cijk = C[i, j, k]
                    for l in range(n):
                        Cjkl, Cikl, Cijl = C[j, k, l], C[i, k, l], C[i, j, l]
                        if not (Cijk.size and Cjkl.size):
                            continue
                        # (T*S)*R vs T*(S*R), chunked over R
                        for r in range(Cijk.shape[0]):
                            lhs = Cikl[Cijk[r]]  # (S, T)
                            rhs = Cijl[r][Cjkl]  # (S, T)
                            triples += lhs.size
                            if not np.array_equal(lhs, rhs):
                                assoc = False
                                wit["assoc"] = (i, j, k, l, r)
                                break
                        if not assoc:
                            break
                    if not assoc:
                        break
                if not assoc:
                    break
            if not assoc:
                break
    rep.meta["triples"] = triples
    rep.add("associativity", assoc and closed, wit.get("assoc"))

    # bulk composition against the reference implementation on sampled pairs
    rng = random.Random(seed)
    agree, tried = True, 0
    keys = [(i, j, k) for i in range(n) for j in range(n) for k in range(n) if C[i, j, k].size]
    for _ in range(reference_samples if keys else 0):
        i, j, k = rng.choice(keys)
        r = rng.randrange(len(H[i, j]))
        s = rng.randrange(len(H[j, k]))
        ref = compose_gp(H[j, k].relation(s), H[i, j].relation(r))
        tried += 1
        if ref.images != H[i, k].images[C[i, j, k][r, s]]:
            agree = False
            wit["reference"] = (i, j, k, r, s)
            break
    rep.meta["reference_samples"] = tried
    rep.add("bulk_matches_reference", agree, wit.get("reference"))
    return rep
