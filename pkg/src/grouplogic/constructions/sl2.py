"""SL_2(q) as a structural group, and the binary icosahedral subgroup."""

from __future__ import annotations

import numpy as np

from ..config import CAPS
from ..errors import ConditionViolated, NotFound, TooLarge
from ..kernel.group import FiniteGroup, Subset, from_table, structural_group
from ..kernel.subgroups import center, closure, derived_subgroup, element_orders
from .fields import Fq


def _sl2_mul(F: Fq):
    A, M = F.add, F.mul

    def cmul(x, y):
        a1, b1, c1, d1 = x.T
        a2, b2, c2, d2 = y.T
        return np.stack(
            [
                A[M[a1, a2], M[b1, c2]],
                A[M[a1, b2], M[b1, d2]],
                A[M[c1, a2], M[d1, c2]],
                A[M[c1, b2], M[d1, d2]],
            ],
            axis=1,
        )

    def cinv(x):
        a, b, c, d = x.T
        return np.stack([d, F.neg[b], F.neg[c], a], axis=1)

    return cmul, cinv


def sl2(F: Fq, *, cap: int | None = None) -> FiniteGroup:
    """SL_2(q) generated by ``x(w) = [[1, w], [0, 1]]`` (w in an F_p-basis) and ``[[0, 1], [-1, 0]]``.

    Elements are coordinate rows ``(a, b, c, d)`` for ``[[a, b], [c, d]]``.
    """
    cap = CAPS.sl2_q if cap is None else cap
    q = F.q
    if q > cap:
        raise TooLarge(f"SL2({q}) exceeds the configured field-size cap {cap}")
    cmul, cinv = _sl2_mul(F)
    gens = [[1, w, 0, 1] for w in F.basis()] + [[0, 1, F.neg[1], 0]]
    G = structural_group(
        [1, 0, 0, 1],
        gens,
        cmul,
        cinv,
        [q, q, q, q],
        label=f"SL2({q})",
        describe=lambda c: "[[{},{}],[{},{}]]".format(*(int(t) for t in c)),
    )
    expected = q * (q * q - 1)
    if G.order != expected:
        raise AssertionError(f"SL2({q}) enumerated {G.order} elements, expected {expected}")
    G._cache["field"] = F
    return G


def count_det_one(F: Fq) -> int:
    """Independent count of 2x2 matrices of determinant 1."""
    q = F.q
    ad = F.mul[np.arange(q)[:, None], np.arange(q)[None, :]].ravel()
    # number of (a, d) pairs for each value of a*d, same for b*c
    hist = np.bincount(ad, minlength=q)
    total = 0
    for v in range(q):
        # ad - bc = 1  <=>  bc = ad - 1
        total += int(hist[v]) * int(hist[F.sub(v, 1)])
    return total


def subgroup_as_group(G: FiniteGroup, H: Subset, label: str) -> tuple[FiniteGroup, np.ndarray]:
    """``H`` as a table group; returns it with the embedding (new id -> id in ``G``)."""
    emb = H.array
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[emb] = np.arange(emb.size)
    table = pos[G.mul_ids(emb[:, None], emb[None, :])]
    return from_table(table, label=label), emb


def _bounded_closure(G: FiniteGroup, gens, bound: int) -> np.ndarray | None:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens = np.asarray(gens, dtype=np.int64)
    frontier = np.array([0], dtype=np.int64)
    count = 1
    while frontier.size:
        prods = G.mul_ids(frontier[:, None], gens[None, :]).ravel()
        new = np.unique(prods[~mask[prods]])
        count += new.size
        if count > bound:
            return None
        mask[new] = True
        frontier = new
    return mask


def find_binary_icosahedral(F: Fq, G: FiniteGroup | None = None) -> Subset:
    """First generator pair (by element orders, then ids) whose closure is perfect of order 120."""
    q = F.q
    if q % 10 not in (1, 9):
        raise ConditionViolated(f"q = {q} is not congruent to +-1 mod 10")
    G = sl2(F) if G is None else G
    orders = element_orders(G)
    useful = [k for k in sorted(set(orders.tolist())) if k > 2 and 120 % k == 0]
    by_order = {k: np.flatnonzero(orders == k) for k in useful}
    for k1 in useful:
        for k2 in useful:
            for a in by_order[k1]:
                for b in by_order[k2]:
                    if b == a:
                        continue
                    mask = _bounded_closure(G, [a, b], 120)
                    if mask is None or mask.sum() != 120:
                        continue
                    B = closure(G, [int(a), int(b)])
                    if derived_subgroup(G, B) == B:
                        return B
    raise NotFound(f"no binary icosahedral subgroup found in SL2({q})")


def check_binary_icosahedral(G: FiniteGroup, B: Subset) -> dict:
    Z = center(G, B)
    orders = element_orders(G)[B.array]
    return {
        "order": B.order,
        "perfect": derived_subgroup(G, B) == B,
        "center_order": Z.order,
        "involutions": int((orders == 2).sum()),
    }
