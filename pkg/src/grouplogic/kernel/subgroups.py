"""Elementary subgroup computations: closures, centralisers, classes, cosets."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from ..errors import MembershipError, NotNormal, NotSubgroup
from .group import FiniteGroup, Subset, _closure_mask, _mask_of


def _ids(G: FiniteGroup, elems) -> list[int]:
    if isinstance(elems, Subset):
        return sorted(elems.members)
    out = []
    for x in elems:
        x = int(x)
        G.check(x)
        out.append(x)
    return out


def commutator(G: FiniteGroup, x: int, y: int) -> int:
    """``x^-1 y^-1 x y``."""
    return G.mul(G.mul(G.inv(x), G.inv(y)), G.mul(x, y))


def conjugate(G: FiniteGroup, x: int, y: int) -> int:
    """``y^-1 x y``."""
    return G.mul(G.mul(G.inv(y), x), y)


def element_order(G: FiniteGroup, g: int) -> int:
    G.check(g)
    n, x = 1, g
    while x != 0:
        x = G.mul(x, g)
        n += 1
    return n


def element_orders(G: FiniteGroup) -> np.ndarray:
    """Orders of all elements, vectorised over the carrier."""
    cached = G._cache.get("element_orders")
    if cached is not None:
        return cached
    orders = np.zeros(G.order, dtype=np.int64)
    x = G.elements.copy()
    k = 1
    while np.any(orders == 0):
        done = (x == 0) & (orders == 0)
        orders[done] = k
        x = G.mul_ids(x, G.elements)
        k += 1
    G._cache["element_orders"] = orders
    return orders


def trivial_subgroup(G: FiniteGroup) -> Subset:
    return Subset(G, frozenset([0]), True, ())


def whole_group(G: FiniteGroup) -> Subset:
    return Subset(G, frozenset(range(G.order)), True, tuple(G.generators))


def closure(G: FiniteGroup, S) -> Subset:
    """Least subgroup containing ``S``."""
    gens = _ids(G, S)
    gens = [g for g in gens if g != 0]
    mask = _closure_mask(G, gens)
    return Subset.from_mask(G, mask, is_subgroup=True, gens=sorted(set(gens)))


def join(G: FiniteGroup, H: Subset, extra: Iterable[int]) -> Subset:
    """``<H, extra>`` grown from the members of subgroup ``H``."""
    extra = [int(x) for x in extra if not H.mask[int(x)]]
    if not extra:
        return H
    gens = sorted(set(H.gens) | set(extra))
    mask = _closure_mask(G, gens, start=H.mask)
    return Subset.from_mask(G, mask, is_subgroup=True, gens=gens)


def subgroup_generators(H: Subset) -> tuple:
    if H.gens or H.order == 1:
        return H.gens
    gens: list[int] = []
    mask = np.zeros(H.parent.order, dtype=bool)
    mask[0] = True
    for g in sorted(H.members):
        if not mask[g]:
            gens.append(g)
            mask = _closure_mask(H.parent, gens, start=mask)
    return tuple(gens)


def as_subgroup(G: FiniteGroup, S) -> Subset:
    """Verify that ``S`` is a subgroup and return it flagged as such."""
    ids = _ids(G, S)
    members = frozenset(ids)
    if 0 not in members:
        raise NotSubgroup("subset does not contain the identity")
    arr = np.array(sorted(members), dtype=np.int64)
    mask = _mask_of(G, arr)
    prods = G.mul_ids(arr[:, None], arr[None, :])
    if not mask[prods].all():
        raise NotSubgroup("subset is not closed under multiplication")
    H = Subset(G, members, True)
    return Subset(G, members, True, subgroup_generators(H))


def normal_closure(G: FiniteGroup, S, within: Subset | None = None) -> Subset:
    """Least subgroup containing ``S`` normalised by ``within`` (default: ``G``)."""
    H = closure(G, S)
    conj_by = np.array(within.gens if within is not None else G.generators, dtype=np.int64)
    if within is not None and not within.gens and within.order > 1:
        conj_by = np.array(subgroup_generators(within), dtype=np.int64)
    if conj_by.size == 0:
        return H
    while True:
        hg = np.array(H.gens, dtype=np.int64)
        if hg.size == 0:
            return H
        conj = G.conj_ids(hg[:, None], conj_by[None, :]).ravel()
        outside = np.unique(conj[~H.mask[conj]])
        if outside.size == 0:
            return H
        H = join(G, H, outside.tolist())


def is_normal(G: FiniteGroup, H: Subset, within: Subset | None = None) -> bool:
    conj_by = np.array(within.gens if within is not None else G.generators, dtype=np.int64)
    hg = np.array(subgroup_generators(H), dtype=np.int64)
    if hg.size == 0 or conj_by.size == 0:
        return True
    conj = G.conj_ids(hg[:, None], conj_by[None, :])
    return bool(H.mask[conj].all())


def require_normal(G: FiniteGroup, H: Subset) -> Subset:
    if not H.is_subgroup:
        H = as_subgroup(G, H)
    if not is_normal(G, H):
        raise NotNormal(f"subgroup of order {H.order} is not normal in {G.label}")
    return H


def centralizer(G: FiniteGroup, S, within: Subset | None = None) -> Subset:
    """Elements (of ``within``, default ``G``) commuting with every element of ``S``."""
    ids = _ids(G, S)
    mask = np.ones(G.order, dtype=bool) if within is None else within.mask.copy()
    X = G.elements
    for s in ids:
        mask &= G.mul_ids(X, s) == G.mul_ids(s, X)
    return Subset.from_mask(G, mask, is_subgroup=True)


def center(G: FiniteGroup, H: Subset | None = None) -> Subset:
    if H is None:
        return centralizer(G, G.generators)
    return centralizer(G, subgroup_generators(H), within=H)


def normalizer(G: FiniteGroup, H: Subset, within: Subset | None = None) -> Subset:
    hg = np.array(subgroup_generators(H) if H.is_subgroup else sorted(H.members), dtype=np.int64)
    mask = np.ones(G.order, dtype=bool) if within is None else within.mask.copy()
    X = G.elements
    for h in hg:
        mask &= H.mask[G.conj_ids(h, X)]
    return Subset.from_mask(G, mask, is_subgroup=True)


def conjugacy_class(G: FiniteGroup, g: int) -> Subset:
    G.check(g)
    cls = np.unique(G.conj_ids(g, G.elements))
    return Subset.from_mask(G, _mask_of(G, cls))


def conjugacy_classes(G: FiniteGroup) -> list[Subset]:
    """Classes ordered by least member; the first is ``{identity}``."""
    cached = G._cache.get("classes")
    if cached is not None:
        return cached
    label = np.full(G.order, -1, dtype=np.int64)
    classes = []
    for g in range(G.order):
        if label[g] >= 0:
            continue
        cls = np.unique(G.conj_ids(g, G.elements))
        label[cls] = len(classes)
        classes.append(Subset.from_mask(G, _mask_of(G, cls)))
    G._cache["classes"] = classes
    G._cache["class_label"] = label
    return classes


def class_labels(G: FiniteGroup) -> np.ndarray:
    conjugacy_classes(G)
    return G._cache["class_label"]


def class_representatives(G: FiniteGroup) -> list[int]:
    return [min(c.members) for c in conjugacy_classes(G)]


def commutator_subgroup(G: FiniteGroup, A: Subset, B: Subset) -> Subset:
    """``[A, B]`` for subgroups normalised by each other (e.g. both normal in G)."""
    ag = np.array(subgroup_generators(A), dtype=np.int64)
    bg = np.array(subgroup_generators(B), dtype=np.int64)
    if ag.size == 0 or bg.size == 0:
        return trivial_subgroup(G)
    comms = np.unique(G.comm_ids(ag[:, None], bg[None, :]).ravel())
    if A == B:
        join_ab = Subset(G, A.members, True, tuple(ag.tolist()))
    else:
        join_ab = closure(G, sorted(set(ag.tolist()) | set(bg.tolist())))
    return normal_closure(G, comms.tolist(), within=join_ab)


def derived_subgroup(G: FiniteGroup, H: Subset | None = None) -> Subset:
    H = whole_group(G) if H is None else H
    return commutator_subgroup(G, H, H)


def intersection(G: FiniteGroup, A: Subset, B: Subset) -> Subset:
    return Subset.from_mask(G, A.mask & B.mask, is_subgroup=A.is_subgroup and B.is_subgroup)


def product_set(G: FiniteGroup, A: Subset, B: Subset) -> Subset:
    """``AB = {ab}`` as a subset."""
    prods = G.mul_ids(A.array[:, None], B.array[None, :]).ravel()
    return Subset.from_mask(G, _mask_of(G, prods))


def product_order(A: Subset, B: Subset) -> int:
    """``|AB| = |A||B| / |A n B|`` for subgroups."""
    return A.order * B.order // len(A.members & B.members)


def index(G: FiniteGroup, H: Subset) -> int:
    return G.order // H.order


def coset_labels(G: FiniteGroup, N: Subset) -> tuple[np.ndarray, list[int]]:
    """Label left cosets ``gN`` in order of their least element."""
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    narr = N.array
    for g in range(G.order):
        if label[g] >= 0:
            continue
        label[G.mul_ids(g, narr)] = len(reps)
        reps.append(g)
    return label, reps


def check_members(G: FiniteGroup, elems) -> None:
    for x in elems:
        if not 0 <= int(x) < G.order:
            raise MembershipError(f"{x} not in {G.label}")


def classes_within(G: FiniteGroup, H: Subset) -> list[Subset]:
    """``H``-conjugacy classes of the elements of ``H``, ordered by least member."""
    arr = H.array
    seen = np.zeros(G.order, dtype=bool)
    out = []
    for x in arr:
        if seen[x]:
            continue
        cls = np.unique(G.conj_ids(int(x), arr))
        seen[cls] = True
        out.append(Subset.from_mask(G, _mask_of(G, cls)))
    return out
