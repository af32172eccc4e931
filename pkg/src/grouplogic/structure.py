"""Semantic structure analysis: series, radicals, lattices, decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import CAPS
from .errors import NoCyclicSylow, TooLarge
from .kernel.group import FiniteGroup, Subset
from .kernel.subgroups import (
    center,
    class_representatives,
    closure,
    commutator_subgroup,
    element_orders,
    join,
    normal_closure,
    require_normal,
    subgroup_generators,
    trivial_subgroup,
    whole_group,
)


@dataclass
class SeriesReport:
    kind: str
    terms: list
    terminated: bool  # the series reached the trivial subgroup

    @property
    def orders(self) -> list[int]:
        return [t.order for t in self.terms]


@dataclass
class DecompositionReport:
    is_semisimple: bool
    factors: list = field(default_factory=list)
    witness: str = ""


def _whole(G: FiniteGroup, H: Subset | None) -> Subset:
    return whole_group(G) if H is None else H


def derived_series(G: FiniteGroup, H: Subset | None = None) -> SeriesReport:
    terms = [_whole(G, H)]
    while True:
        nxt = commutator_subgroup(G, terms[-1], terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return SeriesReport("derived", terms, terms[-1].order == 1)


def lower_central_series(G: FiniteGroup, H: Subset | None = None) -> SeriesReport:
    top = _whole(G, H)
    terms = [top]
    while True:
        nxt = commutator_subgroup(G, terms[-1], top)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return SeriesReport("lower_central", terms, terms[-1].order == 1)


def is_soluble(G: FiniteGroup, H: Subset | None = None) -> bool:
    return derived_series(G, H).terminated


def is_nilpotent(G: FiniteGroup, H: Subset | None = None) -> bool:
    return lower_central_series(G, H).terminated


def nilpotency_class(G: FiniteGroup, H: Subset | None = None) -> int | None:
    rep = lower_central_series(G, H)
    return len(rep.terms) - 1 if rep.terminated else None


def is_perfect(G: FiniteGroup, H: Subset | None = None) -> bool:
    top = _whole(G, H)
    return commutator_subgroup(G, top, top) == top


def _rep_closures(G: FiniteGroup) -> list[tuple[int, Subset]]:
    cached = G._cache.get("rep_closures")
    if cached is None:
        cached = [(r, normal_closure(G, [r])) for r in class_representatives(G)]
        G._cache["rep_closures"] = cached
    return cached


def _generated_by_good(G: FiniteGroup, good) -> Subset:
    gens = [r for r, N in _rep_closures(G) if r != 0 and good(N)]
    if not gens:
        return trivial_subgroup(G)
    return normal_closure(G, gens)


def soluble_radical(G: FiniteGroup) -> Subset:
    """Join of the soluble normal closures of single elements."""
    cached = G._cache.get("radical")
    if cached is None:
        cached = _generated_by_good(G, lambda N: is_soluble(G, N))
        G._cache["radical"] = cached
    return cached


def fitting(G: FiniteGroup) -> Subset:
    """Join of the nilpotent normal closures of single elements."""
    cached = G._cache.get("fitting")
    if cached is None:
        cached = _generated_by_good(G, lambda N: is_nilpotent(G, N))
        G._cache["fitting"] = cached
    return cached


def is_simple(G: FiniteGroup, H: Subset | None = None) -> bool:
    """No proper nontrivial normal subgroup (of ``H``, default ``G``)."""
    top = _whole(G, H)
    if top.order == 1:
        return False
    if H is None:
        return all(N == top for r, N in _rep_closures(G) if r != 0)
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    arr = top.array
    for x in arr:
        if seen[x]:
            continue
        if normal_closure(G, [int(x)], within=top) != top:
            return False
        seen[G.conj_ids(int(x), arr)] = True
    return True


# ------------------------------------------------------------------- lattice


@dataclass
class Lattice:
    subgroups: list  # sorted by (order, member list)
    joins: dict  # subgroup -> list of (coset rep g, <H, g>)


def _lattice(G: FiniteGroup, cap: int | None = None) -> Lattice:
    cap = CAPS.lattice if cap is None else cap
    if G.order > cap:
        raise TooLarge(f"{G.label} has order {G.order}, above the lattice cap {cap}")
    cached = G._cache.get("lattice")
    if cached is not None:
        return cached
    triv = trivial_subgroup(G)
    known = {triv.members: triv}
    joins: dict = {}
    queue = [triv]
    i = 0
    while i < len(queue):
        H = queue[i]
        i += 1
        done = H.mask.copy()
        out = []
        for g in range(G.order):
            if done[g]:
                continue
            done[G.mul_ids(H.array, g)] = True  # the right coset Hg
            K = join(G, H, [g])
            if K.members in known:
                K = known[K.members]
            else:
                known[K.members] = K
                queue.append(K)
            out.append((g, K))
        joins[H] = out
    subs = sorted(known.values(), key=lambda S: (S.order, S.sorted_key()))
    lat = Lattice(subs, joins)
    G._cache["lattice"] = lat
    return lat


def subgroup_lattice(G: FiniteGroup, cap: int | None = None) -> list:
    """All subgroups, ordered by (order, sorted member list)."""
    return list(_lattice(G, cap).subgroups)


def maximal_subgroups(G: FiniteGroup, cap: int | None = None) -> list:
    lat = _lattice(G, cap)
    return [H for H in lat.subgroups if H.order < G.order and all(K.order == G.order for _, K in lat.joins[H])]


def frattini(G: FiniteGroup, cap: int | None = None) -> Subset:
    maxes = maximal_subgroups(G, cap)
    if not maxes:
        return whole_group(G)
    mask = np.ones(G.order, dtype=bool)
    for M in maxes:
        mask &= M.mask
    return Subset.from_mask(G, mask, is_subgroup=True)


def non_generators(G: FiniteGroup, cap: int | None = None) -> Subset:
    """``{g : <H, g> = G implies H = G for every subgroup H}``."""
    lat = _lattice(G, cap)
    mask = np.ones(G.order, dtype=bool)
    for H in lat.subgroups:
        if H.order == G.order:
            continue
        for g, K in lat.joins[H]:
            if K.order == G.order:
                mask[G.mul_ids(H.array, g)] = False
    return Subset.from_mask(G, mask, is_subgroup=True)


# ------------------------------------------------------------- normal pieces


def minimal_normal_subgroups(G: FiniteGroup) -> list:
    closures = {}
    for r, N in _rep_closures(G):
        if r != 0:
            closures.setdefault(N.members, N)
    cands = sorted(closures.values(), key=lambda S: (S.order, S.sorted_key()))
    return [N for N in cands if not any(M < N for M in cands)]


def decompose_semisimple(G: FiniteGroup) -> DecompositionReport:
    if G.order == 1:
        return DecompositionReport(True, [], "empty product")
    mins = minimal_normal_subgroups(G)
    for N in mins:
        if commutator_subgroup(G, N, N).order == 1:
            return DecompositionReport(False, [], f"abelian minimal normal subgroup of order {N.order}")
        if not is_simple(G, N):
            return DecompositionReport(False, [], f"minimal normal subgroup of order {N.order} is not simple")
    prod = 1
    for N in mins:
        prod *= N.order
    if prod != G.order:
        return DecompositionReport(False, [], f"product of minimal normal subgroups has order {prod} < {G.order}")
    return DecompositionReport(True, mins, "")


def is_subnormal(G: FiniteGroup, H: Subset) -> bool:
    """Descend through successive normal closures of ``H``."""
    K = whole_group(G)
    gens = subgroup_generators(H)
    while True:
        nxt = normal_closure(G, gens, within=K)
        if nxt == K:
            return K == H
        K = nxt


def is_quasisimple(G: FiniteGroup, H: Subset) -> bool:
    """Perfect with ``H/Z(H)`` simple."""
    if H.order == 1 or not is_perfect(G, H):
        return False
    Z = center(G, H)
    if Z.order == H.order:
        return False
    for x in H.array:
        if Z.mask[x]:
            continue
        if normal_closure(G, list(subgroup_generators(Z)) + [int(x)], within=H) != H:
            return False
    return True


def check_condition_a(G: FiniteGroup, cap: int | None = None) -> bool:
    """Every quasisimple subnormal subgroup is normal."""
    return condition_a_witness(G, cap) is None


def condition_a_witness(G: FiniteGroup, cap: int | None = None):
    from .kernel.subgroups import is_normal

    for H in subgroup_lattice(G, cap):
        if H.order in (1, G.order):
            continue
        if is_quasisimple(G, H) and is_subnormal(G, H) and not is_normal(G, H):
            return H
    return None


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            if d not in out:
                out.append(d)
            n //= d
        d += 1
    if n > 1 and n not in out:
        out.append(n)
    return out


prime_factors = _prime_factors


def cyclic_sylow_prime(G: FiniteGroup, S: Subset | None = None) -> tuple[int, int]:
    """Least prime ``p`` with cyclic Sylow ``p``-subgroup in ``S`` and the least-id generator."""
    S = _whole(G, S)
    orders = element_orders(G)
    arr = S.array
    for p in _prime_factors(S.order):
        part = 1
        n = S.order
        while n % p == 0:
            part *= p
            n //= p
        hits = arr[orders[arr] == part]
        if hits.size:
            return p, int(hits[0])
    raise NoCyclicSylow(f"no cyclic Sylow subgroup in a subgroup of order {S.order}")


def has_proper_supplement(G: FiniteGroup, K: Subset, cap: int | None = None):
    """``(True, H)`` for the least proper ``H`` with ``HK = G``, else ``(False, None)``."""
    K = require_normal(G, K)
    for H in subgroup_lattice(G, cap):
        if H.order == G.order:
            continue
        if H.order * K.order // len(H.members & K.members) == G.order:
            return True, H
    return False, None


def standard_oracles(G: FiniteGroup, **extra) -> dict:
    """Default oracle table: ``rad`` and ``fit`` plus any named subsets."""
    out = {"rad": soluble_radical(G), "fit": fitting(G)}
    out.update(extra)
    return out


__all__ = [
    "SeriesReport",
    "DecompositionReport",
    "derived_series",
    "lower_central_series",
    "is_soluble",
    "is_nilpotent",
    "is_perfect",
    "nilpotency_class",
    "soluble_radical",
    "fitting",
    "is_simple",
    "subgroup_lattice",
    "maximal_subgroups",
    "frattini",
    "non_generators",
    "minimal_normal_subgroups",
    "decompose_semisimple",
    "is_subnormal",
    "is_quasisimple",
    "check_condition_a",
    "cyclic_sylow_prime",
    "has_proper_supplement",
    "standard_oracles",
    "closure",
]
