"""Group constructors: permutations, cyclic, dihedral, products, quotients, wreaths."""

from __future__ import annotations

import re
from typing import Mapping, Sequence

import numpy as np

from ..config import CAPS
from ..errors import (
    ActionNotHomomorphic,
    GroupSpecError,
    NotAbelian,
    NotHomomorphism,
    TooLarge,
)
from .group import FiniteGroup, GroupMap, Subset, from_table, structural_group
from .subgroups import coset_labels, require_normal

# ------------------------------------------------------------------ permutations


def parse_cycles(text: str, degree: int) -> list[int]:
    """Parse ``"(1 2 3)(4 5)"`` into a 0-based image list of length ``degree``."""
    perm = list(range(degree))
    text = text.strip()
    if text in ("", "()"):
        return perm
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", text):
        raise GroupSpecError(f"malformed cycle notation: {text!r}")
    # cycles in a product are applied left to right
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) - 1 for x in re.split(r"[\s,]+", cyc.strip())]
        if any(not 0 <= p < degree for p in pts):
            raise GroupSpecError(f"point out of range in {text!r} (degree {degree})")
        if len(set(pts)) != len(pts):
            raise GroupSpecError(f"repeated point in cycle ({cyc})")
        step = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            step[a] = b
        perm = [step[perm[i]] for i in range(degree)]
    return perm


def format_cycles(images: Sequence[int]) -> str:
    seen = set()
    parts = []
    for i in range(len(images)):
        if i in seen or images[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = images[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = images[j]
        parts.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) or "()"


def _perm_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # first a, then b: i -> b[a[i]]
    return np.take_along_axis(b, a, axis=1)


def _perm_inv(a: np.ndarray) -> np.ndarray:
    return np.argsort(a, axis=1)


def from_permutations(degree: int, gens, label: str | None = None, *, element_cap: int | None = None) -> FiniteGroup:
    """Permutation group on ``{1..degree}`` generated by ``gens``.

    Generators may be cycle strings or 0-based image lists.  The product
    ``xy`` means "apply x, then y".
    """
    rows = []
    for g in gens:
        if isinstance(g, str):
            rows.append(parse_cycles(g, degree))
        else:
            g = [int(v) for v in g]
            if sorted(g) != list(range(degree)):
                raise GroupSpecError(f"{g} is not a permutation of degree {degree}")
            rows.append(g)
    gen_arr = np.array(rows, dtype=np.int64).reshape(-1, degree)
    if label is None:
        label = f"perm {degree}: " + ", ".join(format_cycles(r) for r in rows)
    G = structural_group(
        np.arange(degree),
        gen_arr,
        _perm_mul,
        _perm_inv,
        [degree] * degree,
        label=label,
        describe=lambda c: format_cycles(c.tolist()),
        element_cap=element_cap,
    )
    G._cache["perm_degree"] = degree
    return G


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return from_permutations(max(n, 1), [], label=f"S{n}")
    gens = ["(1 2)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"]
    return from_permutations(n, gens, label=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n <= 2:
        return from_permutations(max(n, 1), [], label=f"A{n}")
    gens = [f"(1 2 {i})" for i in range(3, n + 1)]
    return from_permutations(n, gens, label=f"A{n}")


# ---------------------------------------------------------------------- cyclic


def cyclic(n: int, label: str | None = None) -> FiniteGroup:
    """``C_n``; element id ``k`` is the ``k``-th power of the generator."""
    if n < 1:
        raise GroupSpecError("cyclic group order must be positive")

    def cmul(a, b):
        return (a + b) % n

    def cinv(a):
        return (-a) % n

    gens = [[1]] if n > 1 else []
    # one generator means n breadth-first levels, so lay the order out directly
    ks = np.arange(n, dtype=np.int64)
    parent = np.maximum(ks - 1, 0)
    via = np.where(ks == 0, -1, 0)
    return structural_group([0], gens, cmul, cinv, [n], label=label or f"C{n}",
                            describe=lambda c: f"g^{int(c[0])}", enumeration=(ks[:, None], parent, via))


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    """``C_p^k`` with coordinates the vectors over ``F_p``."""

    def cmul(a, b):
        return (a + b) % p

    def cinv(a):
        return (-a) % p

    gens = np.eye(k, dtype=np.int64)
    return structural_group(np.zeros(k, dtype=np.int64), gens, cmul, cinv, [p] * k,
                            label=f"C{p}^{k}", describe=lambda c: str(tuple(int(v) for v in c)))


# ------------------------------------------------------------------- products


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str | None = None) -> FiniteGroup:
    def cmul(a, b):
        return np.stack([G.mul_ids(a[:, 0], b[:, 0]), H.mul_ids(a[:, 1], b[:, 1])], axis=1)

    def cinv(a):
        return np.stack([G.inv_ids(a[:, 0]), H.inv_ids(a[:, 1])], axis=1)

    gens = [[g, 0] for g in G.generators] + [[0, h] for h in H.generators]
    return structural_group(
        [0, 0],
        np.array(gens, dtype=np.int64).reshape(-1, 2),
        cmul,
        cinv,
        [G.order, H.order],
        label=label or f"({G.label} x {H.label})",
        describe=lambda c: f"({G.describe(int(c[0]))}, {H.describe(int(c[1]))})",
    )


def direct_power(A: FiniteGroup, q: int, label: str | None = None) -> FiniteGroup:
    """``A^q`` with coordinates the ``q`` component ids."""
    if q < 1:
        raise GroupSpecError("power must be positive")

    def cmul(a, b):
        return A.mul_ids(a, b)

    def cinv(a):
        return A.inv_ids(a)

    gens = []
    for i in range(q):
        for g in A.generators:
            row = [0] * q
            row[i] = g
            gens.append(row)
    return structural_group(
        np.zeros(q, dtype=np.int64),
        np.array(gens, dtype=np.int64).reshape(-1, q),
        cmul,
        cinv,
        [A.order] * q,
        label=label or f"{A.label}^{q}",
        describe=lambda c: "(" + ", ".join(A.describe(int(v)) for v in c) + ")",
    )


def action_table(N: FiniteGroup, H: FiniteGroup, action: Mapping[int, Sequence[int]]) -> np.ndarray:
    """Extend generator automorphisms to ``act[h] : N -> N`` for every ``h``.

    Raises ``ActionNotHomomorphic`` unless each generator image is an
    automorphism of ``N`` and ``h -> act[h]`` is a homomorphism.
    """
    gen_act = {}
    for h in H.generators:
        if h not in action:
            raise ActionNotHomomorphic(f"no action given for generator {h}")
        img = np.asarray(action[h], dtype=np.int64)
        try:
            verify_automorphism(N, img)
        except NotHomomorphism as exc:
            raise ActionNotHomomorphic(f"generator {h} does not act by an automorphism: {exc}") from exc
        gen_act[h] = img
    act = np.full((H.order, N.order), -1, dtype=np.int64)
    act[0] = np.arange(N.order)
    parent, via = H.bfs_tree()
    order = np.argsort(_bfs_depth(parent), kind="stable")
    for x in order[1:]:
        g = H.generators[via[x]]
        act[x] = act[parent[x]][gen_act[g]]
    for g in H.generators:
        moved = H.mul_ids(H.elements, g)
        if not np.array_equal(act[moved], act[:, gen_act[g]]):
            raise ActionNotHomomorphic("action does not respect the relations of the acting group")
    return act


def _bfs_depth(parent: np.ndarray) -> np.ndarray:
    depth = np.full(parent.shape[0], -1, dtype=np.int64)
    depth[0] = 0
    for x in range(parent.shape[0]):
        if depth[x] < 0:
            chain = []
            y = x
            while depth[y] < 0:
                chain.append(y)
                y = parent[y]
            d = depth[y]
            for z in reversed(chain):
                d += 1
                depth[z] = d
    return depth


def semidirect_product(
    N: FiniteGroup,
    H: FiniteGroup,
    action: Mapping[int, Sequence[int]],
    label: str | None = None,
) -> FiniteGroup:
    """``N x| H`` with ``(n1,h1)(n2,h2) = (n1 * act[h1](n2), h1 h2)``."""
    act = action_table(N, H, action)
    hinv = H.inverse

    def cmul(a, b):
        n = N.mul_ids(a[:, 0], act[a[:, 1], b[:, 0]])
        return np.stack([n, H.mul_ids(a[:, 1], b[:, 1])], axis=1)

    def cinv(a):
        hi = hinv[a[:, 1]]
        return np.stack([act[hi, N.inv_ids(a[:, 0])], hi], axis=1)

    gens = [[n, 0] for n in N.generators] + [[0, h] for h in H.generators]
    G = structural_group(
        [0, 0],
        np.array(gens, dtype=np.int64).reshape(-1, 2),
        cmul,
        cinv,
        [N.order, H.order],
        label=label or f"({N.label} x| {H.label})",
        describe=lambda c: f"({N.describe(int(c[0]))}; {H.describe(int(c[1]))})",
    )
    G._cache["semidirect_action"] = act
    return G


def dihedral_of_cyclic(A: FiniteGroup, label: str | None = None) -> FiniteGroup:
    """``Dih(A) = A x| C_2`` with the involution acting by inversion."""
    if not A.is_abelian():
        raise NotAbelian(f"{A.label} is not abelian")
    C2 = cyclic(2)
    action = {g: A.inverse for g in C2.generators}
    return semidirect_product(A, C2, action, label=label or f"Dih({A.label})")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``."""
    return dihedral_of_cyclic(cyclic(n), label=f"Dih(C{n})")


def wreath_cyclic(A: FiniteGroup, q: int, label: str | None = None, *, element_cap: int | None = None) -> FiniteGroup:
    """``A wr C_q``: base ``A^q``, the generator of ``C_q`` shifting coordinates."""
    if q < 1:
        raise GroupSpecError("q must be positive")
    cap = CAPS.elements if element_cap is None else element_cap
    if A.order**q * q > cap:
        raise TooLarge(f"|{A.label} wr C{q}| = {A.order ** q * q} exceeds the element cap {cap}")
    base = direct_power(A, q)
    Cq = cyclic(q)
    action = {}
    if q > 1:
        shifted = np.roll(base.coords, 1, axis=1)
        action[Cq.generators[0]] = base.ids_of(shifted)
    return semidirect_product(base, Cq, action, label=label or f"{A.label} wr C{q}")


# -------------------------------------------------------------------- quotient


def quotient(G: FiniteGroup, N: Subset, label: str | None = None, *, table_cap: int | None = None):
    """``(G/N, projection)``; cosets are numbered by their least element."""
    N = require_normal(G, N)
    if N.order == 1:
        return G, GroupMap(G, G, np.arange(G.order, dtype=np.int64))
    cap = CAPS.table if table_cap is None else table_cap
    m = G.order // N.order
    if m > cap:
        raise TooLarge(f"quotient of order {m} exceeds the table cap {cap}")
    lab, reps = coset_labels(G, N)
    reps_arr = np.array(reps, dtype=np.int64)
    table = np.empty((m, m), dtype=np.int32)
    for i, r in enumerate(reps):
        table[i] = lab[G.mul_ids(r, reps_arr)]
    Q = FiniteGroup(m, label=label or f"{G.label}/N{N.order}", generators=[], table=table)
    Q.generators = tuple(sorted({int(lab[g]) for g in G.generators} - {0}))
    return Q, GroupMap(G, Q, lab)


# ------------------------------------------------------------------- morphisms


def verify_homomorphism(G: FiniteGroup, H: FiniteGroup, images) -> GroupMap:
    """Check ``images(xg) = images(x) images(g)`` for all ``x`` and generators ``g``.

    This is exhaustive: every element is a word in the generators.
    """
    img = np.asarray(images, dtype=np.int64)
    if img.shape != (G.order,):
        raise NotHomomorphism("image array has the wrong length")
    if img.min() < 0 or img.max() >= H.order:
        raise NotHomomorphism("images outside the target group")
    X = G.elements
    for g in G.generators:
        lhs = img[G.mul_ids(X, g)]
        rhs = H.mul_ids(img, img[g])
        bad = np.nonzero(lhs != rhs)[0]
        if bad.size:
            x = int(bad[0])
            raise NotHomomorphism(f"images fail on the pair ({x}, {g})", witness=(x, int(g)))
    if img[0] != 0:
        raise NotHomomorphism("identity not mapped to identity", witness=(0, 0))
    return GroupMap(G, H, img)


def verify_automorphism(G: FiniteGroup, images) -> GroupMap:
    img = np.asarray(images, dtype=np.int64)
    if img.shape != (G.order,) or len(np.unique(img)) != G.order:
        raise NotHomomorphism("images do not form a bijection of the carrier")
    return verify_homomorphism(G, G, img)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, cap: int | None = None) -> GroupMap | None:
    """Brute-force generator-image search (tests only)."""
    cap = CAPS.isomorphism if cap is None else cap
    if G.order != H.order:
        return None
    if G.order > cap:
        raise TooLarge(f"isomorphism search is capped at order {cap}")
    from .subgroups import element_orders

    og, oh = element_orders(G), element_orders(H)
    if sorted(og.tolist()) != sorted(oh.tolist()):
        return None
    gens = list(G.generators)
    parent, via = G.bfs_tree()
    depth_order = np.argsort(_bfs_depth(parent), kind="stable")
    candidates = [np.nonzero(oh == og[g])[0] for g in gens]

    def extend(choice):
        img = np.full(G.order, -1, dtype=np.int64)
        img[0] = 0
        for x in depth_order[1:]:
            img[x] = H.mul(int(img[parent[x]]), int(choice[via[x]]))
        return img

    def search(i, choice):
        if i == len(gens):
            img = extend(choice)
            if len(np.unique(img)) != G.order:
                return None
            try:
                return verify_homomorphism(G, H, img)
            except NotHomomorphism:
                return None
        for c in candidates[i]:
            found = search(i + 1, choice + [int(c)])
            if found is not None:
                return found
        return None

    return search(0, [])


def is_isomorphic(G: FiniteGroup, H: FiniteGroup, cap: int | None = None) -> bool:
    return find_isomorphism(G, H, cap) is not None


def inner_automorphism(G: FiniteGroup, g: int) -> GroupMap:
    return GroupMap(G, G, G.conj_ids(G.elements, g))


__all__ = [
    "from_table",
    "from_permutations",
    "symmetric",
    "alternating",
    "cyclic",
    "elementary_abelian",
    "direct_product",
    "direct_power",
    "semidirect_product",
    "dihedral_of_cyclic",
    "dihedral",
    "wreath_cyclic",
    "quotient",
    "verify_homomorphism",
    "verify_automorphism",
    "find_isomorphism",
    "is_isomorphic",
    "inner_automorphism",
]
