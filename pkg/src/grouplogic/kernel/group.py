"""Finite groups with canonical integer element ids.

Elements are plain ``int`` ids in ``range(order)``; id 0 is the identity.
Two backends share one class:

* ``table``: a materialised Cayley table (``order <= caps.table``).
* ``structural``: elements are rows of an integer coordinate array and the
  product is computed on the fly by a vectorised coordinate operation.

Structural groups are enumerated breadth-first from the identity over the
generator list, so ids are reproducible.  Small structural groups also get a
table (built column by column from the BFS tree), which only speeds things up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from ..config import CAPS
from ..errors import MembershipError, NotAGroup, TooLarge

CoordMul = Callable[[np.ndarray, np.ndarray], np.ndarray]
CoordInv = Callable[[np.ndarray], np.ndarray]

_PYTABLE_MAX = 1500
# coordinate code spaces up to this size get a direct code -> id array
DENSE_CODE_SPACE = 1 << 24


class FiniteGroup:
    """A finite group on ``range(order)`` with identity 0."""

    def __init__(
        self,
        order: int,
        *,
        label: str,
        generators: Sequence[int],
        table: np.ndarray | None = None,
        inverse: np.ndarray | None = None,
        coords: np.ndarray | None = None,
        radices: Sequence[int] | None = None,
        cmul: CoordMul | None = None,
        cinv: CoordInv | None = None,
        describe: Callable[[np.ndarray], str] | None = None,
        bfs_tree: tuple[np.ndarray, np.ndarray] | None = None,
    ):
        self.order = int(order)
        self.label = label
        self.generators = tuple(int(g) for g in generators)
        self.table = table
        self.coords = coords
        self.radices = tuple(int(r) for r in radices) if radices is not None else None
        self._cmul = cmul
        self._cinv = cinv
        self._describe = describe
        self._bfs_tree = bfs_tree
        self._cache: dict = {}
        if coords is not None:
            self._mult = _radix_multipliers(self.radices)
            codes = coords @ self._mult
            self._sort = np.argsort(codes, kind="stable")
            self._sorted_codes = codes[self._sort]
            space = int(np.prod(np.asarray(self.radices, dtype=object)))
            self._dense = None
            if space <= DENSE_CODE_SPACE:
                self._dense = np.full(space, -1, dtype=np.int64)
                self._dense[codes] = np.arange(self.order, dtype=np.int64)
        if inverse is None:
            inverse = self._compute_inverse()
        self.inverse = inverse
        self._rows = table.tolist() if table is not None and self.order <= _PYTABLE_MAX else None
        self._inv_list = inverse.tolist()

    # ------------------------------------------------------------------ basics
    @property
    def backend(self) -> str:
        return "table" if self.table is not None else "structural"

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.label!r} order={self.order} backend={self.backend}>"

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def check(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise MembershipError(f"{x} is not an element id of {self.label} (order {self.order})")
        return x

    def describe(self, x: int) -> str:
        if self._describe is not None and self.coords is not None:
            return self._describe(self.coords[x])
        return f"#{x}"

    # ------------------------------------------------------------- arithmetic
    def mul(self, a: int, b: int) -> int:
        if self._rows is not None:
            return self._rows[a][b]
        if self.table is not None:
            return int(self.table[a, b])
        return int(self.mul_ids(np.asarray(a), np.asarray(b)))

    def inv(self, a: int) -> int:
        return self._inv_list[a]

    def mul_ids(self, a, b) -> np.ndarray:
        """Vectorised product of broadcastable id arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.table is not None:
            return self.table[a, b]
        a, b = np.broadcast_arrays(a, b)
        shape = a.shape
        prod = self._cmul(self.coords[a.ravel()], self.coords[b.ravel()])
        return self.ids_of(prod).reshape(shape)

    def inv_ids(self, a) -> np.ndarray:
        return self.inverse[np.asarray(a, dtype=np.int64)]

    def conj_ids(self, x, y) -> np.ndarray:
        """``y^-1 x y`` elementwise."""
        return self.mul_ids(self.mul_ids(self.inv_ids(y), x), y)

    def comm_ids(self, x, y) -> np.ndarray:
        """``x^-1 y^-1 x y`` elementwise."""
        return self.mul_ids(self.mul_ids(self.inv_ids(x), self.inv_ids(y)), self.mul_ids(x, y))

    def power(self, x: int, n: int) -> int:
        if n < 0:
            x, n = self.inv(x), -n
        result, base = 0, x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def power_ids(self, x, n: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if n < 0:
            x, n = self.inv_ids(x), -n
        result = np.zeros_like(x)
        base = x
        while n:
            if n & 1:
                result = self.mul_ids(result, base)
            base = self.mul_ids(base, base)
            n >>= 1
        return result

    def ids_of(self, coords: np.ndarray) -> np.ndarray:
        """Map coordinate rows to element ids."""
        codes = np.asarray(coords, dtype=np.int64) @ self._mult
        if self._dense is not None:
            ids = self._dense[codes]
            if ids.size and ids.min() < 0:
                raise MembershipError("coordinates do not describe elements of this group")
            return ids
        pos = np.searchsorted(self._sorted_codes, codes)
        pos = np.minimum(pos, self.order - 1)
        if not np.all(self._sorted_codes[pos] == codes):
            raise MembershipError("coordinates do not describe elements of this group")
        return self._sort[pos]

    def id_of(self, coords) -> int:
        return int(self.ids_of(np.asarray(coords, dtype=np.int64)[None, :])[0])

    # ------------------------------------------------------------ structure
    def bfs_tree(self) -> tuple[np.ndarray, np.ndarray]:
        """``(parent, gen_index)``: element ``x = parent[x] * generators[gen_index[x]]``."""
        if self._bfs_tree is None:
            self._bfs_tree = _bfs_tree_from_ids(self)
        return self._bfs_tree

    def is_abelian(self) -> bool:
        gens = np.array(self.generators, dtype=np.int64)
        if gens.size == 0:
            return True
        return bool(np.all(self.mul_ids(gens[:, None], gens[None, :]) == self.mul_ids(gens[None, :], gens[:, None])))

    def right_mult(self, g: int) -> np.ndarray:
        return self.mul_ids(self.elements, g)

    def _compute_inverse(self) -> np.ndarray:
        if self.table is not None:
            rows, cols = np.nonzero(self.table == 0)
            inv = np.empty(self.order, dtype=np.int64)
            inv[rows] = cols
            return inv
        return self.ids_of(self._cinv(self.coords))


# ---------------------------------------------------------------------------
def _radix_multipliers(radices: Sequence[int]) -> np.ndarray:
    mult = []
    acc = 1
    for r in reversed(radices):
        mult.append(acc)
        acc *= int(r)
        if acc >= 2**62:
            raise TooLarge("coordinate space does not fit a 64-bit code")
    return np.array(list(reversed(mult)), dtype=np.int64)


def _bfs_tree_from_ids(G: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    parent = np.full(G.order, -1, dtype=np.int64)
    via = np.full(G.order, -1, dtype=np.int64)
    parent[0] = 0
    frontier = np.array([0], dtype=np.int64)
    gens = np.array(G.generators, dtype=np.int64)
    while frontier.size:
        prods = G.mul_ids(frontier[:, None], gens[None, :])
        flat = prods.ravel()
        src = np.repeat(frontier, gens.size)
        gi = np.tile(np.arange(gens.size), frontier.size)
        fresh = parent[flat] < 0
        flat, src, gi = flat[fresh], src[fresh], gi[fresh]
        uniq, first = np.unique(flat, return_index=True)
        order = np.sort(first)
        new = flat[order]
        parent[new] = src[order]
        via[new] = gi[order]
        frontier = new
    if np.any(parent < 0):
        raise NotAGroup(f"generators of {G.label} do not generate the whole carrier")
    return parent, via


def enumerate_bfs(
    identity: np.ndarray,
    gens: np.ndarray,
    cmul: CoordMul,
    radices: Sequence[int],
    cap: int,
    label: str = "group",
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Breadth-first closure of ``gens`` from ``identity`` in coordinate space.

    Returns ``(coords, parent, via)`` with rows in BFS order; ties are broken
    by the position of the frontier element, then by generator order.
    """
    mult = _radix_multipliers(radices)
    identity = np.asarray(identity, dtype=np.int64).reshape(1, -1)
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, identity.shape[1])
    chunks = [identity]
    parents = [np.zeros(1, dtype=np.int64)]
    vias = [np.full(1, -1, dtype=np.int64)]
    space = int(np.prod([int(r) for r in radices], dtype=object))
    # a flat mask when the code space is small, otherwise a sorted code list
    seen_mask = np.zeros(space, dtype=bool) if space <= DENSE_CODE_SPACE else None
    seen_codes = np.array([identity[0] @ mult], dtype=np.int64)
    if seen_mask is not None:
        seen_mask[seen_codes] = True
    frontier = identity
    frontier_ids = np.zeros(1, dtype=np.int64)
    total = 1
    ng = gens.shape[0]
    while frontier.shape[0] and ng:
        left = np.repeat(frontier, ng, axis=0)
        right = np.tile(gens, (frontier.shape[0], 1))
        prods = cmul(left, right)
        codes = prods @ mult
        src = np.repeat(frontier_ids, ng)
        gi = np.tile(np.arange(ng), frontier.shape[0])
        if seen_mask is not None:
            fresh = ~seen_mask[codes]
        else:
            pos = np.minimum(np.searchsorted(seen_codes, codes), seen_codes.size - 1)
            fresh = seen_codes[pos] != codes
        codes, prods, src, gi = codes[fresh], prods[fresh], src[fresh], gi[fresh]
        _, first = np.unique(codes, return_index=True)
        first = np.sort(first)
        new = prods[first]
        if total + new.shape[0] > cap:
            raise TooLarge(f"{label}: enumeration exceeds the element cap {cap}")
        new_ids = np.arange(total, total + new.shape[0], dtype=np.int64)
        chunks.append(new)
        parents.append(src[first])
        vias.append(gi[first])
        if seen_mask is not None:
            seen_mask[codes[first]] = True
        else:
            seen_codes = np.union1d(seen_codes, codes[first])
        total += new.shape[0]
        frontier, frontier_ids = new, new_ids
    return np.concatenate(chunks), np.concatenate(parents), np.concatenate(vias)


def structural_group(
    identity,
    gens,
    cmul: CoordMul,
    cinv: CoordInv,
    radices: Sequence[int],
    *,
    label: str,
    describe: Callable[[np.ndarray], str] | None = None,
    element_cap: int | None = None,
    table_cap: int | None = None,
    enumeration=None,
) -> FiniteGroup:
    """Enumerate a group given by coordinate arithmetic and wrap it.

    ``enumeration`` may supply ``(coords, parent, via)`` when the
    breadth-first order is known in closed form; it must match what
    ``enumerate_bfs`` would return.
    """
    element_cap = CAPS.elements if element_cap is None else element_cap
    table_cap = CAPS.table if table_cap is None else table_cap
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, len(radices))
    if enumeration is None:
        coords, parent, via = enumerate_bfs(identity, gens, cmul, radices, element_cap, label)
    else:
        coords, parent, via = enumeration
        if coords.shape[0] > element_cap:
            raise TooLarge(f"{label}: enumeration exceeds the element cap {element_cap}")
    n = coords.shape[0]
    G = FiniteGroup(
        n,
        label=label,
        generators=[],
        coords=coords,
        radices=radices,
        cmul=cmul,
        cinv=cinv,
        describe=describe,
    )
    gen_ids = [int(x) for x in G.ids_of(gens)] if gens.shape[0] else []
    G.generators = tuple(gen_ids)
    G._bfs_tree = (parent, via)
    if n <= table_cap:
        G.table = _table_from_tree(G, parent, via, gen_ids)
        G._rows = G.table.tolist() if n <= _PYTABLE_MAX else None
    return G


def _table_from_tree(G: FiniteGroup, parent, via, gen_ids) -> np.ndarray:
    n = G.order
    dtype = np.int32
    table = np.empty((n, n), dtype=dtype)
    table[:, 0] = np.arange(n)
    right = [G.mul_ids(G.elements, g).astype(dtype) for g in gen_ids]
    for b in range(1, n):
        table[:, b] = right[via[b]][table[:, parent[b]]]
    return table


def from_table(table, label: str = "table group") -> FiniteGroup:
    """Build a table-backed group, verifying all group axioms exhaustively."""
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise NotAGroup("table is not square")
    n = t.shape[0]
    if n == 0:
        raise NotAGroup("empty table")
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup("table entries out of range")
    t = t.astype(np.int32)
    ar = np.arange(n)
    if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
        bad = int(np.nonzero((t[0] != ar) | (t[:, 0] != ar))[0][0])
        raise NotAGroup(f"id 0 is not a two-sided identity (fails at element {bad})")
    for a in range(n):
        if not np.any(t[a] == 0):
            raise NotAGroup(f"element {a} has no inverse")
        if len(np.unique(t[a])) != n:
            raise NotAGroup(f"row {a} is not a permutation (no inverse / cancellation fails)")
    for a in range(n):
        lhs = t[t[a][:, None], ar[None, :]]  # (a*b)*c
        rhs = t[a][t]  # a*(b*c)
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            raise NotAGroup(f"associativity fails for ({a}, {int(b)}, {int(c)})")
    G = FiniteGroup(n, label=label, generators=[], table=t)
    G.generators = tuple(greedy_generators(G))
    return G


def greedy_generators(G: FiniteGroup) -> list[int]:
    """Least-id greedy generating set."""
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    for g in range(G.order):
        if not mask[g]:
            gens.append(g)
            mask = _closure_mask(G, gens)
    return gens


def _closure_mask(G: FiniteGroup, gens: Iterable[int], start: np.ndarray | None = None) -> np.ndarray:
    gens = np.array(sorted(set(int(g) for g in gens)), dtype=np.int64)
    if start is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0], dtype=np.int64)
    else:
        mask = start.copy()
        frontier = np.nonzero(mask)[0]
    if gens.size == 0:
        return mask
    while frontier.size:
        prods = G.mul_ids(frontier[:, None], gens[None, :]).ravel()
        new = np.unique(prods[~mask[prods]])
        mask[new] = True
        frontier = new
    return mask


@dataclass(frozen=True, eq=False)
class Subset:
    """A set of element ids of ``parent``; ``is_subgroup`` only after verification."""

    parent: FiniteGroup
    members: frozenset
    is_subgroup: bool = False
    gens: tuple = field(default=())

    def __post_init__(self):
        if self.members and (min(self.members) < 0 or max(self.members) >= self.parent.order):
            raise MembershipError("subset members outside the parent carrier")

    @classmethod
    def from_mask(cls, parent: FiniteGroup, mask: np.ndarray, *, is_subgroup=False, gens=()) -> "Subset":
        return cls(parent, frozenset(int(x) for x in np.nonzero(mask)[0]), is_subgroup, tuple(gens))

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        if self.members:
            m[np.fromiter(self.members, dtype=np.int64)] = True
        return m

    @cached_property
    def array(self) -> np.ndarray:
        return np.nonzero(self.mask)[0]

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __eq__(self, other) -> bool:
        if isinstance(other, Subset):
            return self.parent is other.parent and self.members == other.members
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __le__(self, other: "Subset") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Subset") -> bool:
        return self.members < other.members

    def sorted_key(self) -> tuple:
        return tuple(sorted(self.members))

    def __repr__(self) -> str:
        kind = "Subgroup" if self.is_subgroup else "Subset"
        return f"<{kind} of {self.parent.label} order={len(self.members)}>"


@dataclass(frozen=True, eq=False)
class GroupMap:
    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray

    def __call__(self, x):
        return self.images[x]

    def image_of(self, S: Subset) -> Subset:
        return Subset.from_mask(self.target, _mask_of(self.target, self.images[S.array]), is_subgroup=S.is_subgroup)

    def preimage(self, S: Subset) -> Subset:
        return Subset.from_mask(self.source, S.mask[self.images], is_subgroup=S.is_subgroup)

    def kernel(self) -> Subset:
        return Subset.from_mask(self.source, self.images == 0, is_subgroup=True)


def _mask_of(G: FiniteGroup, ids) -> np.ndarray:
    m = np.zeros(G.order, dtype=bool)
    m[np.asarray(ids, dtype=np.int64)] = True
    return m
