"""The class-2 groups E_n, G_n = E_n / Y_n and the perfect groups H_n = G_n x| B.

Coordinates: ``V_n`` is ``F_q^(2n)`` (copy ``k`` of the natural module uses
basis vectors ``2k, 2k+1``) and ``W_n`` has the basis ``e_i ^ e_j`` for
``i < j`` in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ..config import CAPS
from ..errors import BadCharacteristic, ConditionViolated, SplitFailed, TooLarge
from ..kernel.build import semidirect_product
from ..kernel.group import FiniteGroup, Subset, structural_group
from ..kernel.subgroups import center, derived_subgroup
from .fields import Fq, matmul, null_space, rank, row_space, solve_left
from .sl2 import find_binary_icosahedral, sl2, subgroup_as_group


def _check_char(F: Fq, allow_p3: bool) -> None:
    if F.p == 2:
        raise BadCharacteristic("the construction needs odd characteristic")
    if F.p == 3 and not allow_p3:
        raise BadCharacteristic("p = 3 needs allow_p3=True (the splitting is then verified, not assumed)")


def wedge_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(2 * n), 2))


def wedge(F: Fq, pairs, v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    """``v1 ^ v2`` in the ``e_i ^ e_j`` basis, batched over leading axes."""
    i = np.array([a for a, _ in pairs])
    j = np.array([b for _, b in pairs])
    return F.sub(F.mul[v1[..., i], v2[..., j]], F.mul[v1[..., j], v2[..., i]])


@dataclass(eq=False)
class En:
    """``E_n = V_n x W_n`` with ``(v1,w1)(v2,w2) = (v1+v2, w1+w2+v1^v2)``."""

    n: int
    F: Fq
    pairs: list = field(repr=False)

    @property
    def dim_v(self) -> int:
        return 2 * self.n

    @property
    def dim_w(self) -> int:
        return self.n * (2 * self.n - 1)

    @property
    def order(self) -> int:
        return self.F.q ** (self.dim_v + self.dim_w)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        F, dv = self.F, self.dim_v
        v = F.add[a[..., :dv], b[..., :dv]]
        w = F.add[F.add[a[..., dv:], b[..., dv:]], wedge(F, self.pairs, a[..., :dv], b[..., :dv])]
        return np.concatenate([v, w], axis=-1)

    def inv(self, a: np.ndarray) -> np.ndarray:
        return self.F.neg[a]

    def comm(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def power(self, a: np.ndarray, k: int) -> np.ndarray:
        out = np.zeros_like(a)
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def generators(self) -> np.ndarray:
        gens = []
        for i in range(self.dim_v):
            for w in self.F.basis():
                g = np.zeros(self.dim_v + self.dim_w, dtype=np.int64)
                g[i] = w
                gens.append(g)
        return np.array(gens, dtype=np.int64)

    def sample(self, count: int = 64) -> np.ndarray:
        """Deterministic sample: generators and short products of them."""
        gens = self.generators()
        out = [np.zeros(self.dim_v + self.dim_w, dtype=np.int64)] + list(gens)
        i = 0
        while len(out) < count:
            a = out[i % len(out)]
            b = gens[(3 * i + 1) % len(gens)]
            out.append(self.mul(a, b))
            i += 1
        return np.array(out[:count], dtype=np.int64)

    def check_laws(self, elems: np.ndarray | None = None) -> dict:
        """Exponent ``p``, class 2 and the commutator law on ``elems`` (pairs and triples)."""
        X = self.sample() if elems is None else elems
        F, dv = self.F, self.dim_v
        A, B = X[:, None, :], X[None, :, :]
        comm = self.comm(A, B)
        two = F.from_int(2)
        law = np.concatenate(
            [np.zeros(comm.shape[:-1] + (dv,), dtype=np.int64), F.mul[two, wedge(F, self.pairs, A[..., :dv], B[..., :dv])]],
            axis=-1,
        )
        exp_ok = bool((self.power(X, F.p) == 0).all())
        c = comm.reshape(-1, comm.shape[-1])
        triple = self.comm(c[:, None, :], X[None, :, :])
        return {
            "exponent_p": exp_ok,
            "commutator_law": bool((comm == law).all()),
            "class_2": bool((triple == 0).all()),
        }

    def group(self, element_cap: int | None = None) -> FiniteGroup:
        cap = CAPS.elements if element_cap is None else element_cap
        if self.order > cap:
            raise TooLarge(f"E_{self.n}({self.F.q}) has {self.order} elements, above the cap {cap}")
        q = self.F.q
        return structural_group(
            np.zeros(self.dim_v + self.dim_w, dtype=np.int64),
            self.generators(),
            self.mul,
            self.inv,
            [q] * (self.dim_v + self.dim_w),
            label=f"E{self.n}({q})",
            element_cap=cap,
        )


def build_En(n: int, F: Fq, *, allow_p3: bool = False) -> En:
    if n < 1:
        raise ValueError("n must be at least 1")
    _check_char(F, allow_p3)
    return En(n, F, wedge_pairs(n))


# ------------------------------------------------------------ module split


def natural_matrices(G: FiniteGroup) -> list[np.ndarray]:
    """2x2 matrices of the generators of an SL2 group."""
    return [G.coords[g].reshape(2, 2) for g in G.generators]


def v_action(F: Fq, n: int, theta: np.ndarray) -> np.ndarray:
    """Matrix ``R`` with ``v -> v @ R`` implementing ``theta`` on each copy (column vectors)."""
    R = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for k in range(n):
        R[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = theta.T
    return R


def w_action(F: Fq, n: int, theta: np.ndarray) -> np.ndarray:
    """Matrix of ``theta`` on ``W_n`` acting on row vectors."""
    pairs = wedge_pairs(n)
    R = v_action(F, n, theta)
    rows = []
    for i, j in pairs:
        rows.append(wedge(F, pairs, R[i], R[j]))
    return np.array(rows, dtype=np.int64)


@dataclass(eq=False)
class ModuleSplit:
    n: int
    F: Fq
    Y: np.ndarray  # rows span Y_n
    Z: np.ndarray  # rows span Z_n
    proj_Z: np.ndarray  # dim W x dim Z: coordinates in the Z basis of the Z-component

    @property
    def dims(self) -> tuple[int, int]:
        return self.Y.shape[0], self.Z.shape[0]


def split_Wn(n: int, F: Fq, *, allow_p3: bool = False, sl2_group: FiniteGroup | None = None) -> ModuleSplit:
    """``W_n = Y_n + Z_n``: ``Z`` the fixed space of SL2, ``Y`` the span of ``(g - 1) W``."""
    _check_char(F, allow_p3)
    G = sl2(F) if sl2_group is None else sl2_group
    dw = n * (2 * n - 1)
    ident = np.eye(dw, dtype=np.int64)
    diffs = [F.sub(w_action(F, n, th), ident) for th in natural_matrices(G)]
    # Z: row vectors z with z (A_g - 1) = 0 for every generator g
    Z = null_space(F, np.concatenate([d.T for d in diffs], axis=0))
    Y = row_space(F, np.concatenate(diffs, axis=0), dw)
    dy, dz = Y.shape[0], Z.shape[0]
    both = np.concatenate([Y, Z], axis=0).reshape(-1, dw)
    if dy + dz != dw or rank(F, both) != dw:
        raise SplitFailed(f"W_{n} over GF({F.q}) is not Y + Z (dim Y = {dy}, dim Z = {dz}, dim W = {dw})")
    coords = solve_left(F, both, np.eye(dw, dtype=np.int64))
    return ModuleSplit(n, F, Y, Z, coords[:, dy:])


# --------------------------------------------------------------- G_n, H_n


@dataclass(eq=False)
class PerfectGroupBundle:
    n: int
    F: Fq
    split: ModuleSplit
    Gn: FiniteGroup
    SL2: FiniteGroup
    B: Subset
    Bgroup: FiniteGroup
    Hn: FiniteGroup
    lines: list  # 1-dimensional subspaces of Z_n, one normalised vector each


def build_Gn(n: int, F: Fq, split: ModuleSplit, *, element_cap: int | None = None) -> FiniteGroup:
    """``G_n`` on ``V_n x Z_n`` with ``(v1,z1)(v2,z2) = (v1+v2, z1+z2+proj_Z(v1^v2))``."""
    pairs = wedge_pairs(n)
    dv = 2 * n
    dz = split.Z.shape[0]
    P = split.proj_Z

    def cmul(a, b):
        v = F.add[a[:, :dv], b[:, :dv]]
        z = F.add[F.add[a[:, dv:], b[:, dv:]], matmul(F, wedge(F, pairs, a[:, :dv], b[:, :dv]), P)]
        return np.concatenate([v, z], axis=1)

    def cinv(a):
        return F.neg[a]

    gens = []
    for i in range(dv):
        for w in F.basis():
            g = np.zeros(dv + dz, dtype=np.int64)
            g[i] = w
            gens.append(g)
    # the derived subgroup already reaches Z, but listing Z generators keeps BFS shallow
    for k in range(dz):
        for w in F.basis():
            g = np.zeros(dv + dz, dtype=np.int64)
            g[dv + k] = w
            gens.append(g)
    cap = CAPS.elements if element_cap is None else element_cap
    order = F.q ** (dv + dz)
    if order > cap:
        raise TooLarge(f"G_{n}({F.q}) has {order} elements, above the cap {cap}")
    return structural_group(
        np.zeros(dv + dz, dtype=np.int64), gens, cmul, cinv, [F.q] * (dv + dz), label=f"G{n}({F.q})", element_cap=cap
    )


def lines_of(F: Fq, dim: int) -> list[np.ndarray]:
    """One vector per 1-dimensional subspace, normalised so the first nonzero entry is 1."""
    out = []
    q = F.q
    for k in range(1, q**dim):
        v = np.array([(k // q**i) % q for i in range(dim)], dtype=np.int64)
        nz = v[np.nonzero(v)[0][0]]
        if nz == 1:
            out.append(v)
    return out


def build_Hn(n: int, F: Fq, *, allow_p3: bool = False, element_cap: int | None = None) -> PerfectGroupBundle:
    q = F.q
    if q % 10 not in (1, 9):
        raise ConditionViolated(f"q = {q} is not congruent to +-1 mod 10")
    _check_char(F, allow_p3)
    SL = sl2(F)
    split = split_Wn(n, F, allow_p3=allow_p3, sl2_group=SL)
    Gn = build_Gn(n, F, split, element_cap=element_cap)
    B = find_binary_icosahedral(F, SL)
    Bg, emb = subgroup_as_group(SL, B, label=f"2I<SL2({q})")
    dv = 2 * n
    action = {}
    for h in Bg.generators:
        theta = SL.coords[emb[h]].reshape(2, 2)
        R = v_action(F, n, theta)
        c = Gn.coords.copy()
        c[:, :dv] = matmul(F, c[:, :dv], R)
        action[h] = Gn.ids_of(c)
    cap = CAPS.elements if element_cap is None else element_cap
    if Gn.order * Bg.order > cap:
        raise TooLarge(f"H_{n}({q}) would have {Gn.order * Bg.order} elements, above the cap {cap}")
    Hn = semidirect_product(Gn, Bg, action, label=f"H{n}({q})")
    return PerfectGroupBundle(n, F, split, Gn, SL, B, Bg, Hn, lines_of(F, split.Z.shape[0]))


def check_Hn(bundle: PerfectGroupBundle) -> dict:
    """Order formula, perfectness, ``Z_n`` central and ``B`` trivial on ``Z_n``."""
    H, Gn, F, n = bundle.Hn, bundle.Gn, bundle.F, bundle.n
    dv = 2 * n
    dz = bundle.split.Z.shape[0]
    expected = 120 * F.q ** (dv + n * (n + 1) // 2)
    zmask_g = (Gn.coords[:, :dv] == 0).all(axis=1)
    z_ids = np.flatnonzero(zmask_g)
    Zh = H.ids_of(np.stack([z_ids, np.zeros_like(z_ids)], axis=1))
    Zsub = Subset.from_mask(H, np.isin(H.elements, Zh))
    centre = center(H)
    act = H._cache["semidirect_action"]
    trivial_on_z = bool((act[:, z_ids] == z_ids[None, :]).all())
    return {
        "order": H.order,
        "expected_order": expected,
        "perfect": derived_subgroup(H) == Subset(H, frozenset(range(H.order)), True),
        "Z_central": Zsub <= centre,
        "B_trivial_on_Z": trivial_on_z,
        "dim_Z": dz,
        "lines": len(bundle.lines),
    }


# ------------------------------------------------- commutator-length arithmetic


def comlength_inequality(k: int, n: int) -> bool:
    """``2k(2n+3) <= n(n+1)/2 - 1``, compared without fractions."""
    return 4 * k * (2 * n + 3) <= n * (n + 1) - 2


def comlength_min_n(k: int) -> dict:
    """Least ``n`` satisfying the counting inequality, alongside the coarser threshold ``8k + 2``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n = 1
    while not comlength_inequality(k, n):
        n += 1
    return {"k": k, "n": n, "reference_threshold": 8 * k + 2}


def commutator_products_in_line_space(n: int, F: Fq, k: int = 1) -> dict:
    """Data only: products of ``k`` commutators of ``G_n x| SL2(q)`` that land in ``Z_n``.

    Enumerates ``L = G_n x| SL2(q)``, collects the commutator set, takes its
    ``k``-fold product set and reports how many elements of ``Z_n`` (the
    derived subgroup of ``G_n``) and how many lines it meets.
    """
    SL = sl2(F)
    split = split_Wn(n, F, sl2_group=SL)
    Gn = build_Gn(n, F, split)
    if Gn.order * SL.order > CAPS.elements:
        raise TooLarge(f"G_{n}({F.q}) x| SL2({F.q}) has {Gn.order * SL.order} elements, above the cap {CAPS.elements}")
    dv = 2 * n
    action = {}
    for h in SL.generators:
        R = v_action(F, n, SL.coords[h].reshape(2, 2))
        c = Gn.coords.copy()
        c[:, :dv] = matmul(F, c[:, :dv], R)
        action[h] = Gn.ids_of(c)
    L = semidirect_product(Gn, SL, action, label=f"G{n}({F.q}) x| SL2({F.q})")
    from ..kernel.subgroups import class_labels, class_representatives

    mask = np.zeros(L.order, dtype=bool)
    for r in class_representatives(L):
        mask[L.comm_ids(r, L.elements)] = True
    labels = class_labels(L)
    comms = np.isin(labels, np.unique(labels[mask]))
    current = comms.copy()
    C = np.flatnonzero(comms)
    for _ in range(k - 1):
        cur = np.flatnonzero(current)
        nxt = np.zeros(L.order, dtype=bool)
        for chunk in np.array_split(cur, max(1, cur.size // 256)):
            nxt[L.mul_ids(chunk[:, None], C[None, :]).ravel()] = True
        current = nxt
    zc = L.coords[:, 0]
    in_z = (L.coords[:, 1] == 0) & (Gn.coords[zc, :dv] == 0).all(axis=1)
    hit = current & in_z
    z_vecs = Gn.coords[L.coords[hit, 0], dv:]
    lines_hit = {tuple(v * int(F.inv[v[np.nonzero(v)[0][0]]]) % F.q) for v in z_vecs if v.any()} if F.e == 1 else None
    return {
        "order_L": L.order,
        "Z_size": int(in_z.sum()),
        "Z_elements_hit": int(hit.sum()),
        "lines_total": len(lines_of(F, split.Z.shape[0])),
        "lines_hit": None if lines_hit is None else len(lines_hit),
    }
