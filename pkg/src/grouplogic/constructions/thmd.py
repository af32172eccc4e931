"""Finite instances of the definable subgroups L and H built from Dih(C_2^n) x Dih(C_p)."""

from __future__ import annotations

from dataclasses import dataclass


from ..config import CAPS
from ..errors import TooLarge
from ..kernel.build import dihedral, direct_product, find_isomorphism
from ..kernel.group import FiniteGroup, Subset
from ..kernel.subgroups import as_subgroup, center, centralizer, derived_subgroup, intersection
from .fields import is_prime
from .sl2 import subgroup_as_group


@dataclass(eq=False)
class ThmDInstance:
    n: int
    p: int
    F: FiniteGroup
    a: int
    b: int
    derived: Subset
    L: Subset
    H: Subset
    index_L: int
    center_H: Subset
    H_is_dihedral_p: bool  # H isomorphic to Dih(C_p)

    def summary(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "order_F": self.F.order,
            "order_L": self.L.order,
            "index_L": self.index_L,
            "order_H": self.H.order,
            "order_Z(H)": self.center_H.order,
            "H_iso_Dih(C_p)": self.H_is_dihedral_p,
        }


def thmD_finite_instance(n: int, p: int, *, table_cap: int | None = None) -> ThmDInstance:
    """``F = Dih(C_2^n) x Dih(C_p)``, ``L = [F,F] u ab[F,F]``, ``H = L n C_F(a)``."""
    if n < 1 or not is_prime(p) or p == 2:
        raise ValueError("need n >= 1 and an odd prime p")
    cap = CAPS.table if table_cap is None else table_cap
    if 2 ** (n + 2) * p > cap:
        raise TooLarge(f"|F| = {2 ** (n + 2) * p} exceeds the table cap {cap}")
    D1, D2 = dihedral(2**n), dihedral(p)
    F = direct_product(D1, D2, label=f"Dih(C{2 ** n}) x Dih(C{p})")
    a = F.id_of([D1.id_of([0, 1]), 0])
    b = F.id_of([0, D2.id_of([0, 1])])
    Dv = derived_subgroup(F)
    ab = F.mul(a, b)
    coset = F.mul_ids(ab, Dv.array)
    members = set(Dv.members) | {int(x) for x in coset}
    L = as_subgroup(F, members)
    H = intersection(F, L, centralizer(F, [a]))
    H = as_subgroup(F, H.members)
    ZH = center(F, H)
    Hg, _ = subgroup_as_group(F, H, label="H")
    iso = find_isomorphism(Hg, dihedral(p)) is not None if Hg.order == 2 * p else False
    return ThmDInstance(n, p, F, a, b, Dv, L, H, F.order // L.order, ZH, iso)
