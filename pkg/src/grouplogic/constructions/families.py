"""Indexed group families for the sweep harness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


from ..errors import GroupSpecError, TooLarge
from ..kernel.build import alternating, cyclic, dihedral, direct_product, from_permutations, wreath_cyclic
from ..kernel.group import FiniteGroup
from .fields import gf, is_prime


def odd_prime(n: int, avoid: int | None = None) -> int:
    """The ``n``-th odd prime (3, 5, 7, 11, ...), skipping ``avoid``."""
    count, k = 0, 2
    while True:
        k += 1
        if is_prime(k) and k != avoid:
            count += 1
            if count == n:
                return k


def psl2_7() -> FiniteGroup:
    return from_permutations(7, ["(1 2 3 4 5 6 7)", "(1 2)(3 6)"], label="PSL(2,7)")


def psl2_8() -> FiniteGroup:
    """PSL(2,8) acting on the projective line over GF(8) (points 0..7 = field, 8 = infinity)."""
    F = gf(2, 3)
    inf = 8

    def perm(f):
        return [f(x) for x in range(9)]

    def translate(x):
        return inf if x == inf else int(F.add[x, 1])

    def scale(x):
        return inf if x == inf else int(F.mul[x, 2])

    def invert(x):
        if x == inf:
            return 0
        return inf if x == 0 else int(F.inv[x])

    gens = [perm(translate), perm(scale), perm(invert)]
    return from_permutations(9, gens, label="PSL(2,8)")


SIMPLE_LIST: list[tuple[str, Callable[[], FiniteGroup]]] = [
    ("A5", lambda: alternating(5)),
    ("PSL(2,7)", psl2_7),
    ("A6", lambda: alternating(6)),
    ("PSL(2,8)", psl2_8),
    ("A7", lambda: alternating(7)),
]


@dataclass(eq=False)
class GroupFamily:
    name: str
    description: str
    build: Callable[[int], FiniteGroup]
    max_index: int  # feasibility bound

    def __call__(self, n: int) -> FiniteGroup:
        if n < 1:
            raise GroupSpecError("family indices start at 1")
        if n > self.max_index:
            raise TooLarge(f"index {n} is beyond the feasibility bound {self.max_index} of family {self.name}")
        return self.build(n)


def _simple(n: int) -> FiniteGroup:
    if not 1 <= n <= len(SIMPLE_LIST):
        raise TooLarge(f"only {len(SIMPLE_LIST)} simple groups are listed")
    return SIMPLE_LIST[n - 1][1]()


FAMILY_NAMES = ("cyc2", "cyc2p", "dih2", "dih2p", "wr_q", "wr_pq", "thmD", "simple_sq", "simple_adj")


def family(name: str, q: int | None = None) -> GroupFamily:
    """Builtin family by name; ``q`` parametrises ``wr_q`` and ``wr_pq`` (default 2)."""
    q = 2 if q is None else int(q)
    if name == "cyc2":
        return GroupFamily(name, "C_{2^n}", lambda n: cyclic(2**n), 18)
    if name == "cyc2p":
        return GroupFamily(name, "C_{2^n p_n}", lambda n: cyclic(2**n * odd_prime(n)), 14)
    if name == "dih2":
        return GroupFamily(name, "Dih(C_{2^n})", lambda n: dihedral(2**n), 14)
    if name == "dih2p":
        return GroupFamily(name, "Dih(C_{2^n p_n})", lambda n: dihedral(2**n * odd_prime(n)), 10)
    if name == "wr_q":
        if not is_prime(q):
            raise GroupSpecError("wr_q needs a prime q")
        bound = 1
        while (q ** (bound + 1)) ** q * q <= 1_000_000:
            bound += 1
        return GroupFamily(f"wr_q/{q}", f"C_{{{q}^n}} wr C_{q}", lambda n: wreath_cyclic(cyclic(q**n), q), bound)
    if name == "wr_pq":
        if not is_prime(q):
            raise GroupSpecError("wr_pq needs a prime q")

        def build(n: int) -> FiniteGroup:
            return wreath_cyclic(cyclic(odd_prime(n, avoid=q) * q**n), q)

        bound = 0
        while (odd_prime(bound + 1, avoid=q) * q ** (bound + 1)) ** q * q <= 1_000_000:
            bound += 1
        return GroupFamily(f"wr_pq/{q}", f"C_{{p_n {q}^n}} wr C_{q}", build, max(bound, 1))
    if name == "thmD":
        from .thmd import thmD_finite_instance

        return GroupFamily(
            name,
            "Dih(C_{2^n}) x Dih(C_{p_n})",
            lambda n: thmD_finite_instance(n, odd_prime(n)).F,
            6,
        )
    if name == "simple_sq":
        return GroupFamily(name, "S_n x S_n over (A5, PSL(2,7), A6, PSL(2,8), A7)", lambda n: direct_product(_simple(n), _simple(n)), 4)
    if name == "simple_adj":
        return GroupFamily(name, "S_n x S_{n+1} over (A5, PSL(2,7), A6, PSL(2,8), A7)", lambda n: direct_product(_simple(n), _simple(n + 1)), 3)
    raise GroupSpecError(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")


def parse_family(text: str) -> tuple[GroupFamily, int | None]:
    """``name``, ``name/q``, ``name:index`` or ``name/q:index``."""
    head, _, idx = text.partition(":")
    name, _, q = head.partition("/")
    try:
        fam = family(name.strip(), int(q) if q else None)
        return fam, int(idx) if idx else None
    except ValueError:
        raise GroupSpecError(f"bad family reference {text!r}") from None
