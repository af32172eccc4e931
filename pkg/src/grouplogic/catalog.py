"""Named sentences of the first-order language of groups, plus semantic companions.

Each builder returns an AST; ``CATALOG_TEXT`` keeps the text form of every
sentence for documentation and for the CLI's ``parse`` subcommand.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .config import CAPS
from .errors import GroupSpecError, NotDistinctPrimes, TooLarge
from .kernel.group import FiniteGroup
from .kernel.subgroups import class_labels, class_representatives, conjugacy_class, conjugacy_classes
from .logic.ast import (
    Comm,
    Conj,
    Eq,
    Implies,
    Inv,
    Mul,
    One,
    Pow,
    Var,
    conj,
    disj,
    exists,
    forall,
    neq,
)

x, y = Var("x"), Var("y")
ONE = One()


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def coprime_sentence(n: int):
    """``A x. x^n = 1 -> x = 1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return forall("x", Implies(Eq(Pow(x, n), ONE), Eq(x, ONE)))


def divisible_sentence(n: int):
    """``A x. E y. x = y^n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return forall("x", exists("y", Eq(x, Pow(y, n))))


def radical_trivial_sentence():
    """``A x. x = 1 | E y. [x, x^y] != 1``: no nontrivial soluble normal subgroup."""
    return forall("x", disj(Eq(x, ONE), exists("y", neq(Comm(x, Conj(x, y)), ONE))))


def F_pq(p: int, q: int):
    """``A x. A y. ([x^p, y] = 1 & [x, y^q] = 1) -> [x, y] = 1``."""
    if p == q or not (_is_prime(p) and _is_prime(q)):
        raise NotDistinctPrimes(f"F_pq needs two distinct primes, got {p} and {q}")
    hyp = conj(Eq(Comm(Pow(x, p), y), ONE), Eq(Comm(x, Pow(y, q)), ONE))
    return forall("x y", Implies(hyp, Eq(Comm(x, y), ONE)))


def nilpotence_sentence(primes):
    """Conjunction of ``F_pq`` over ordered pairs of distinct primes in ``primes``."""
    ps = sorted(set(int(p) for p in primes))
    for p in ps:
        if not _is_prime(p):
            raise NotDistinctPrimes(f"{p} is not prime")
    return conj(*[F_pq(p, q) for p in ps for q in ps if p != q])


def two_three_commute_sentence():
    """``A x. A y. (x^2 = 1 & y^3 = 1) -> x*y = y*x``."""
    hyp = conj(Eq(Pow(x, 2), ONE), Eq(Pow(y, 3), ONE))
    return forall("x y", Implies(hyp, Eq(Mul(x, y), Mul(y, x))))


def min_factors_sentence(n: int):
    """At least ``n`` nontrivial elements whose normal closures pairwise commute.

    ``E x1 ... xn. (x1 != 1 & ... & xn != 1) & A y. AND_{i<j} [xi, y*xj*y^-1] = 1``
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    xs = [Var(f"x{i}") for i in range(1, n + 1)]
    nontrivial = [neq(xi, ONE) for xi in xs]
    commuting = [Eq(Comm(xs[i], Mul(Mul(y, xs[j]), Inv(y))), ONE) for i, j in combinations(range(n), 2)]
    body = conj(*nontrivial)
    if commuting:
        body = conj(*nontrivial, forall("y", conj(*commuting)))
    return exists([v.name for v in xs], body)


# ----------------------------------------------------------- semantic checks


def min_factors_holds(G: FiniteGroup, n: int) -> bool:
    """Semantic truth of ``min_factors_sentence(n)``.

    ``[x_i, y x_j y^-1] = 1`` for all ``y`` says the normal closures of
    ``x_i`` and ``x_j`` commute, which only depends on the classes; so the
    search is a clique search over nontrivial classes (a class may be reused
    when it commutes with itself).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    classes = conjugacy_classes(G)[1:]
    if not classes:
        return False
    k = len(classes)
    ok = np.zeros((k, k), dtype=bool)
    for i, A in enumerate(classes):
        for j in range(i, k):
            B = classes[j]
            c = G.comm_ids(A.array[:, None], B.array[None, :])
            ok[i, j] = ok[j, i] = bool((c == 0).all())

    def extend(chosen: list, start: int) -> bool:
        if len(chosen) == n:
            return True
        for c in range(start, k):
            if all(ok[c, d] for d in chosen) and (c not in chosen or ok[c, c]):
                if extend(chosen + [c], c):
                    return True
        return False

    return extend([], 0)


def _sigma_products(G: FiniteGroup, g: int, k: int):
    """Yield the increasing product sets ``C(g)^1, C(g)^2, ...`` up to ``k``, stopping at a fixpoint."""
    cls = conjugacy_class(G, g).array
    C = np.unique(G.comm_ids(cls[:, None], cls[None, :]).ravel())
    mask = np.zeros(G.order, dtype=bool)
    mask[C] = True
    current = mask
    yield 1, current
    for step in range(2, k + 1):
        cur_ids = np.flatnonzero(current)
        prods = G.mul_ids(cur_ids[:, None], C[None, :]).ravel()
        nxt = np.zeros(G.order, dtype=bool)
        nxt[prods] = True
        if (nxt == current).all():
            return
        current = nxt
        yield step, current


def _sigma_cap(G: FiniteGroup, cap):
    cap = CAPS.sigma if cap is None else cap
    if G.order > cap:
        raise TooLarge(f"{G.label} has order {G.order}, above the sigma cap {cap}")


def sigma_holds(G: FiniteGroup, k: int, cap: int | None = None) -> bool:
    """No ``g != 1`` is a product of ``k`` commutators of elements of its class."""
    if k < 1:
        raise ValueError("k must be at least 1")
    _sigma_cap(G, cap)
    for g in class_representatives(G)[1:]:
        last = None
        for _, mask in _sigma_products(G, g, k):
            last = mask
        if last is not None and last[g]:
            return False
    return True


def sigma_min_failing_k(G: FiniteGroup, k_max: int = 56, cap: int | None = None):
    """Least ``k <= k_max`` with ``sigma_holds(G, k)`` false, or ``None``."""
    _sigma_cap(G, cap)
    best = None
    for g in class_representatives(G)[1:]:
        for step, mask in _sigma_products(G, g, k_max):
            if best is not None and step >= best:
                break
            if mask[g]:
                best = step
                break
    return best


def _scan_cap(G: FiniteGroup, cap):
    cap = CAPS.table if cap is None else cap
    if G.order > cap:
        raise TooLarge(f"{G.label} has order {G.order}, above the commutator-scan cap {cap}")


def commutator_set(G: FiniteGroup, cap: int | None = None) -> np.ndarray:
    """Mask of all commutators ``[x, y]``.

    ``[x^g, y^g] = [x, y]^g``, so ``x`` over class representatives suffices
    once the result is closed under conjugation.
    """
    _scan_cap(G, cap)
    mask = np.zeros(G.order, dtype=bool)
    for r in class_representatives(G):
        mask[G.comm_ids(r, G.elements)] = True
    labels = class_labels(G)
    hit = np.unique(labels[mask])
    return np.isin(labels, hit)


def ore_check(G: FiniteGroup, cap: int | None = None) -> bool:
    """Every element is a commutator."""
    return bool(commutator_set(G, cap).all())


def cc_check(G: FiniteGroup, cap: int | None = None) -> bool:
    """Every ``g != 1`` fails to commute with some conjugate of itself."""
    _scan_cap(G, cap)
    for r in class_representatives(G)[1:]:
        cls = conjugacy_class(G, r).array
        if (G.comm_ids(r, cls) == 0).all():
            return False
    return True


# --------------------------------------------------------------- name lookup

CATALOG_TEXT = {
    "coprime": "A x. x^n = 1 -> x = 1",
    "divisible": "A x. E y. x = y^n",
    "radtrivial": "A x. x = 1 | (E y. [x,x^y] != 1)",
    "Fpq": "A x. A y. ([x^p,y] = 1 & [x,y^q] = 1) -> ([x,y] = 1)",
    "nilpotent": "conjunction of Fpq over distinct p, q in the prime set",
    "two3commute": "A x. A y. (x^2 = 1 & y^3 = 1) -> (x*y = y*x)",
    "minfactors": "E x1. ... E xn. x1 != 1 & ... & xn != 1 & (A y. [xi,y*xj*y^-1] = 1 for i < j)",
    "sigma": "semantic: no g != 1 is a product of k commutators [a,b] with a, b conjugates of g",
}


def _ints(arg: str) -> list[int]:
    try:
        return [int(t) for t in arg.replace(",", " ").split()]
    except ValueError:
        raise GroupSpecError(f"expected integers, got {arg!r}") from None


def catalog_formula(name: str):
    """Resolve a CLI catalog name such as ``coprime:5`` or ``Fpq:2,3``.

    ``sigma:<k>`` is semantic and has no formula; it returns ``("sigma", k)``.
    """
    head, _, arg = name.partition(":")
    if head == "coprime":
        return coprime_sentence(*_ints(arg))
    if head == "divisible":
        return divisible_sentence(*_ints(arg))
    if head == "radtrivial":
        return radical_trivial_sentence()
    if head == "Fpq":
        p, q = _ints(arg)
        return F_pq(p, q)
    if head == "nilpotent":
        return nilpotence_sentence(_ints(arg))
    if head == "minfactors":
        return min_factors_sentence(*_ints(arg))
    if head == "two3commute":
        return two_three_commute_sentence()
    if head == "sigma":
        (k,) = _ints(arg)
        return ("sigma", k)
    raise GroupSpecError(f"unknown catalog name {name!r}")


def is_catalog_name(text: str) -> bool:
    return text.partition(":")[0] in CATALOG_TEXT
