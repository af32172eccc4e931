"""Definable proper supplements of normal subgroups not inside the soluble radical.

Given a normal subgroup ``K`` of a finite group ``G`` with ``K`` not contained
in the soluble radical ``R = R(G)``, the construction picks

* ``M = K n R`` and a normal ``L`` minimal with ``M < L <= K``, so that
  ``L/M = S_1 x ... x S_r`` with non-abelian simple ``S_i``;
* a prime ``p`` for which every ``S_i`` has a cyclic Sylow ``p``-subgroup,
  generated by ``s_i``, and ``s`` a preimage of ``s_1 ... s_r``;
* ``T``, the kernel of the conjugation action of ``G`` on the ``S_i``;
* ``D = {x in T : [s, x] in M}`` and ``N = N_G(D)``.

Then ``N`` is proper and ``L N = G``.  The formulas below define ``D`` and
``N`` from the parameters ``d1, d2, s`` and the radical oracle ``rad``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import CAPS
from .errors import CheckFailed, InsideRadical, NoCyclicSylow
from .kernel.build import quotient
from .kernel.group import FiniteGroup, GroupMap, Subset
from .kernel.subgroups import (
    as_subgroup,
    centralizer,
    class_labels,
    classes_within,
    closure,
    element_orders,
    intersection,
    normal_closure,
    normalizer,
    product_order,
    require_normal,
    subgroup_generators,
)
from .logic.ast import (
    And,
    Comm,
    Conj,
    Eq,
    Exists,
    Forall,
    Implies,
    Inv,
    Mul,
    Not,
    One,
    Oracle,
    Var,
    disj,
    substitute,
)
from .logic.evaluate import DEFAULT_STRATEGY, definable_set, evaluate
from .structure import prime_factors, soluble_radical


@dataclass(eq=False)
class SupplementCertificate:
    G: FiniteGroup
    K: Subset
    M: Subset
    L: Subset
    factors: list  # the simple factors of L/M, as subsets of G/M
    p: int
    s: int
    T: Subset
    D: Subset
    N: Subset
    d1: int
    d2: int
    quotient_map: GroupMap
    s_factors: list = field(default_factory=list)  # s_i in G/M

    @property
    def quotient(self) -> FiniteGroup:
        return self.quotient_map.target

    def summary(self) -> dict:
        G = self.G
        return {
            "group": G.label,
            "order_G": G.order,
            "order_K": self.K.order,
            "order_M": self.M.order,
            "order_L": self.L.order,
            "r": len(self.factors),
            "factor_order": self.factors[0].order,
            "p": self.p,
            "s": self.s,
            "order_T": self.T.order,
            "order_D": self.D.order,
            "order_N": self.N.order,
            "d1": self.d1,
            "d2": self.d2,
            "LN_is_G": product_order(self.L, self.N) == G.order,
            "KN_is_G": product_order(self.K, self.N) == G.order,
            "N_proper": self.N.order < G.order,
        }


def _least_preimage(pi: GroupMap, y: int) -> int:
    return int(np.flatnonzero(pi.images == y)[0])


def _minimal_by_inclusion(cands: list[Subset]) -> list[Subset]:
    out = []
    for A in cands:
        if not any(B < A for B in cands) and A not in out:
            out.append(A)
    return sorted(out, key=Subset.sorted_key)


def _choose_L(G: FiniteGroup, K: Subset, M: Subset) -> Subset:
    """Least (by member set) normal subgroup minimal subject to ``M < L <= K``."""
    from .kernel.subgroups import class_representatives

    base = list(subgroup_generators(M))
    cands = [normal_closure(G, base + [r]) for r in class_representatives(G) if r in K and r not in M]
    return _minimal_by_inclusion(cands)[0]


def _simple_factors(Q: FiniteGroup, Lbar: Subset) -> list[Subset]:
    """Minimal normal subgroups of ``Lbar`` (its simple direct factors)."""
    reps = [int(c.array[0]) for c in classes_within(Q, Lbar)[1:]]
    cands = [normal_closure(Q, [x], within=Lbar) for x in reps]
    return _minimal_by_inclusion(cands)


def _p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        part *= p
        n //= p
    return part


def _common_cyclic_sylow(Q: FiniteGroup, factors: list[Subset]) -> tuple[int, list[int]]:
    orders = element_orders(Q)
    for p in prime_factors(factors[0].order):
        gens = []
        for S in factors:
            arr = S.array
            hits = arr[orders[arr] == _p_part(S.order, p)]
            if not hits.size:
                break
            gens.append(int(hits[0]))
        else:
            return p, gens
    raise NoCyclicSylow("the simple factors share no prime with cyclic Sylow subgroups")


def _generating_pair(Q: FiniteGroup, S: Subset) -> tuple[int, int]:
    arr = [int(x) for x in S.array if x != 0]
    for a in arr:
        for b in arr:
            if b > a and closure(Q, [a, b]).order == S.order:
                return a, b
    raise CheckFailed(f"no generating pair found in a simple factor of order {S.order}")


def _action_kernel(Q: FiniteGroup, factors: list[Subset]) -> Subset:
    mask = np.ones(Q.order, dtype=bool)
    for S in factors:
        mask &= normalizer(Q, S).mask
    return Subset.from_mask(Q, mask, is_subgroup=True)


def build_supplement(G: FiniteGroup, K: Subset) -> SupplementCertificate:
    K = require_normal(G, K)
    R = soluble_radical(G)
    if K <= R:
        raise InsideRadical("K lies inside the soluble radical, so no supplement is constructed")
    M = intersection(G, K, R)
    M = as_subgroup(G, M.members)
    L = _choose_L(G, K, M)
    Q, pi = quotient(G, M, label=f"{G.label}/M")
    Lbar = pi.image_of(L)
    factors = _simple_factors(Q, Lbar)
    p, s_bar = _common_cyclic_sylow(Q, factors)
    prod = 0
    for x in s_bar:
        prod = Q.mul(prod, x)
    s = _least_preimage(pi, prod)
    T = pi.preimage(_action_kernel(Q, factors))
    comm = G.comm_ids(s, T.array)
    D = Subset.from_mask(G, np.isin(np.arange(G.order), T.array[M.mask[comm]]), is_subgroup=True)
    N = normalizer(G, D)
    a, b = _generating_pair(Q, factors[0])
    cert = SupplementCertificate(
        G, K, M, L, factors, p, s, T, D, N, _least_preimage(pi, a), _least_preimage(pi, b), pi, s_bar
    )
    check_invariants(cert)
    return cert


def check_invariants(cert: SupplementCertificate) -> None:
    G, M, L, K, N, D, T = cert.G, cert.M, cert.L, cert.K, cert.N, cert.D, cert.T
    Q = cert.quotient
    if not (M < L <= K):
        raise CheckFailed("invariant M < L <= K fails")
    total = 1
    for S in cert.factors:
        total *= S.order
    if total != L.order // M.order:
        raise CheckFailed("L/M is not the product of the listed factors")
    orders = element_orders(Q)
    for S, x in zip(cert.factors, cert.s_factors):
        if x not in S or orders[x] != _p_part(S.order, cert.p):
            raise CheckFailed("a factor's chosen element does not generate a Sylow subgroup")
    if not D <= T:
        raise CheckFailed("D is not contained in T")
    bad = D.array[~M.mask[G.comm_ids(cert.s, D.array)]]
    if bad.size:
        raise CheckFailed(f"[s,x] not in M for x = {int(bad[0])}")
    if product_order(L, N) != G.order:
        raise CheckFailed("L N is not all of G")
    if product_order(K, N) != G.order:
        raise CheckFailed("K N is not all of G")
    if N.order == G.order:
        raise CheckFailed("N is not proper")


# ------------------------------------------------------------ lemma checks


@dataclass
class CheckReport:
    results: dict  # clause -> (passed, detail)
    skipped: dict = field(default_factory=dict)  # clause -> reason

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.results.values())

    def raise_on_failure(self) -> "CheckReport":
        for clause, (ok, detail) in self.results.items():
            if not ok:
                raise CheckFailed(f"clause ({clause}) failed: {detail}")
        return self

    def lines(self) -> list[str]:
        out = [f"{c}={'PASS' if ok else 'FAIL'} {d}".rstrip() for c, (ok, d) in self.results.items()]
        return out + [f"{c}=SKIPPED {why}" for c, why in self.skipped.items()]


def _diff_witness(A: Subset, B: Subset):
    diff = sorted(A.members ^ B.members)
    return diff[0] if diff else None


def lemma62_checks(cert: SupplementCertificate, *, strict: bool = False) -> CheckReport:
    """Clauses (a) to (d), all evaluated in the quotient by ``M``."""
    Q, pi = cert.quotient, cert.quotient_map
    Lbar, Dbar, Tbar = pi.image_of(cert.L), pi.image_of(cert.D), pi.image_of(cert.T)
    s_bar = int(pi(cert.s))
    ND = normalizer(Q, Dbar)
    res = {}

    ok = product_order(Lbar, ND) == Q.order
    res["a"] = (ok, f"|L N(D)| = {product_order(Lbar, ND)} vs {Q.order}")

    res["b"] = (ND.order < Q.order, f"|N(D)| = {ND.order}")

    P = closure(Q, cert.s_factors)
    C_P = centralizer(Q, list(cert.s_factors))
    C_Ts = centralizer(Q, [s_bar], within=Tbar)
    w = _diff_witness(Dbar, C_Ts)
    if w is None:
        w = _diff_witness(C_P, C_Ts)
    res["c"] = (w is None, f"|D| = {Dbar.order}, |C_T(s)| = {C_Ts.order}, |P| = {P.order}" + (f", witness {w}" if w is not None else ""))

    d1, d2 = int(pi(cert.d1)), int(pi(cert.d2))
    S1 = cert.factors[0]
    trivial_c = centralizer(Q, [d1, d2], within=S1).order == 1
    X = Q.elements
    fixes = np.ones(Q.order, dtype=bool)
    for a in (d1, d2):
        for b in (d1, d2):
            fixes &= Q.comm_ids(a, Q.conj_ids(b, X)) == 0
    Qset = ~fixes
    # x lies in every conjugate of Q exactly when its whole class lies in Q
    labels = class_labels(Q)
    bad = np.zeros(labels.max() + 1, dtype=bool)
    bad[labels[~Qset]] = True
    inter = ~bad[labels]
    I = Subset.from_mask(Q, inter)
    w = _diff_witness(I, Tbar)
    detail = f"|intersection| = {I.order}, |T| = {Tbar.order}, trivial centralizer = {trivial_c}"
    res["d"] = (w is None and trivial_c, detail + (f", witness {w}" if w is not None else ""))
    report = CheckReport(res)
    return report.raise_on_failure() if strict else report


# ---------------------------------------------------------------- formulas


def _rho(t):
    return Oracle("rad", t)


def _phi(t):
    return Oracle("inK", t)


def theta0_formula(w1="w1", w2="w2", x="x"):
    ws = (Var(w1), Var(w2))
    X = Var(x)
    return disj(*[Not(_rho(Comm(a, Conj(b, X)))) for a in ws for b in ws])


def build_formulas(cert: SupplementCertificate | None = None) -> dict:
    """``psi``, ``psi_prime``, ``theta0``, ``theta1``, ``theta``, ``chi`` and ``xi``.

    Free variables: ``w1, w2`` (the pair ``d1, d2``), ``z`` (the element ``s``)
    and ``x``, the defining variable.  ``xi`` and the ``psi`` forms are
    sentences in the parameters.  ``K`` enters only through the oracle ``inK``.
    """
    x, g, y = Var("x"), Var("g"), Var("y")
    u, x1, x2 = Var("u"), Var("x1"), Var("x2")
    psi = And((
        _phi(One()),
        Forall("u", Forall("x1", Forall("x2", Implies(
            And((_phi(x1), _phi(x2))),
            _phi(Mul(Mul(Mul(u, x1), Inv(x2)), Inv(u))),
        )))),
    ))
    psi_prime = And((psi, Exists("x", And((_phi(x), Not(_rho(x)))))))
    theta0 = theta0_formula()
    theta1 = Forall("g", substitute(theta0, "x", Mul(Mul(g, x), Inv(g))))
    theta = And((theta1, _rho(Comm(Var("z"), x))))
    chi = Forall("y", Implies(substitute(theta, "x", y), substitute(theta, "x", Conj(y, x))))
    v1, v2 = Var("v1"), Var("v2")
    xi = And((
        Exists("t", Not(substitute(chi, "x", Var("t")))),
        Forall("u", Exists("v1", Exists("v2", And((
            substitute(chi, "x", v1),
            _phi(v2),
            Eq(u, Mul(v1, v2)),
        ))))),
    ))
    return {
        "psi": psi,
        "psi_prime": psi_prime,
        "theta0": theta0,
        "theta1": theta1,
        "theta": theta,
        "chi": chi,
        "xi": xi,
    }


def formula_oracles(cert: SupplementCertificate, rad=None) -> dict:
    G = cert.G
    return {"rad": soluble_radical(G) if rad is None else rad, "inK": cert.K}


def verify_formula_level(
    cert: SupplementCertificate,
    *,
    strategy: str = DEFAULT_STRATEGY,
    rad=None,
    budget=None,
    strict: bool = True,
) -> CheckReport:
    """Evaluate the formulas on ``G`` and compare them with the semantic data.

    ``rad`` overrides the radical oracle (for negative controls).
    """
    G = cert.G
    fs = build_formulas(cert)
    oracles = formula_oracles(cert, rad)
    params = {"w1": cert.d1, "w2": cert.d2, "z": cert.s}
    res = {}
    limit = CAPS.work_budget if budget is None else budget.limit
    skipped = {}
    if G.order**3 <= limit:
        ok = evaluate(G, fs["psi_prime"], oracles=oracles, strategy=strategy, budget=budget)
        res["psi_prime"] = (ok, "K is normal and not inside the radical" if ok else "")
    else:
        # three nested universal quantifiers over the carrier
        skipped["psi_prime"] = f"|G|^3 = {G.order**3} exceeds the work budget {limit}"
    theta_set = definable_set(G, fs["theta"], params, oracles=oracles, strategy=strategy, budget=budget)
    w = _diff_witness(theta_set, cert.D)
    res["theta=D"] = (w is None, f"|theta set| = {theta_set.order}, |D| = {cert.D.order}" + (f", witness {w}" if w is not None else ""))
    chi_set = definable_set(G, fs["chi"], params, oracles=oracles, strategy=strategy, budget=budget)
    w = _diff_witness(chi_set, cert.N)
    res["chi=N"] = (w is None, f"|chi set| = {chi_set.order}, |N| = {cert.N.order}" + (f", witness {w}" if w is not None else ""))
    prod = np.zeros(G.order, dtype=bool)
    K_arr = cert.K.array
    for c in chi_set.array:
        prod[G.mul_ids(int(c), K_arr)] = True
    semantic = chi_set.order < G.order and bool(prod.all())
    res["supplement"] = (semantic, f"chi set proper = {chi_set.order < G.order}, chi set . K = G: {bool(prod.all())}")
    ok = evaluate(G, fs["xi"], params, oracles=oracles, strategy=strategy, budget=budget)
    res["xi"] = (ok == semantic, f"xi = {ok}")
    report = CheckReport(res, skipped)
    return report.raise_on_failure() if strict else report


def spot_check_chi(cert: SupplementCertificate, elements, *, strategy: str = "naive", budget=None) -> dict:
    """``chi`` at a few chosen elements with another strategy; maps element -> (formula, in N)."""
    chi = build_formulas(cert)["chi"]
    oracles = formula_oracles(cert)
    out = {}
    for x in elements:
        val = {"w1": cert.d1, "w2": cert.d2, "z": cert.s, "x": int(x)}
        out[int(x)] = (evaluate(cert.G, chi, val, oracles=oracles, strategy=strategy, budget=budget), int(x) in cert.N)
    return out


__all__ = [
    "SupplementCertificate",
    "CheckReport",
    "build_supplement",
    "check_invariants",
    "lemma62_checks",
    "build_formulas",
    "theta0_formula",
    "formula_oracles",
    "verify_formula_level",
    "spot_check_chi",
]
