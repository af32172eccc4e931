"""Tarskian evaluation of formulas over a finite group.

Three strategies are available and must always agree:

``naive``
    nested scalar iteration over the carrier with short-circuiting.
``classes``
    ``naive`` plus the conjugacy reduction: a quantifier whose body has no
    other free variable (and only conjugation-invariant oracles) ranges over
    class representatives, and a quantifier whose variable only occurs as a
    conjugator of one fixed term ``t`` ranges over the class of ``t``.
``vector``
    the outermost free quantifier is evaluated on the whole carrier at once
    with numpy; inner quantifiers loop.  A compound subformula whose
    non-parameter variables all sit inside one common term ``t`` is computed
    once as a mask over the carrier and then looked up at ``t`` (for
    quantifier-free subformulas only when ``t`` is not a bare variable).
"""

from __future__ import annotations

import numpy as np

from ..config import CAPS
from ..errors import DepthBudgetExceeded, MembershipError, UnboundOracle, UnboundVariable
from ..kernel.group import FiniteGroup, Subset
from .ast import (
    And,
    Comm,
    Conj,
    Eq,
    Exists,
    Forall,
    Iff,
    Implies,
    Inv,
    Mul,
    Not,
    One,
    Or,
    Oracle,
    Pow,
    Var,
    atom_terms,
    bound_vars,
    count_atoms,
    formula_children,
    free_vars,
    has_quantifier,
    oracle_names,
    quantifier_depth,
    replace_term,
    subterms,
    term_size,
    term_vars,
)

STRATEGIES = ("naive", "classes", "vector")
DEFAULT_STRATEGY = "vector"


class Budget:
    """Counts atomic evaluation steps and aborts past ``limit``."""

    def __init__(self, limit: int | None = None):
        self.limit = CAPS.work_budget if limit is None else int(limit)
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise DepthBudgetExceeded(f"evaluation exceeded the work budget of {self.limit} steps")


def oracle_masks(G: FiniteGroup, oracles) -> dict:
    """Turn an oracle table (name -> Subset, mask or ids) into boolean masks."""
    out = {}
    for name, s in (oracles or {}).items():
        if isinstance(s, Subset):
            if s.parent is not G:
                raise MembershipError(f"oracle {name!r} is a subset of {s.parent.label}, not of {G.label}")
            out[name] = s.mask
            continue
        arr = np.asarray(s)
        if arr.dtype == bool:
            if arr.shape != (G.order,):
                raise MembershipError(f"oracle {name!r} mask has the wrong length")
            out[name] = arr
        else:
            mask = np.zeros(G.order, dtype=bool)
            ids = arr.astype(np.int64).ravel()
            if ids.size and (ids.min() < 0 or ids.max() >= G.order):
                raise MembershipError(f"oracle {name!r} lists ids outside {G.label}")
            mask[ids] = True
            out[name] = mask
    return out


def _prepare(G, f, valuation, oracles, extra=()):
    valuation = dict(valuation or {})
    missing = free_vars(f) - set(valuation) - set(extra)
    if missing:
        raise UnboundVariable(f"unbound variable(s): {', '.join(sorted(missing))}")
    for name, x in valuation.items():
        if not 0 <= int(x) < G.order:
            raise MembershipError(f"value of {name!r} is not an element of {G.label}")
    masks = oracle_masks(G, oracles)
    unbound = oracle_names(f) - set(masks)
    if unbound:
        raise UnboundOracle(f"unbound oracle(s): {', '.join(sorted(unbound))}")
    return {k: int(x) for k, x in valuation.items()}, masks


# ----------------------------------------------------------------- scalar


class _Scalar:
    def __init__(self, G: FiniteGroup, masks: dict, budget: Budget, use_classes: bool):
        self.G = G
        self.masks = masks
        self.budget = budget
        self.use_classes = use_classes
        self._plans: dict = {}
        self._normal = {n: _is_conjugation_invariant(G, m) for n, m in masks.items()} if use_classes else {}
        self._fresh = 0

    def term(self, t, env) -> int:
        G = self.G
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, One):
            return 0
        if isinstance(t, Mul):
            return G.mul(self.term(t.left, env), self.term(t.right, env))
        if isinstance(t, Inv):
            return G.inv(self.term(t.arg, env))
        if isinstance(t, Pow):
            return G.power(self.term(t.base, env), t.exp)
        a, b = self.term(t.a, env), self.term(t.b, env)
        if isinstance(t, Comm):
            return G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b))
        return G.mul(G.mul(G.inv(b), a), b)

    def holds(self, f, env) -> bool:
        if isinstance(f, Eq):
            self.budget.tick()
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, Oracle):
            self.budget.tick()
            return bool(self.masks[f.name][self.term(f.arg, env)])
        if isinstance(f, Not):
            return not self.holds(f.arg, env)
        if isinstance(f, And):
            return all(self.holds(p, env) for p in f.parts)
        if isinstance(f, Or):
            return any(self.holds(p, env) for p in f.parts)
        if isinstance(f, Implies):
            return (not self.holds(f.left, env)) or self.holds(f.right, env)
        if isinstance(f, Iff):
            return self.holds(f.left, env) == self.holds(f.right, env)
        var, body, domain = self._domain(f, env)
        want = isinstance(f, Exists)
        for c in domain:
            env2 = dict(env)
            env2[var] = c
            if self.holds(body, env2) == want:
                return want
        return not want

    def _domain(self, f, env):
        if not self.use_classes:
            return f.var, f.body, range(self.G.order)
        plan = self._plan(f)
        if plan is None:
            return f.var, f.body, range(self.G.order)
        if plan[0] == "reps":
            from ..kernel.subgroups import class_representatives

            return f.var, f.body, class_representatives(self.G)
        _, t, body, fresh = plan
        from ..kernel.subgroups import conjugacy_class

        return fresh, body, sorted(conjugacy_class(self.G, self.term(t, env)).members)

    def _plan(self, f):
        hit = self._plans.get(id(f))
        if hit is not None and hit[0] is f:
            return hit[1]
        plan = None
        names = oracle_names(f.body)
        if not free_vars(f) and all(self._normal[n] for n in names):
            plan = ("reps",)
        else:
            plan = self._class_pattern(f)
        self._plans[id(f)] = (f, plan)
        return plan

    def _class_pattern(self, f):
        x = Var(f.var)
        candidates = []
        for a in _formula_atoms(f.body):
            for root in atom_terms(a):
                for u in subterms(root):
                    if isinstance(u, Conj) and u.b == x and f.var not in term_vars(u.a):
                        candidates.append(u.a)
                    elif (
                        isinstance(u, Mul)
                        and u.right == Inv(x)
                        and isinstance(u.left, Mul)
                        and u.left.left == x
                        and f.var not in term_vars(u.left.right)
                    ):
                        candidates.append(u.left.right)
        for t in candidates:
            if bound_vars(f.body) & (term_vars(t) | {f.var}):
                continue
            self._fresh += 1
            fresh = Var(f"#c{self._fresh}")
            body = replace_term(f.body, Conj(t, x), fresh)
            body = replace_term(body, Mul(Mul(x, t), Inv(x)), fresh)
            if f.var not in free_vars(body):
                return ("class", t, body, fresh.name)
        return None


def _formula_atoms(f):
    if isinstance(f, (Eq, Oracle)):
        yield f
    for c in formula_children(f):
        yield from _formula_atoms(c)


def _is_conjugation_invariant(G: FiniteGroup, mask: np.ndarray) -> bool:
    ids = np.flatnonzero(mask)
    if ids.size == 0:
        return True
    gens = np.asarray(G.generators, dtype=np.int64)
    if gens.size == 0:
        return True
    return bool(mask[G.conj_ids(ids[:, None], gens[None, :])].all())


# ----------------------------------------------------------------- vector


class _Vector:
    def __init__(self, G: FiniteGroup, masks: dict, budget: Budget, params: frozenset):
        self.G = G
        self.masks = masks
        self.budget = budget
        self.params = params
        self.all = G.elements
        self._plans: dict = {}
        self._intern: dict = {}
        self._values: dict = {}

    # terms ------------------------------------------------------------------
    def mul(self, a, b):
        if isinstance(a, int) and isinstance(b, int):
            return self.G.mul(a, b)
        return self.G.mul_ids(a, b)

    def inv(self, a):
        return self.G.inv(a) if isinstance(a, int) else self.G.inv_ids(a)

    def term(self, t, env):
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, One):
            return 0
        if isinstance(t, Mul):
            return self.mul(self.term(t.left, env), self.term(t.right, env))
        if isinstance(t, Inv):
            return self.inv(self.term(t.arg, env))
        if isinstance(t, Pow):
            x = self.term(t.base, env)
            return self.G.power(x, t.exp) if isinstance(x, int) else self.G.power_ids(x, t.exp)
        a, b = self.term(t.a, env), self.term(t.b, env)
        if isinstance(t, Comm):
            return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
        return self.mul(self.mul(self.inv(b), a), b)

    # formulas ---------------------------------------------------------------
    def holds(self, f, env, batched: bool, memo: bool = True):
        """Truth of ``f``: a bool, or a bool array when ``batched``."""
        if isinstance(f, Eq):
            a, b = self.term(f.left, env), self.term(f.right, env)
            res = a == b
            self.budget.tick(np.size(res))
            return res if isinstance(res, np.ndarray) else bool(res)
        if isinstance(f, Oracle):
            x = self.term(f.arg, env)
            self.budget.tick(np.size(x))
            res = self.masks[f.name][x]
            return res if isinstance(res, np.ndarray) else bool(res)
        if memo:
            plan = self._plan(f)
            if plan is not None:
                return self._lookup(plan, env)
        if isinstance(f, Not):
            r = self.holds(f.arg, env, batched)
            return ~r if isinstance(r, np.ndarray) else not r
        if isinstance(f, And):
            acc = True
            for p in f.parts:
                acc = acc & self.holds(p, env, batched)
                if not np.any(acc):
                    return acc
            return acc
        if isinstance(f, Or):
            acc = False
            for p in f.parts:
                acc = acc | self.holds(p, env, batched)
                if np.all(acc):
                    return acc
            return acc
        if isinstance(f, Implies):
            left = self.holds(f.left, env, batched)
            if not np.any(left):
                return ~left if isinstance(left, np.ndarray) else True
            right = self.holds(f.right, env, batched)
            return (~left | right) if isinstance(left, np.ndarray) else (right if left else True)
        if isinstance(f, Iff):
            left = self.holds(f.left, env, batched)
            right = self.holds(f.right, env, batched)
            return left == right
        return self._quantifier(f, env, batched)

    def _quantifier(self, f, env, batched):
        want = isinstance(f, Exists)
        if not batched:
            env2 = dict(env)
            env2[f.var] = self.all
            r = self.holds(f.body, env2, True)
            if isinstance(r, np.ndarray):
                return bool(r.any()) if want else bool(r.all())
            return bool(r)
        body, domain, early = self._guard(f, env)
        if early is not None:
            return early
        acc = not want
        for c in domain:
            env2 = dict(env)
            env2[f.var] = int(c)
            r = self.holds(body, env2, True)
            acc = (acc | r) if want else (acc & r)
            if want and np.all(acc):
                break
            if not want and not np.any(acc):
                break
        return acc

    def _guard(self, f, env):
        """Split the body into parts that restrict the loop.

        For ``E x (A & B(x) & C(x, ...))`` with ``A`` free of ``x`` and ``B``
        mentioning no batched variable, ``A`` is decided once and ``x`` only
        ranges over the set defined by ``B``.  ``A x ((A & B(x)) -> C)`` is
        treated the same way.  Returns ``(body, domain, early_result)``.
        """
        want = isinstance(f, Exists)
        all_ids = range(self.G.order)
        if want and isinstance(f.body, And):
            parts, rest = f.body.parts, None
        elif not want and isinstance(f.body, Implies):
            left = f.body.left
            parts, rest = (left.parts if isinstance(left, And) else (left,)), f.body.right
        else:
            return f.body, all_ids, None
        batched = {k for k, v in env.items() if isinstance(v, np.ndarray)}
        keep, mask = [], None
        for p in parts:
            fv = free_vars(p)
            if f.var not in fv:
                r = self.holds(p, env, True)
                if not np.any(r):
                    # the conjunction fails everywhere: E is false, A is vacuous
                    return None, None, (r if want else ~r if isinstance(r, np.ndarray) else True)
                if isinstance(r, np.ndarray) and not r.all():
                    keep.append(p)
                continue
            if not (fv & batched):
                env2 = dict(env)
                env2[f.var] = self.all
                r = np.broadcast_to(np.asarray(self.holds(p, env2, True), dtype=bool), (self.G.order,))
                mask = r if mask is None else mask & r
                continue
            keep.append(p)
        domain = all_ids if mask is None else np.flatnonzero(mask)
        if want:
            body = conj_parts(keep)
        else:
            body = Implies(conj_parts(keep), rest) if keep else rest
        return body, domain, None

    # memoisation ------------------------------------------------------------
    def _plan(self, f):
        hit = self._plans.get(id(f))
        if hit is not None and hit[0] is f:
            return hit[1]
        plan = self._make_plan(f)
        self._plans[id(f)] = (f, plan)
        return plan

    def _make_plan(self, f):
        quantified = has_quantifier(f)
        free = free_vars(f)
        dyn = free - self.params
        if not dyn:
            return ("const", self._canon(f)) if quantified else None
        if bound_vars(f) & free:
            return None
        seen = set()
        candidates = []
        for a in _formula_atoms(f):
            for root in atom_terms(a):
                for u in subterms(root):
                    vs = term_vars(u)
                    if vs and vs <= free and vs & dyn and u not in seen:
                        seen.add(u)
                        candidates.append(u)
        candidates.sort(key=term_size)
        taken = free | bound_vars(f)
        k = 0
        while f"#m{k}" in taken:
            k += 1
        hole = Var(f"#m{k}")
        for u in candidates:
            if not quantified and isinstance(u, Var):
                # a bare variable gains nothing without a quantifier to save
                continue
            g = replace_term(f, u, hole)
            if not (free_vars(g) & dyn):
                return ("mask", u, hole.name, self._canon(g))
        return None

    def _canon(self, g):
        return self._intern.setdefault(g, g)

    def _lookup(self, plan, env):
        g = plan[-1]
        val = self._values.get(id(g))
        if val is None:
            if plan[0] == "const":
                val = self.holds(g, env, False, memo=False)
            else:
                env2 = {k: env[k] for k in self.params if k in env}
                env2[plan[2]] = self.all
                r = self.holds(g, env2, True, memo=False)
                val = np.broadcast_to(np.asarray(r, dtype=bool), (self.G.order,)).copy()
            self._values[id(g)] = val
        if plan[0] == "const":
            return val
        x = self.term(plan[1], env)
        res = val[x]
        return res if isinstance(res, np.ndarray) else bool(res)


def conj_parts(parts):
    if not parts:
        return Eq(One(), One())
    return parts[0] if len(parts) == 1 else And(tuple(parts))


# ----------------------------------------------------------------- public API


def _check_strategy(strategy):
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")


def _naive_estimate(G, f, extra_depth=0) -> int:
    return G.order ** (quantifier_depth(f) + extra_depth) * max(count_atoms(f), 1)


def evaluate(G: FiniteGroup, f, valuation=None, oracles=None, *, strategy: str = DEFAULT_STRATEGY, budget=None):
    """Truth value of ``f`` in ``G`` under ``valuation`` with oracle table ``oracles``."""
    _check_strategy(strategy)
    env, masks = _prepare(G, f, valuation, oracles)
    b = budget if isinstance(budget, Budget) else Budget(budget)
    if strategy == "naive" and _naive_estimate(G, f) > b.limit:
        raise DepthBudgetExceeded(f"estimated work {_naive_estimate(G, f)} exceeds budget {b.limit}")
    if strategy == "vector":
        return bool(_Vector(G, masks, b, frozenset(env)).holds(f, env, False))
    return bool(_Scalar(G, masks, b, strategy == "classes").holds(f, env))


def definable_set(
    G: FiniteGroup,
    f,
    params=None,
    distinguished: str = "x",
    oracles=None,
    *,
    strategy: str = DEFAULT_STRATEGY,
    budget=None,
) -> Subset:
    """``{h in G : f(params, distinguished=h)}``."""
    _check_strategy(strategy)
    params = {k: x for k, x in (params or {}).items() if k != distinguished}
    env, masks = _prepare(G, f, params, oracles, extra=(distinguished,))
    b = budget if isinstance(budget, Budget) else Budget(budget)
    if strategy == "naive" and _naive_estimate(G, f, 1) > b.limit:
        raise DepthBudgetExceeded(f"estimated work {_naive_estimate(G, f, 1)} exceeds budget {b.limit}")
    if strategy == "vector":
        ev = _Vector(G, masks, b, frozenset(env))
        env[distinguished] = G.elements
        r = ev.holds(f, env, True)
        mask = np.broadcast_to(np.asarray(r, dtype=bool), (G.order,)).copy()
        return Subset.from_mask(G, mask)
    ev = _Scalar(G, masks, b, strategy == "classes")
    mask = np.zeros(G.order, dtype=bool)
    for h in range(G.order):
        env[distinguished] = h
        mask[h] = ev.holds(f, env)
    return Subset.from_mask(G, mask)
