"""Terms and formulas of the first-order language of groups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

# --------------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Inv:
    arg: "Term"


@dataclass(frozen=True)
class Pow:
    base: "Term"
    exp: int


@dataclass(frozen=True)
class Comm:
    """``[a, b] = a^-1 b^-1 a b``."""

    a: "Term"
    b: "Term"


@dataclass(frozen=True)
class Conj:
    """``a^b = b^-1 a b``."""

    a: "Term"
    b: "Term"


Term = Union[Var, One, Mul, Inv, Pow, Comm, Conj]

# ------------------------------------------------------------------ formulas


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Oracle:
    name: str
    arg: Term


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Eq, Oracle, Not, And, Or, Implies, Iff, Forall, Exists]
QUANTIFIERS = (Forall, Exists)

# ------------------------------------------------------------ small builders


def v(name: str) -> Var:
    return Var(name)


def mul(*terms: Term) -> Term:
    out = terms[0]
    for t in terms[1:]:
        out = Mul(out, t)
    return out


def neq(a: Term, b: Term) -> Formula:
    return Not(Eq(a, b))


def conj(*parts: Formula) -> Formula:
    parts = tuple(parts)
    if not parts:
        return Eq(One(), One())
    return parts[0] if len(parts) == 1 else And(parts)


def disj(*parts: Formula) -> Formula:
    parts = tuple(parts)
    if not parts:
        return Not(Eq(One(), One()))
    return parts[0] if len(parts) == 1 else Or(parts)


def forall(names, body: Formula) -> Formula:
    for n in reversed(names.split() if isinstance(names, str) else list(names)):
        body = Forall(n, body)
    return body


def exists(names, body: Formula) -> Formula:
    for n in reversed(names.split() if isinstance(names, str) else list(names)):
        body = Exists(n, body)
    return body


# ------------------------------------------------------------------ analysis


def term_children(t: Term) -> tuple:
    if isinstance(t, (Var, One)):
        return ()
    if isinstance(t, Mul):
        return (t.left, t.right)
    if isinstance(t, Inv):
        return (t.arg,)
    if isinstance(t, Pow):
        return (t.base,)
    return (t.a, t.b)


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.name])
    out: frozenset = frozenset()
    for c in term_children(t):
        out |= term_vars(c)
    return out


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for c in term_children(t):
        yield from subterms(c)


def term_size(t: Term) -> int:
    return 1 + sum(term_size(c) for c in term_children(t))


def formula_children(f: Formula) -> tuple:
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return f.parts
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, (Forall, Exists)):
        return (f.body,)
    return ()


def atom_terms(f: Formula) -> tuple:
    if isinstance(f, Eq):
        return (f.left, f.right)
    if isinstance(f, Oracle):
        return (f.arg,)
    return ()


def free_vars(f) -> frozenset:
    """Free variables of a formula (or the variables of a term)."""
    if isinstance(f, (Var, One, Mul, Inv, Pow, Comm, Conj)):
        return term_vars(f)
    if isinstance(f, (Eq, Oracle)):
        out: frozenset = frozenset()
        for t in atom_terms(f):
            out |= term_vars(t)
        return out
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    out = frozenset()
    for c in formula_children(f):
        out |= free_vars(c)
    return out


def bound_vars(f: Formula) -> frozenset:
    out: frozenset = frozenset()
    if isinstance(f, (Forall, Exists)):
        out |= {f.var}
    for c in formula_children(f):
        out |= bound_vars(c)
    return out


def oracle_names(f: Formula) -> frozenset:
    if isinstance(f, Oracle):
        return frozenset([f.name])
    out: frozenset = frozenset()
    for c in formula_children(f):
        out |= oracle_names(c)
    return out


def quantifier_depth(f: Formula) -> int:
    own = 1 if isinstance(f, (Forall, Exists)) else 0
    return own + max((quantifier_depth(c) for c in formula_children(f)), default=0)


def has_quantifier(f: Formula) -> bool:
    if isinstance(f, (Forall, Exists)):
        return True
    return any(has_quantifier(c) for c in formula_children(f))


def atoms(f: Formula) -> Iterator[Formula]:
    if isinstance(f, (Eq, Oracle)):
        yield f
    for c in formula_children(f):
        yield from atoms(c)


def count_atoms(f: Formula) -> int:
    return sum(1 for _ in atoms(f))


# -------------------------------------------------------------- substitution


def replace_in_term(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    if isinstance(t, (Var, One)):
        return t
    if isinstance(t, Mul):
        return Mul(replace_in_term(t.left, old, new), replace_in_term(t.right, old, new))
    if isinstance(t, Inv):
        return Inv(replace_in_term(t.arg, old, new))
    if isinstance(t, Pow):
        return Pow(replace_in_term(t.base, old, new), t.exp)
    return type(t)(replace_in_term(t.a, old, new), replace_in_term(t.b, old, new))


def replace_term(f: Formula, old: Term, new: Term) -> Formula:
    """Replace every occurrence of the term ``old`` (no capture check).

    Callers guarantee that no quantifier inside ``f`` binds a variable of
    ``old`` or ``new``.
    """
    if isinstance(f, Eq):
        return Eq(replace_in_term(f.left, old, new), replace_in_term(f.right, old, new))
    if isinstance(f, Oracle):
        return Oracle(f.name, replace_in_term(f.arg, old, new))
    if isinstance(f, Not):
        return Not(replace_term(f.arg, old, new))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(replace_term(p, old, new) for p in f.parts))
    if isinstance(f, (Implies, Iff)):
        return type(f)(replace_term(f.left, old, new), replace_term(f.right, old, new))
    return type(f)(f.var, replace_term(f.body, old, new))


def substitute(f: Formula, name: str, term: Term) -> Formula:
    """Capture-avoiding substitution of ``term`` for the free variable ``name``."""
    tv = term_vars(term)
    if isinstance(f, (Eq, Oracle)):
        return replace_term(f, Var(name), term)
    if isinstance(f, Not):
        return Not(substitute(f.arg, name, term))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(substitute(p, name, term) for p in f.parts))
    if isinstance(f, (Implies, Iff)):
        return type(f)(substitute(f.left, name, term), substitute(f.right, name, term))
    if f.var == name:
        return f
    if f.var in tv and name in free_vars(f.body):
        fresh = _fresh(f.var, tv | free_vars(f.body) | bound_vars(f.body))
        body = substitute(f.body, f.var, Var(fresh))
        return type(f)(fresh, substitute(body, name, term))
    return type(f)(f.var, substitute(f.body, name, term))


def _fresh(base: str, avoid) -> str:
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"
