"""First-order language of groups: syntax, parsing and evaluation."""

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
    free_vars,
    quantifier_depth,
    substitute,
)
from .evaluate import DEFAULT_STRATEGY, STRATEGIES, Budget, definable_set, evaluate
from .parser import DEFAULT_ORACLES, format_formula, format_term, parse, parse_term

__all__ = [
    "And", "Comm", "Conj", "Eq", "Exists", "Forall", "Iff", "Implies", "Inv", "Mul", "Not", "One", "Or",
    "Oracle", "Pow", "Var", "free_vars", "quantifier_depth", "substitute",
    "DEFAULT_STRATEGY", "STRATEGIES", "Budget", "definable_set", "evaluate",
    "DEFAULT_ORACLES", "format_formula", "format_term", "parse", "parse_term",
]
