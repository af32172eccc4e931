"""Recursive-descent parser and printer for the formula grammar.

::

    formula := 'A' var '.' formula | 'E' var '.' formula | disj
    disj    := conj ('|' conj)*
    conj    := lit ('&' lit)*
    lit     := unary (('->' | '<->') unary)?
    unary   := '!' unary | '(' formula ')' | quantified | atom
    atom    := term '=' term | term '!=' term | oracle '(' term ')'
    term    := factor ('*' factor)*
    factor  := primary ('^' (int | '-' int | primary))*
    primary := '1' | var | '[' term ',' term ']' | '(' term ')'

Arrows do not chain: ``a -> b -> c`` is rejected, so any compound operand
of an arrow has to be parenthesised.  An arrow may not stand bare next to
``&`` or ``|`` either: ``a & b -> c`` must be written ``(a & b) -> c`` or
``a & (b -> c)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError, UnknownOracle
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
)

DEFAULT_ORACLES = frozenset({"rad", "fit", "inK", "inL", "inS"})

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow><->|->)|(?P<neq>!=)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<sym>[.()\[\],*^=!&|\-]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        tok = m.group(kind)
        start = m.end() - len(tok)
        if kind in ("arrow", "neq", "sym"):
            kind = tok
        toks.append(_Tok(kind, tok, start))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


def _error(text: str, pos: int, msg: str) -> FormulaSyntaxError:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return FormulaSyntaxError(msg, line, col)


class _Parser:
    def __init__(self, text: str, oracles):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.oracles = oracles
        self.bare_arrow = False
        self.arrow_at = 0

    # helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k=1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise _error(self.text, tok.pos, f"{msg}, found {found}")

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self.fail(f"expected {kind!r}")
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    def is_quantifier(self) -> bool:
        return (
            self.tok.kind == "ident"
            and self.tok.text in ("A", "E")
            and self.peek().kind == "ident"
            and self.peek(2).kind == "."
        )

    # formulas
    def formula(self):
        if self.is_quantifier():
            q = self.tok.text
            self.i += 1
            name = self.var_name()
            self.expect(".")
            body = self.formula()
            return Forall(name, body) if q == "A" else Exists(name, body)
        return self.disj()

    # An arrow binds tighter than '&' and '|' in this grammar, which is the
    # reverse of the usual convention; so a bare arrow next to either is
    # rejected rather than silently read one way.
    def _joined(self, sub, sep: str, node):
        parts = [sub()]
        arrow = self.bare_arrow
        while self.tok.kind == sep:
            if arrow:
                self.fail(f"an arrow next to {sep!r} needs parentheses")
            self.i += 1
            parts.append(sub())
            if self.bare_arrow:
                self.fail(f"an arrow next to {sep!r} needs parentheses", self.toks[self.arrow_at])
        self.bare_arrow = arrow and len(parts) == 1
        return parts[0] if len(parts) == 1 else node(tuple(parts))

    def disj(self):
        return self._joined(self.conj, "|", Or)

    def conj(self):
        return self._joined(self.lit, "&", And)

    def lit(self):
        left = self.unary()
        if self.tok.kind in ("->", "<->"):
            op = self.tok.kind
            at = self.i
            self.i += 1
            right = self.unary()
            if self.tok.kind in ("->", "<->"):
                self.fail("chained arrows need parentheses")
            self.bare_arrow, self.arrow_at = True, at
            return Implies(left, right) if op == "->" else Iff(left, right)
        self.bare_arrow = False
        return left

    def unary(self):
        if self.accept("!"):
            return Not(self.unary())
        if self.is_quantifier():
            return self.formula()
        if self.tok.kind == "(":
            start = self.i
            try:
                return self.atom()
            except FormulaSyntaxError as atom_err:
                atom_pos = self.i
                self.i = start + 1
                try:
                    inner = self.formula()
                    self.expect(")")
                    return inner
                except FormulaSyntaxError as form_err:
                    raise form_err if self.i >= atom_pos else atom_err
        return self.atom()

    def atom(self):
        if self.tok.kind == "ident" and self.peek().kind == "(" and self.tok.text not in ("A", "E"):
            name = self.tok.text
            if name not in self.oracles:
                raise UnknownOracle(f"unknown oracle {name!r}")
            self.i += 2
            arg = self.term()
            self.expect(")")
            return Oracle(name, arg)
        left = self.term()
        if self.accept("="):
            return Eq(left, self.term())
        if self.accept("!="):
            return Not(Eq(left, self.term()))
        self.fail("expected '=' or '!='")

    # terms
    def var_name(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.text in ("A", "E"):
            self.fail("expected a variable name")
        self.i += 1
        return tok.text

    def term(self):
        out = self.factor()
        while self.accept("*"):
            out = Mul(out, self.factor())
        return out

    def factor(self):
        out = self.primary()
        while self.accept("^"):
            if self.tok.kind == "-":
                self.i += 1
                n = int(self.expect("num").text)
                out = Inv(out) if n == 1 else Pow(out, -n)
            elif self.tok.kind == "num" and self.tok.text != "1":
                out = Pow(out, int(self.tok.text))
                self.i += 1
            elif self.tok.kind == "num":
                # x^1 is a power; the identity as a conjugator would be pointless
                out = Pow(out, 1)
                self.i += 1
            else:
                out = Conj(out, self.primary())
        return out

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            if tok.text != "1":
                self.fail("the only numeral term is 1")
            self.i += 1
            return One()
        if tok.kind == "ident":
            if self.peek().kind == "(" or tok.text in ("A", "E"):
                self.fail("expected a term")
            self.i += 1
            return Var(tok.text)
        if self.accept("["):
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect("]")
            return Comm(a, b)
        if self.accept("("):
            t = self.term()
            self.expect(")")
            return t
        self.fail("expected a term")


def parse(text: str, oracles=None):
    """Parse formula text into an AST; raises ``FormulaSyntaxError`` / ``UnknownOracle``."""
    p = _Parser(text, DEFAULT_ORACLES if oracles is None else frozenset(oracles))
    f = p.formula()
    if p.tok.kind != "eof":
        p.fail("unexpected trailing input")
    return f


def parse_term(text: str):
    p = _Parser(text, DEFAULT_ORACLES)
    t = p.term()
    if p.tok.kind != "eof":
        p.fail("unexpected trailing input")
    return t


# ------------------------------------------------------------------- printing


def format_term(t) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, One):
        return "1"
    if isinstance(t, Mul):
        right = format_term(t.right)
        if isinstance(t.right, Mul):
            right = f"({right})"
        return f"{format_term(t.left)}*{right}"
    if isinstance(t, Inv):
        return f"{_base(t.arg)}^-1"
    if isinstance(t, Pow):
        return f"{_base(t.base)}^{t.exp}"
    if isinstance(t, Comm):
        return f"[{format_term(t.a)},{format_term(t.b)}]"
    return f"{_base(t.a)}^{_primary(t.b)}"


def _base(t) -> str:
    s = format_term(t)
    return f"({s})" if isinstance(t, Mul) else s


def _primary(t) -> str:
    s = format_term(t)
    # a bare 1 after ^ would read as the exponent 1
    return s if isinstance(t, (Var, Comm)) else f"({s})"


def format_formula(f) -> str:
    if isinstance(f, Eq):
        return f"{format_term(f.left)} = {format_term(f.right)}"
    if isinstance(f, Oracle):
        return f"{f.name}({format_term(f.arg)})"
    if isinstance(f, Not):
        if isinstance(f.arg, Eq):
            return f"{format_term(f.arg.left)} != {format_term(f.arg.right)}"
        return f"!{_unary(f.arg)}"
    if isinstance(f, And):
        return " & ".join(_lit(p) for p in f.parts)
    if isinstance(f, Or):
        return " | ".join(_conj(p) for p in f.parts)
    if isinstance(f, (Implies, Iff)):
        op = "->" if isinstance(f, Implies) else "<->"
        return f"{_unary(f.left)} {op} {_unary(f.right)}"
    q = "A" if isinstance(f, Forall) else "E"
    return f"{q} {f.var}. {format_formula(f.body)}"


def _unary(f) -> str:
    s = format_formula(f)
    if isinstance(f, Oracle) or (isinstance(f, Not) and isinstance(f.arg, (Eq, Oracle))):
        return s
    return f"({s})"


def _lit(f) -> str:
    s = format_formula(f)
    if isinstance(f, (Eq, Oracle, Not)):
        return s
    return f"({s})"


def _conj(f) -> str:
    if isinstance(f, (Or, Forall, Exists)):
        return f"({format_formula(f)})"
    return _lit(f) if not isinstance(f, And) else format_formula(f)
