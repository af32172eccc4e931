"""Text descriptions of groups and subgroups.

A spec is one or more expressions separated by newlines or ``;``.  Each may be
named with ``name = expr`` and referred to later; the last one is the result.

Expressions::

    cyclic 12            sym 5          alt 5          psl2 7 | psl2 8
    perm 5: (1 2 3 4 5), (1 2)
    dih <ref>            product <ref> <ref>           wreath <ref> by <q>
    quotient <ref> by <elems>          table <file>
    sl2 <q>              icosahedral <q>               en <n>,<q>
    perfect <n>,<q>      thmD <n>,<p>                  family <name>[/q]:<index>

``<ref>`` is a name defined earlier, a builtin name such as ``C6``, ``S4``,
``A5`` or ``D8`` (dihedral of order 8), or a nested expression in
parentheses.  ``<elems>`` is a comma-separated list of element ids, cycles
(for permutation groups) or coordinate rows ``[a b ...]``.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .errors import GroupSpecError, MembershipError
from .kernel.build import (
    alternating,
    cyclic,
    dihedral,
    dihedral_of_cyclic,
    direct_product,
    from_permutations,
    parse_cycles,
    quotient,
    symmetric,
    wreath_cyclic,
)
from .kernel.group import FiniteGroup, Subset, from_table
from .kernel.subgroups import (
    center,
    closure,
    derived_subgroup,
    normal_closure,
    trivial_subgroup,
    whole_group,
)

_BUILTIN = re.compile(r"^([CSAD])(\d+)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise GroupSpecError(f"expected an integer for {what}, got {text!r}") from None


def _ints(text: str, count: int, what: str) -> list[int]:
    parts = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if len(parts) != count:
        raise GroupSpecError(f"{what} needs {count} integer(s), got {text!r}")
    return [_int(t, what) for t in parts]


def _field(q: int, allow_p3: bool = True):
    from .constructions.fields import gf, prime_power

    pe = prime_power(q)
    if pe is None:
        raise GroupSpecError(f"{q} is not a prime power")
    return gf(*pe)


def _split_top(text: str, sep: str = ",") -> list[str]:
    """Split at ``sep`` outside brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [p.strip() for p in out if p.strip()]


def parse_elements(G: FiniteGroup, text: str) -> list[int]:
    """Element references: ids, cycles for permutation groups, or ``[coords]``."""
    out = []
    degree = G._cache.get("perm_degree")
    for tok in _split_top(text):
        if re.fullmatch(r"\d+", tok):
            x = int(tok)
            if x >= G.order:
                raise MembershipError(f"element id {x} is not in {G.label}")
            out.append(x)
        elif tok.startswith("(") and degree is not None:
            out.append(G.id_of(parse_cycles(tok, degree)))
        elif tok.startswith("[") and tok.endswith("]") and G.coords is not None:
            coords = [_int(t, "coordinate") for t in re.split(r"[,\s]+", tok[1:-1].strip()) if t]
            if len(coords) != G.coords.shape[1]:
                raise GroupSpecError(f"{tok} has the wrong number of coordinates")
            out.append(G.id_of(coords))
        else:
            raise GroupSpecError(f"cannot read element {tok!r} in {G.label}")
    return out


def read_table(path: str) -> FiniteGroup:
    try:
        rows = [line.split() for line in Path(path).read_text().splitlines() if line.strip()]
    except OSError as exc:
        raise GroupSpecError(f"cannot read table file {path}: {exc}") from None
    try:
        table = np.array([[int(v) for v in r] for r in rows], dtype=np.int64)
    except ValueError:
        raise GroupSpecError(f"table file {path} holds a non-integer entry") from None
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise GroupSpecError(f"table file {path} is not a square matrix")
    return from_table(table, label=f"table {Path(path).name}")


class _Env:
    def __init__(self, names=None):
        self.names: dict[str, FiniteGroup] = dict(names or {})

    def ref(self, text: str) -> FiniteGroup:
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            return self.expr(text[1:-1])
        if text in self.names:
            return self.names[text]
        m = _BUILTIN.match(text)
        if m:
            kind, n = m.group(1), int(m.group(2))
            if kind == "C":
                return cyclic(n)
            if kind == "S":
                return symmetric(n)
            if kind == "A":
                return alternating(n)
            if n % 2:
                raise GroupSpecError("D<n> names the dihedral group of even order n")
            return dihedral(n // 2)
        if " " in text:
            return self.expr(text)
        raise GroupSpecError(f"unknown group name {text!r}")

    def expr(self, text: str) -> FiniteGroup:
        text = text.strip()
        if not text:
            raise GroupSpecError("empty group expression")
        head, _, rest = text.partition(" ")
        rest = rest.strip()
        if head == "cyclic":
            return cyclic(_int(rest, "cyclic"))
        if head == "sym":
            return symmetric(_int(rest, "sym"))
        if head == "alt":
            return alternating(_int(rest, "alt"))
        if head == "psl2":
            from .constructions.families import psl2_7, psl2_8

            q = _int(rest, "psl2")
            if q == 7:
                return psl2_7()
            if q == 8:
                return psl2_8()
            raise GroupSpecError("psl2 is available for q = 7 and q = 8")
        if head.startswith("perm"):
            m = re.fullmatch(r"perm\s+(\d+)\s*:(.*)", text, re.S)
            if not m:
                raise GroupSpecError(f"bad permutation spec {text!r}")
            return from_permutations(int(m.group(1)), _split_top(m.group(2)))
        if head == "dih":
            A = self.ref(rest)
            return dihedral_of_cyclic(A, label=f"Dih({A.label})")
        if head == "product":
            parts = _split_top(rest, " ")
            if len(parts) != 2:
                raise GroupSpecError("product takes two group references")
            return direct_product(self.ref(parts[0]), self.ref(parts[1]))
        if head == "wreath":
            m = re.fullmatch(r"(.+?)\s+by\s+(\d+)", rest)
            if not m:
                raise GroupSpecError("expected 'wreath <group> by <q>'")
            return wreath_cyclic(self.ref(m.group(1)), int(m.group(2)))
        if head == "quotient":
            m = re.fullmatch(r"(.+?)\s+by\s+(.+)", rest, re.S)
            if not m:
                raise GroupSpecError("expected 'quotient <group> by <elements>'")
            G = self.ref(m.group(1))
            N = closure(G, parse_elements(G, m.group(2)))
            Q, _ = quotient(G, N, label=f"{G.label}/N{N.order}")
            return Q
        if head == "table":
            return read_table(rest)
        if not rest:
            return self.ref(head)
        return self.construction(head, rest)

    def construction(self, head: str, rest: str) -> FiniteGroup:
        if head == "sl2":
            from .constructions.sl2 import sl2

            return sl2(_field(_int(rest, "sl2")))
        if head == "icosahedral":
            from .constructions.sl2 import find_binary_icosahedral, sl2, subgroup_as_group

            F = _field(_int(rest, "icosahedral"))
            SL = sl2(F)
            return subgroup_as_group(SL, find_binary_icosahedral(F, SL), label=f"2I<SL2({F.q})")[0]
        if head == "en":
            from .constructions.perfect import build_En

            n, q = _ints(rest, 2, "en")
            F = _field(q)
            return build_En(n, F, allow_p3=F.p == 3).group()
        if head == "perfect":
            from .constructions.perfect import build_Hn

            n, q = _ints(rest, 2, "perfect")
            F = _field(q)
            return build_Hn(n, F, allow_p3=F.p == 3).Hn
        if head == "thmD":
            from .constructions.thmd import thmD_finite_instance

            n, p = _ints(rest, 2, "thmD")
            return thmD_finite_instance(n, p).F
        if head == "family":
            from .constructions.families import parse_family

            fam, idx = parse_family(rest)
            if idx is None:
                raise GroupSpecError("a family reference needs an index, as in family cyc2:3")
            return fam(idx)
        raise GroupSpecError(f"unknown group expression {head!r}")


def parse_group(text: str, names=None) -> FiniteGroup:
    """Evaluate a group spec; returns the group of the last expression."""
    env = _Env(names)
    result = None
    statements = [s.strip() for s in re.split(r"[;\n]", text) if s.strip() and not s.strip().startswith("#")]
    if not statements:
        raise GroupSpecError("empty group spec")
    for st in statements:
        name = None
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)", st, re.S)
        if m:
            name, st = m.group(1), m.group(2)
        result = env.expr(st)
        if name is not None:
            env.names[name] = result
    return result


def parse_subgroup(G: FiniteGroup, text: str) -> Subset:
    """``whole``, ``trivial``, ``derived``, ``center``, ``radical``, ``fitting``,
    ``frattini``, ``generated: elems`` or ``normal: elems`` (normal closure)."""
    from .structure import fitting, frattini, soluble_radical

    text = text.strip()
    simple = {
        "whole": whole_group,
        "trivial": trivial_subgroup,
        "derived": derived_subgroup,
        "center": center,
        "radical": soluble_radical,
        "fitting": fitting,
        "frattini": frattini,
    }
    if text in simple:
        return simple[text](G)
    kind, sep, rest = text.partition(":")
    if sep and kind.strip() == "generated":
        return closure(G, parse_elements(G, rest))
    if sep and kind.strip() == "normal":
        return normal_closure(G, parse_elements(G, rest))
    raise GroupSpecError(f"unknown subgroup spec {text!r}")


__all__ = ["parse_group", "parse_subgroup", "parse_elements", "read_table"]
