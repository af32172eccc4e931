"""Command-line interface.

Output is line-oriented ``key=value`` text, or a single JSON object with
``--json``.  Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time

from . import __version__
from .config import CAPS
from .errors import (
    DepthBudgetExceeded,
    FormulaSyntaxError,
    GroupLogicError,
    GroupSpecError,
    MembershipError,
    TooLarge,
    UnboundOracle,
    UnboundVariable,
    UnknownOracle,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

_USAGE_ERRORS = (GroupSpecError, FormulaSyntaxError, UnknownOracle, UnboundVariable, UnboundOracle, MembershipError, ValueError)
_CAP_ERRORS = (TooLarge, DepthBudgetExceeded)


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.record: dict = {}
        self._multiline: set = set()

    def put(self, key: str, value) -> None:
        self.record[key] = value

    def put_lines(self, key: str, lines: list) -> None:
        """A list printed one entry per line as ``key: entry``."""
        self.record[key] = list(lines)
        self._multiline.add(key)

    def emit(self) -> None:
        if self.as_json:
            print(json.dumps(self.record, sort_keys=False))
            return
        for k, v in self.record.items():
            if k in self._multiline:
                for item in v:
                    print(f"{k}: {item}")
            else:
                print(f"{k}={_fmt(v)}")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


def _group(text: str):
    from .groupspec import parse_group

    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                text = fh.read()
        except OSError as exc:
            raise GroupSpecError(f"cannot read {text[1:]}: {exc}") from None
    return parse_group(text)


def _oracle_names(items) -> set:
    return {item.partition("=")[0].strip() for item in items or []}


def _formula(text: str, extra_oracles=()):
    from .catalog import catalog_formula, is_catalog_name
    from .logic.parser import DEFAULT_ORACLES, parse

    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                text = fh.read()
        except OSError as exc:
            raise GroupSpecError(f"cannot read {text[1:]}: {exc}") from None
    if is_catalog_name(text):
        return catalog_formula(text)
    return parse(text, DEFAULT_ORACLES | set(extra_oracles))


def _assignments(G, items):
    from .groupspec import parse_elements

    out = {}
    for item in items or []:
        name, sep, val = item.partition("=")
        if not sep:
            raise GroupSpecError(f"expected name=element, got {item!r}")
        (x,) = parse_elements(G, val)
        out[name.strip()] = x
    return out


def _oracles(G, items):
    from .groupspec import parse_subgroup
    from .structure import standard_oracles

    extra = {}
    for item in items or []:
        name, sep, val = item.partition("=")
        if not sep:
            raise GroupSpecError(f"expected name=subgroup, got {item!r}")
        extra[name.strip()] = parse_subgroup(G, val)
    return standard_oracles(G, **extra)


def _budget(args):
    from .logic.evaluate import Budget

    return Budget(CAPS.work_budget)


# ------------------------------------------------------------------ commands


def cmd_eval(args, out: _Out) -> int:
    from .catalog import sigma_holds
    from .logic.evaluate import evaluate

    G = _group(args.group)
    f = _formula(args.formula, _oracle_names(args.oracle))
    out.put("group", G.label)
    out.put("order", G.order)
    start = time.perf_counter()
    if isinstance(f, tuple):
        truth = sigma_holds(G, f[1])
        out.put("truth", truth)
        out.put("semantic", True)
    else:
        b = _budget(args)
        truth = evaluate(G, f, _assignments(G, args.set), _oracles(G, args.oracle), strategy=args.strategy, budget=b)
        out.put("truth", truth)
        out.put("work", b.used)
    if args.timing:
        out.put("seconds", round(time.perf_counter() - start, 3))
    return EXIT_OK


def cmd_definable(args, out: _Out) -> int:
    from .logic.evaluate import definable_set

    G = _group(args.group)
    f = _formula(args.formula, _oracle_names(args.oracle))
    if isinstance(f, tuple):
        raise GroupSpecError("sigma is a semantic check and defines no set")
    b = _budget(args)
    S = definable_set(G, f, _assignments(G, args.set), args.var, _oracles(G, args.oracle), strategy=args.strategy, budget=b)
    out.put("group", G.label)
    out.put("order", S.order)
    out.put("members", sorted(S.members))
    out.put("work", b.used)
    return EXIT_OK


def cmd_analyze(args, out: _Out) -> int:
    from . import structure as st

    G = _group(args.group)
    out.put("group", G.label)
    out.put("order", G.order)
    which = args.which
    if which in ("radical", "fitting", "frattini"):
        fn = {"radical": st.soluble_radical, "fitting": st.fitting, "frattini": st.frattini}[which]
        H = fn(G)
        out.put(which, H.order)
        out.put("whole_group", H.order == G.order)
        out.put("members", sorted(H.members))
    elif which == "series":
        d = st.derived_series(G)
        lc = st.lower_central_series(G)
        out.put("derived_series", d.orders)
        out.put("lower_central_series", lc.orders)
        out.put("soluble", st.is_soluble(G))
        out.put("nilpotent", st.is_nilpotent(G))
        out.put("nilpotency_class", st.nilpotency_class(G))
        out.put("perfect", st.is_perfect(G))
    elif which == "semisimple":
        rep = st.decompose_semisimple(G)
        out.put("semisimple", rep.is_semisimple)
        out.put("factors", len(rep.factors))
        out.put("factor_orders", [N.order for N in rep.factors])
        if rep.witness:
            out.put("reason", rep.witness)
    elif which == "classes":
        from .kernel.subgroups import conjugacy_classes

        cls = conjugacy_classes(G)
        out.put("classes", len(cls))
        out.put("class_sizes", [c.order for c in cls])
    elif which == "lattice":
        subs = st.subgroup_lattice(G)
        out.put("subgroups", len(subs))
        out.put("maximal_orders", [H.order for H in st.maximal_subgroups(G)])
    else:  # pragma: no cover - argparse restricts the choices
        raise GroupSpecError(f"unknown analysis {which!r}")
    return EXIT_OK


def cmd_sigma(args, out: _Out) -> int:
    from .catalog import sigma_holds, sigma_min_failing_k
    from .structure import is_soluble

    G = _group(args.group)
    out.put("group", G.label)
    out.put("order", G.order)
    out.put("k", args.k)
    out.put("sigma_holds", sigma_holds(G, args.k))
    out.put("min_failing_k", sigma_min_failing_k(G, args.k))
    out.put("soluble", is_soluble(G))
    return EXIT_OK


def cmd_supplement(args, out: _Out) -> int:
    from .groupspec import parse_subgroup
    from .supplement import build_supplement, lemma62_checks, verify_formula_level

    G = _group(args.group)
    K = parse_subgroup(G, args.k)
    cert = build_supplement(G, K)
    for k, v in cert.summary().items():
        out.put(k, v)
    out.put("N_members", sorted(cert.N.members))
    rep = lemma62_checks(cert)
    out.put_lines("lemma", rep.lines())
    ok = rep.passed
    if args.formula_level:
        f = verify_formula_level(cert, strategy=args.strategy, budget=_budget(args), strict=False)
        out.put_lines("formula", f.lines())
        ok = ok and f.passed
    out.put("status", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_construct(args, out: _Out) -> int:
    from .constructions import fields, perfect, sl2, thmd

    kind = args.kind
    out.put("construction", kind)
    if kind == "comlength":
        info = perfect.comlength_min_n(args.k)
        for k, v in info.items():
            out.put(k, v)
        return EXIT_OK
    if kind == "thmD":
        inst = thmd.thmD_finite_instance(args.n, args.p)
        for k, v in inst.summary().items():
            out.put(k, v)
        return EXIT_OK
    F = _field_of(args.q)
    if kind == "sl2":
        G = sl2.sl2(F)
        out.put("order", G.order)
        out.put("det_one_count", sl2.count_det_one(F))
    elif kind == "icosahedral":
        B = sl2.find_binary_icosahedral(F)
        for k, v in sl2.check_binary_icosahedral(B.parent, B).items():
            out.put(k, v)
    elif kind == "en":
        E = perfect.build_En(args.n, F, allow_p3=args.allow_p3)
        out.put("order", E.order)
        for k, v in E.check_laws().items():
            out.put(k, v)
    elif kind == "split":
        sp = perfect.split_Wn(args.n, F, allow_p3=args.allow_p3)
        out.put("dim_Y", sp.Y.shape[0])
        out.put("dim_Z", sp.Z.shape[0])
    elif kind == "perfect":
        bundle = perfect.build_Hn(args.n, F, allow_p3=args.allow_p3)
        for k, v in perfect.check_Hn(bundle).items():
            out.put(k, v)
    return EXIT_OK


def _field_of(q):
    from .constructions.fields import gf, prime_power

    if q is None:
        raise GroupSpecError("this construction needs --q")
    pe = prime_power(q)
    if pe is None:
        raise GroupSpecError(f"{q} is not a prime power")
    return gf(*pe)


def _range(text: str) -> tuple[int, int]:
    a, sep, b = text.partition("..")
    try:
        lo, hi = int(a), int(b if sep else a)
    except ValueError:
        raise GroupSpecError(f"bad range {text!r}; expected a..b") from None
    if lo < 1 or hi < lo:
        raise GroupSpecError(f"bad range {text!r}")
    return lo, hi


def cmd_sweep(args, out: _Out) -> int:
    from .aee import sweep
    from .constructions.families import parse_family

    f = _formula(args.sentence)
    if isinstance(f, tuple):
        raise GroupSpecError("sweeps need a first-order sentence")
    fa, _ = parse_family(args.fam_a)
    fb, _ = parse_family(args.fam_b)
    lo, hi = _range(args.range)
    rep = sweep(f, fa, fb, lo, hi, strategy=args.strategy)
    out.put("sentence", rep.sentence)
    out.put("family_a", rep.family_a)
    out.put("family_b", rep.family_b)
    rows = []
    for r in rep.rows:
        if r.skipped:
            rows.append(f"n={r.index} skipped ({r.note})")
        else:
            rows.append(f"n={r.index} a={_fmt(r.truth_a)} b={_fmt(r.truth_b)} order_a={r.order_a} order_b={r.order_b}")
    if out.as_json:
        out.put("rows", [
            {"n": r.index, "a": r.truth_a, "b": r.truth_b, "order_a": r.order_a, "order_b": r.order_b, "note": r.note}
            for r in rep.rows
        ])
    else:
        out.put_lines("row", rows)
    out.put("agreement_tail_start", rep.agreement_tail_start)
    out.put("disclaimer", rep.disclaimer)
    return EXIT_OK


def cmd_corpus(args, out: _Out) -> int:
    from .corpus import load_corpus, run_suite

    corpus = load_corpus(args.file)
    results = run_suite(corpus, args.suite)
    failed = [r for r in results if r.status == "FAIL"]
    out.put_lines("items", [r.line() for r in results])
    out.put("passed", sum(r.status == "PASS" for r in results))
    out.put("failed", len(failed))
    out.put("skipped", sum(r.status == "SKIP" for r in results))
    out.put("status", "PASS" if not failed else "FAIL")
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_parse(args, out: _Out) -> int:
    from .logic.ast import free_vars, oracle_names, quantifier_depth
    from .logic.parser import format_formula

    f = _formula(args.formula)
    if isinstance(f, tuple):
        out.put("semantic", f"sigma:{f[1]}")
        return EXIT_OK
    out.put("formula", format_formula(f))
    out.put("free", sorted(free_vars(f)))
    out.put("sentence", not free_vars(f))
    out.put("quantifier_depth", quantifier_depth(f))
    out.put("oracles", sorted(oracle_names(f)))
    return EXIT_OK


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grouplogic", description="First-order logic over finite groups.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--table-cap", type=int, help=f"largest order stored as a table (default {CAPS.table})")
    p.add_argument("--lattice-cap", type=int, help=f"largest order for subgroup lattices (default {CAPS.lattice})")
    p.add_argument("--sigma-cap", type=int, help=f"largest order for sigma checks (default {CAPS.sigma})")
    p.add_argument("--work-budget", type=int, help=f"evaluation step budget (default {CAPS.work_budget})")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; evaluation is sequential")
    sub = p.add_subparsers(dest="command", required=True)

    def strategy(sp):
        sp.add_argument("--strategy", choices=("naive", "classes", "vector"), default="vector")

    e = sub.add_parser("eval", help="truth of a sentence or catalog name in a group")
    e.add_argument("group")
    e.add_argument("formula")
    e.add_argument("--set", action="append", metavar="VAR=ELEM", help="value of a free variable")
    e.add_argument("--oracle", action="append", metavar="NAME=SUBGROUP", help="extra oracle subset")
    e.add_argument("--timing", action="store_true")
    strategy(e)
    e.set_defaults(func=cmd_eval)

    d = sub.add_parser("definable", help="the set defined by a formula")
    d.add_argument("group")
    d.add_argument("formula")
    d.add_argument("--var", default="x", help="the defining variable (default x)")
    d.add_argument("--set", action="append", metavar="VAR=ELEM")
    d.add_argument("--oracle", action="append", metavar="NAME=SUBGROUP")
    strategy(d)
    d.set_defaults(func=cmd_definable)

    a = sub.add_parser("analyze", help="structural analysis")
    a.add_argument("group")
    a.add_argument("which", choices=("radical", "fitting", "frattini", "series", "semisimple", "classes", "lattice"))
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sigma", help="class-commutator product condition")
    s.add_argument("group")
    s.add_argument("--k", type=int, default=56)
    s.set_defaults(func=cmd_sigma)

    su = sub.add_parser("supplement", help="definable supplement certificate")
    su.add_argument("group")
    su.add_argument("--k", required=True, help="normal subgroup spec, e.g. derived or whole")
    su.add_argument("--formula-level", action="store_true")
    strategy(su)
    su.set_defaults(func=cmd_supplement)

    c = sub.add_parser("construct", help="run a construction and report its checks")
    c.add_argument("kind", choices=("sl2", "icosahedral", "en", "split", "perfect", "thmD", "comlength"))
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--q", type=int)
    c.add_argument("--p", type=int, default=3)
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--allow-p3", action="store_true")
    c.set_defaults(func=cmd_construct)

    w = sub.add_parser("sweep", help="evaluate a sentence along two group families")
    w.add_argument("--sentence", required=True)
    w.add_argument("--fam-a", required=True)
    w.add_argument("--fam-b", required=True)
    w.add_argument("--range", required=True, help="a..b")
    strategy(w)
    w.set_defaults(func=cmd_sweep)

    co = sub.add_parser("corpus", help="run a check suite over a corpus")
    co.add_argument("file", nargs="?", help="corpus file (default: the shipped corpus)")
    co.add_argument("--suite", default="all", choices=("lemma32", "sentences", "sigma", "frattini", "supplement", "prop51", "all"))
    co.set_defaults(func=cmd_corpus)

    pa = sub.add_parser("parse", help="parse and normalise a formula")
    pa.add_argument("formula")
    pa.set_defaults(func=cmd_parse)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    saved = dataclasses.replace(CAPS)
    for flag, attr in (("table_cap", "table"), ("lattice_cap", "lattice"), ("sigma_cap", "sigma"), ("work_budget", "work_budget")):
        val = getattr(args, flag)
        if val is not None:
            setattr(CAPS, attr, val)
    out = _Out(args.json)
    try:
        code = args.func(args, out)
    except _CAP_ERRORS as exc:
        out.put("error", type(exc).__name__)
        out.put("message", str(exc))
        code = EXIT_CAP
    except _USAGE_ERRORS as exc:
        out.put("error", type(exc).__name__)
        out.put("message", str(exc))
        code = EXIT_USAGE
    except GroupLogicError as exc:
        out.put("error", type(exc).__name__)
        out.put("message", str(exc))
        code = EXIT_FAIL
    finally:
        # the flags apply to this call only
        for f in dataclasses.fields(CAPS):
            setattr(CAPS, f.name, getattr(saved, f.name))
    out.emit()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
