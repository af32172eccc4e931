"""Group corpora and the check suites run over them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

from .catalog import (
    coprime_sentence,
    divisible_sentence,
    nilpotence_sentence,
    radical_trivial_sentence,
    sigma_holds,
    sigma_min_failing_k,
)
from .config import CAPS
from .errors import GroupLogicError, GroupSpecError, TooLarge
from .groupspec import _Env
from .kernel.subgroups import is_normal
from .logic.evaluate import evaluate
from .structure import (
    check_condition_a,
    decompose_semisimple,
    frattini,
    has_proper_supplement,
    is_nilpotent,
    is_soluble,
    non_generators,
    prime_factors,
    soluble_radical,
    subgroup_lattice,
)

SUITES = ("lemma32", "sentences", "sigma", "frattini", "supplement", "prop51")


@dataclass
class CorpusEntry:
    label: str
    spec: str
    tags: tuple = ()
    group: object = None


@dataclass
class CorpusSpec:
    entries: list = field(default_factory=list)
    caps: dict = field(default_factory=dict)

    def groups(self):
        return [(e.label, e.group) for e in self.entries]


def parse_corpus(text: str, *, build: bool = True) -> CorpusSpec:
    """Lines ``label = group spec [@tag ...]``; ``%caps key=value ...``; ``#`` comments."""
    spec = CorpusSpec()
    env = _Env()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%caps"):
            for item in line.split()[1:]:
                key, _, val = item.partition("=")
                if key not in ("table", "lattice", "sigma") or not val.isdigit():
                    raise GroupSpecError(f"line {lineno}: bad cap setting {item!r}")
                spec.caps[key] = int(val)
            continue
        label, sep, body = line.partition(" = ")
        if not sep:
            raise GroupSpecError(f"line {lineno}: expected 'label = group spec'")
        label = label.strip()
        if label in seen:
            raise GroupSpecError(f"line {lineno}: duplicate label {label!r}")
        seen.add(label)
        words = body.split()
        tags = tuple(w[1:] for w in words if w.startswith("@"))
        body = " ".join(w for w in words if not w.startswith("@"))
        entry = CorpusEntry(label, body, tags)
        if build:
            try:
                entry.group = env.expr(body)
            except GroupLogicError as exc:
                raise GroupSpecError(f"line {lineno}: {exc}") from None
            env.names[label] = entry.group
        spec.entries.append(entry)
    return spec


def default_corpus_text() -> str:
    return resources.files("grouplogic").joinpath("data/default_corpus.txt").read_text()


def load_corpus(path: str | None = None) -> CorpusSpec:
    if path is None:
        return parse_corpus(default_corpus_text())
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise GroupSpecError(f"cannot read corpus {path}: {exc}") from None
    return parse_corpus(text)


@dataclass
class ItemResult:
    suite: str
    label: str
    status: str  # PASS, FAIL or SKIP
    detail: str = ""

    def line(self) -> str:
        return f"suite={self.suite} group={self.label} status={self.status} {self.detail}".rstrip()



def suite_lemma32(label, G, caps):
    primes = prime_factors(G.order)
    truth = evaluate(G, nilpotence_sentence(primes))
    sem = is_nilpotent(G)
    yield truth == sem, f"nilpotent={sem} sentence={truth}"


def suite_sentences(label, G, caps):
    sem = soluble_radical(G).order == 1
    truth = evaluate(G, radical_trivial_sentence())
    yield truth == sem, f"radical_trivial: semantic={sem} sentence={truth}"
    bad = []
    for n in range(2, 31):
        expect = math.gcd(G.order, n) == 1
        if evaluate(G, coprime_sentence(n)) != expect:
            bad.append(f"coprime:{n}")
        if evaluate(G, divisible_sentence(n)) != expect:
            bad.append(f"divisible:{n}")
    yield not bad, "coprime/divisible n=2..30" + (f" mismatches {','.join(bad)}" if bad else "")


def suite_sigma(label, G, caps):
    if G.order > caps["sigma"]:
        raise TooLarge(f"order {G.order} above the sigma cap")
    sol = is_soluble(G)
    holds = sigma_holds(G, 56, cap=caps["sigma"])
    kmin = sigma_min_failing_k(G, 56, cap=caps["sigma"])
    # monotone: sigma holds exactly below the least failing k
    mono = all(sigma_holds(G, k, cap=caps["sigma"]) == (kmin is None or k < kmin) for k in (1, 2, 3, 7, 56))
    yield holds == sol and mono, f"soluble={sol} sigma56={holds} min_failing_k={kmin} monotone={mono}"


def _normal_subgroups(G, cap):
    return [H for H in subgroup_lattice(G, cap) if is_normal(G, H)]


def suite_frattini(label, G, caps):
    if G.order <= 64:
        Phi = frattini(G, caps["lattice"])
        ok = is_nilpotent(G, Phi) and Phi == non_generators(G, caps["lattice"])
        yield ok, f"|Frattini|={Phi.order} nilpotent and equal to the non-generators"
    if G.order > min(200, caps["lattice"]):
        raise TooLarge(f"order {G.order} above the supplement-check bound")
    bad = []
    count = 0
    for K in _normal_subgroups(G, caps["lattice"]):
        if is_nilpotent(G, K):
            continue
        count += 1
        ok, _ = has_proper_supplement(G, K, caps["lattice"])
        if not ok:
            bad.append(K.order)
    yield not bad, f"non-nilpotent normal subgroups={count}" + (f" without supplement: orders {bad}" if bad else "")


def suite_supplement(label, G, caps):
    from .supplement import build_supplement, lemma62_checks, verify_formula_level

    if G.order > caps["lattice"]:
        raise TooLarge(f"order {G.order} above the lattice cap")
    R = soluble_radical(G)
    count = 0
    for K in _normal_subgroups(G, caps["lattice"]):
        if K <= R:
            continue
        count += 1
        cert = build_supplement(G, K)
        rep = lemma62_checks(cert)
        detail = f"|K|={K.order} |N|={cert.N.order} lemma=" + ("PASS" if rep.passed else "FAIL")
        ok = rep.passed
        if ok and G.order <= 120:
            f = verify_formula_level(cert, strict=False)
            ok = f.passed
            detail += " formulas=" + ("PASS" if f.passed else "FAIL")
        yield ok, detail
    if not count:
        yield True, "every normal subgroup lies in the soluble radical"


def suite_prop51(label, G, caps):
    from .catalog import cc_check, ore_check

    if G.order > caps["lattice"]:
        raise TooLarge(f"order {G.order} above the lattice cap")
    semi = decompose_semisimple(G).is_semisimple
    a = check_condition_a(G, caps["lattice"])
    b = ore_check(G)
    c = cc_check(G)
    yield semi == (a and b and c), f"semisimple={semi} a={a} b={b} c={c}"


_SUITE_FUNCS = {
    "lemma32": suite_lemma32,
    "sentences": suite_sentences,
    "sigma": suite_sigma,
    "frattini": suite_frattini,
    "supplement": suite_supplement,
    "prop51": suite_prop51,
}


def run_suite(corpus: CorpusSpec, suite: str) -> list[ItemResult]:
    if suite == "all":
        out = []
        for s in SUITES:
            out.extend(run_suite(corpus, s))
        return out
    if suite not in _SUITE_FUNCS:
        raise GroupSpecError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    caps = {"table": CAPS.table, "lattice": CAPS.lattice, "sigma": CAPS.sigma}
    caps.update(corpus.caps)
    out = []
    for label, G in corpus.groups():
        try:
            for ok, detail in _SUITE_FUNCS[suite](label, G, caps):
                out.append(ItemResult(suite, label, "PASS" if ok else "FAIL", detail))
        except TooLarge as exc:
            out.append(ItemResult(suite, label, "SKIP", str(exc)))
    return out


__all__ = [
    "SUITES",
    "CorpusEntry",
    "CorpusSpec",
    "parse_corpus",
    "default_corpus_text",
    "load_corpus",
    "ItemResult",
    "run_suite",
]
