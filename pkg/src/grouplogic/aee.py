"""Sentence sweeps across indexed group families.

Two families ``A_n`` and ``B_n`` are asymptotically elementarily equivalent
when every sentence eventually takes the same truth value on ``A_n`` and
``B_n``.  A sweep only ever sees finitely many indices, so its output is
evidence about where agreement starts, never a proof of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructions.families import GroupFamily
from .errors import DepthBudgetExceeded, TooLarge
from .logic.ast import free_vars
from .logic.evaluate import DEFAULT_STRATEGY, evaluate
from .logic.parser import format_formula
from .structure import is_nilpotent

DISCLAIMER = (
    "finite evidence only: the rows are exact truth values at the listed indices "
    "and say nothing about indices beyond them"
)


@dataclass
class SweepRow:
    index: int
    truth_a: bool | None
    truth_b: bool | None
    order_a: int | None
    order_b: int | None
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.truth_a is None or self.truth_b is None

    @property
    def agree(self) -> bool:
        return not self.skipped and self.truth_a == self.truth_b


@dataclass
class SweepReport:
    sentence: str
    family_a: str
    family_b: str
    rows: list = field(default_factory=list)
    disclaimer: str = DISCLAIMER

    @property
    def agreement_tail_start(self) -> int | None:
        """Least computed index from which every computed row agrees (skipped rows ignored)."""
        start = None
        for row in reversed([r for r in self.rows if not r.skipped]):
            if not row.agree:
                break
            start = row.index
        return start

    def lines(self) -> list[str]:
        out = [f"sentence={self.sentence}", f"family_a={self.family_a}", f"family_b={self.family_b}"]
        for r in self.rows:
            if r.skipped:
                out.append(f"n={r.index} skipped={r.note}")
            else:
                out.append(
                    f"n={r.index} a={str(r.truth_a).lower()} b={str(r.truth_b).lower()} "
                    f"order_a={r.order_a} order_b={r.order_b}"
                )
        tail = self.agreement_tail_start
        out.append(f"agreement_tail_start={'none' if tail is None else tail}")
        out.append(f"disclaimer={self.disclaimer}")
        return out


def _member(fam: GroupFamily, n: int):
    try:
        return fam(n), ""
    except TooLarge as exc:
        return None, str(exc)


def sweep(sentence, fam_a: GroupFamily, fam_b: GroupFamily, n_min: int, n_max: int, *, strategy=DEFAULT_STRATEGY, budget=None) -> SweepReport:
    if free_vars(sentence):
        raise ValueError("a sweep needs a sentence without free variables")
    report = SweepReport(format_formula(sentence), fam_a.name, fam_b.name)
    for n in range(n_min, n_max + 1):
        A, why_a = _member(fam_a, n)
        B, why_b = _member(fam_b, n)
        ta = tb = None
        note = why_a or why_b
        try:
            if A is not None:
                ta = evaluate(A, sentence, strategy=strategy, budget=budget)
            if B is not None:
                tb = evaluate(B, sentence, strategy=strategy, budget=budget)
        except DepthBudgetExceeded as exc:
            note = str(exc)
        report.rows.append(SweepRow(n, ta, tb, A.order if A else None, B.order if B else None, note))
    return report


@dataclass
class ProbeRow:
    index: int
    nilpotent_a: bool | None
    nilpotent_b: bool | None
    sentences: dict  # sentence text -> (truth on A, truth on B)
    note: str = ""


@dataclass
class NilpotenceProbe:
    family_a: str
    family_b: str
    rows: list = field(default_factory=list)
    disclaimer: str = DISCLAIMER

    def lines(self) -> list[str]:
        out = [f"family_a={self.family_a}", f"family_b={self.family_b}"]
        for r in self.rows:
            if r.note:
                out.append(f"n={r.index} skipped={r.note}")
                continue
            line = f"n={r.index} nilpotent_a={str(r.nilpotent_a).lower()} nilpotent_b={str(r.nilpotent_b).lower()}"
            for k, (a, b) in r.sentences.items():
                line += f" [{k}] a={str(a).lower()} b={str(b).lower()}"
            out.append(line)
        out.append(f"disclaimer={self.disclaimer}")
        return out


def nilpotence_probe(fam_a: GroupFamily, fam_b: GroupFamily, indices, sentences=(), *, strategy=DEFAULT_STRATEGY) -> NilpotenceProbe:
    """Semantic nilpotence next to the truth of each given sentence, per index.

    No single sentence tracks nilpotence across the whole family, and the
    rows show where each one stops separating the two columns.
    """
    probe = NilpotenceProbe(fam_a.name, fam_b.name)
    for n in indices:
        A, why_a = _member(fam_a, n)
        B, why_b = _member(fam_b, n)
        if A is None or B is None:
            probe.rows.append(ProbeRow(n, None, None, {}, why_a or why_b))
            continue
        truths = {}
        for s in sentences:
            truths[format_formula(s)] = (evaluate(A, s, strategy=strategy), evaluate(B, s, strategy=strategy))
        probe.rows.append(ProbeRow(n, is_nilpotent(A), is_nilpotent(B), truths))
    return probe


__all__ = ["DISCLAIMER", "SweepRow", "SweepReport", "sweep", "ProbeRow", "NilpotenceProbe", "nilpotence_probe"]
