import pytest

import oracle
from conftest import brute
from grouplogic.aee import DISCLAIMER, nilpotence_probe, sweep
from grouplogic.catalog import F_pq, coprime_sentence, nilpotence_sentence, two_three_commute_sentence
from grouplogic.constructions import family
from grouplogic.constructions.families import odd_prime
from grouplogic.logic import evaluate, parse


def test_coprime_sweep_on_cyclic_families():
    rep = sweep(coprime_sentence(3), family("cyc2"), family("cyc2p"), 1, 8)
    assert [r.index for r in rep.rows] == list(range(1, 9))
    assert all(r.truth_a for r in rep.rows)
    for r in rep.rows:
        assert r.order_b == 2**r.index * odd_prime(r.index)
        assert r.truth_b == oracle.coprime_expected(r.order_b, 3)
    assert [r.index for r in rep.rows if not r.truth_b] == [1]
    assert rep.agreement_tail_start == 2


def test_Fpq_sweep_on_dihedral_families():
    rep = sweep(F_pq(2, 3), family("dih2"), family("dih2p"), 1, 6)
    assert all(r.truth_a for r in rep.rows)
    assert [r.index for r in rep.rows if not r.truth_b] == [n for n in range(1, 7) if odd_prime(n) == 3]
    assert rep.agreement_tail_start == 2
    # the small members through the oracle
    for n in (1, 2):
        for fam, r in (("dih2", rep.rows[n - 1].truth_a), ("dih2p", rep.rows[n - 1].truth_b)):
            assert oracle.F_pq_holds(brute(family(fam)(n)), 2, 3) == r


def test_trivial_sentence_sweep():
    rep = sweep(parse("A x. x=x"), family("wr_q", 3), family("thmD"), 1, 3)
    assert all(r.truth_a and r.truth_b for r in rep.rows)
    assert rep.agreement_tail_start == 1


def test_sweep_matches_direct_eval():
    s = two_three_commute_sentence()
    rep = sweep(s, family("dih2"), family("dih2p"), 1, 4)
    for r in rep.rows:
        assert r.truth_a == evaluate(family("dih2")(r.index), s)
        assert r.truth_b == evaluate(family("dih2p")(r.index), s)


def test_sweep_report_lines_and_skips():
    rep = sweep(coprime_sentence(3), family("cyc2"), family("cyc2p"), 1, 2)
    lines = rep.lines()
    assert lines[0].startswith("sentence=") and lines[-1] == f"disclaimer={DISCLAIMER}"
    assert "n=1 a=true b=false order_a=2 order_b=6" in lines
    assert "agreement_tail_start=2" in lines
    big = sweep(coprime_sentence(3), family("cyc2"), family("cyc2"), 3, 40)
    skipped = [r for r in big.rows if r.skipped]
    assert skipped and skipped[-1].index == 40 and skipped[0].note
    # skipped rows are ignored by the tail
    assert big.agreement_tail_start == 3
    assert any(ln.startswith("n=40 skipped=") for ln in big.lines())


def test_sweep_rejects_open_formula():
    with pytest.raises(ValueError):
        sweep(parse("x = 1"), family("cyc2"), family("cyc2"), 1, 2)


def test_nilpotence_probe():
    s = nilpotence_sentence({2})
    probe = nilpotence_probe(family("wr_q", 2), family("wr_pq", 2), [1, 2, 3], [s])
    assert [r.nilpotent_a for r in probe.rows] == [True] * 3
    assert [r.nilpotent_b for r in probe.rows] == [False] * 3
    # with a single prime there are no pairs, so the sentence never separates
    for r in probe.rows:
        assert list(r.sentences.values()) == [(True, True)]
    empty = nilpotence_probe(family("wr_q", 2), family("wr_pq", 2), [1, 2], [])
    assert all(r.sentences == {} for r in empty.rows)
    assert all("[" not in ln for ln in empty.lines())


def test_nilpotence_probe_with_a_real_pair():
    s = nilpotence_sentence({2, 3})
    probe = nilpotence_probe(family("wr_q", 2), family("wr_pq", 2), [1, 2], [s])
    # wr_pq/2 at n=1 is C6 wr C2, which has both primes and is not nilpotent
    assert probe.rows[0].sentences[next(iter(probe.rows[0].sentences))] == (True, False)
    assert brute(family("wr_pq", 2)(1)).is_nilpotent() is False
