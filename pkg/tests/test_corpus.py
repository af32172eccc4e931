import pytest

from grouplogic.corpus import SUITES, load_corpus, parse_corpus, run_suite
from grouplogic.errors import GroupSpecError

SMALL = """
# a few groups
%caps lattice=50 sigma=100
C6 = cyclic 6
S3 = sym 3 @note
S3xC2 = product S3 C2
A5 = alt 5 @analysis
"""


def test_parse_corpus_fields():
    c = parse_corpus(SMALL)
    assert [e.label for e in c.entries] == ["C6", "S3", "S3xC2", "A5"]
    assert c.caps == {"lattice": 50, "sigma": 100}
    assert c.entries[1].tags == ("note",) and c.entries[1].spec == "sym 3"
    assert c.entries[2].group.order == 12  # refers back to an earlier label


@pytest.mark.parametrize(
    "text",
    ["C2 = cyclic 2\nC2 = cyclic 2\n", "just words\n", "%caps lattice=many\n", "X = cyclic zero\n", "%caps colour=3\n"],
)
def test_parse_corpus_rejects(text):
    with pytest.raises(GroupSpecError):
        parse_corpus(text)


def test_default_corpus_loads():
    c = load_corpus()
    labels = {e.label for e in c.entries}
    for want in ("C2", "C30", "C2^3", "C3^3", "Dih16", "S5", "A6", "SL2(3)", "SL2(5)", "C4wrC2", "C3wrC3",
                 "C20wrC2", "Dih8xDih5", "S4/V4"):
        assert want in labels
    orders = {e.label: e.group.order for e in c.entries}
    assert orders["S4/V4"] == 6 and orders["C20wrC2"] == 800 and orders["Dih8xDih5"] == 160
    assert "analysis" in next(e for e in c.entries if e.label == "A6").tags


def test_run_suite_small():
    c = parse_corpus(SMALL)
    for suite in SUITES:
        res = run_suite(c, suite)
        assert res and all(r.status in ("PASS", "SKIP") for r in res), [r.line() for r in res]
    # A5 is above the corpus's own lattice cap of 50
    prop = {r.label: r.status for r in run_suite(c, "prop51")}
    assert prop["A5"] == "SKIP" and prop["S3"] == "PASS"
    assert len(run_suite(c, "all")) == sum(len(run_suite(c, s)) for s in SUITES)
    with pytest.raises(GroupSpecError):
        run_suite(c, "nope")


def test_trivial_corpus_passes_vacuously():
    res = run_suite(parse_corpus("one = cyclic 1\n"), "all")
    assert all(r.status == "PASS" for r in res)


def test_item_line_format():
    (r,) = run_suite(parse_corpus("C4 = cyclic 4\n"), "lemma32")
    assert r.line() == "suite=lemma32 group=C4 status=PASS nilpotent=True sentence=True"
