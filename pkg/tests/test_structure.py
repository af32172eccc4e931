import pytest

from conftest import brute, members
from grouplogic.constructions.families import psl2_7
from grouplogic.errors import NotNormal, TooLarge
from grouplogic.kernel import (
    alternating,
    center,
    closure,
    cyclic,
    dihedral,
    dihedral_of_cyclic,
    direct_product,
    is_normal,
    normal_closure,
    parse_cycles,
    quotient,
    symmetric,
    trivial_subgroup,
    whole_group,
    wreath_cyclic,
)
from grouplogic.structure import (
    check_condition_a,
    cyclic_sylow_prime,
    decompose_semisimple,
    derived_series,
    fitting,
    frattini,
    has_proper_supplement,
    is_nilpotent,
    is_perfect,
    is_quasisimple,
    is_simple,
    is_soluble,
    is_subnormal,
    lower_central_series,
    maximal_subgroups,
    minimal_normal_subgroups,
    nilpotency_class,
    non_generators,
    soluble_radical,
    subgroup_lattice,
)

SMALL = [
    lambda: symmetric(3),
    lambda: symmetric(4),
    lambda: dihedral(4),
    lambda: dihedral(6),
    lambda: alternating(4),
    lambda: cyclic(12),
    lambda: direct_product(cyclic(2), symmetric(3)),
]


def test_series_examples(s4, a5):
    assert is_soluble(s4) and not is_nilpotent(s4)
    D8 = dihedral(4)
    assert is_nilpotent(D8) and nilpotency_class(D8) == 2
    assert is_perfect(a5)
    assert derived_series(s4).orders == [24, 12, 4, 1]
    assert lower_central_series(s4).orders == [24, 12]
    assert not lower_central_series(s4).terminated


@pytest.mark.parametrize("make", SMALL)
def test_predicates_against_oracle(make):
    G = make()
    B = brute(G)
    assert is_soluble(G) == B.is_soluble()
    assert is_nilpotent(G) == B.is_nilpotent()
    assert [members(t) for t in derived_series(G).terms] == B.derived_series()
    assert members(soluble_radical(G)) == B.soluble_radical()


def test_radical_examples(s4, s5, a5):
    assert soluble_radical(s4).order == 24
    assert soluble_radical(s5).order == 1
    G = direct_product(a5, cyclic(2))
    R = soluble_radical(G)
    assert R.order == 2
    assert members(R) == {G.id_of([0, c]) for c in range(2)}


def test_radical_is_maximal(s5):
    for G in (direct_product(alternating(5), cyclic(3)), symmetric(4), s5):
        R = soluble_radical(G)
        assert is_soluble(G, R) and is_normal(G, R)
        if R.order < G.order:
            Q, _ = quotient(G, R)
            assert soluble_radical(Q).order == 1


def test_fitting_examples(s4, a5):
    assert fitting(s4).order == 4
    V4 = normal_closure(s4, [s4.id_of(parse_cycles("(1 2)(3 4)", 4))])
    assert fitting(s4) == V4
    D = dihedral_of_cyclic(cyclic(6))
    F = fitting(D)
    assert F.order == 6 and members(F) == {D.id_of([k, 0]) for k in range(6)}
    assert fitting(a5).order == 1


@pytest.mark.parametrize("make", SMALL)
def test_fitting_properties(make):
    G = make()
    F, R = fitting(G), soluble_radical(G)
    assert is_nilpotent(G, F) and is_normal(G, F)
    assert center(G) <= F <= R
    # maximal among nilpotent normal subgroups of the lattice
    for H in subgroup_lattice(G):
        if is_normal(G, H) and is_nilpotent(G, H):
            assert H <= F


def test_frattini_examples():
    C4 = cyclic(4)
    assert members(frattini(C4)) == {0, 2}
    assert frattini(symmetric(4)).order == 1
    D8 = dihedral(4)
    assert frattini(D8) == center(D8) and center(D8).order == 2


@pytest.mark.parametrize("make", SMALL)
def test_lattice_frattini_against_oracle(make):
    G = make()
    B = brute(G)
    assert {members(H) for H in subgroup_lattice(G)} == B.all_subgroups()
    assert {members(H) for H in maximal_subgroups(G)} == set(B.maximal_subgroups())
    assert members(frattini(G)) == B.frattini() == B.non_generators()
    assert non_generators(G) == frattini(G)


def test_lattice_cap():
    with pytest.raises(TooLarge):
        subgroup_lattice(symmetric(5), cap=100)


def test_minimal_normal_subgroups(s4, a5):
    V4 = normal_closure(s4, [s4.id_of(parse_cycles("(1 2)(3 4)", 4))])
    assert minimal_normal_subgroups(s4) == [V4]
    P = direct_product(a5, a5)
    mins = minimal_normal_subgroups(P)
    assert sorted(m.order for m in mins) == [60, 60]
    left = {P.id_of([a, 0]) for a in range(60)}
    right = {P.id_of([0, a]) for a in range(60)}
    assert {members(m) for m in mins} == {frozenset(left), frozenset(right)}
    C6 = cyclic(6)
    assert sorted(m.order for m in minimal_normal_subgroups(C6)) == [2, 3]


def test_semisimple(a5, s5):
    r = decompose_semisimple(a5)
    assert r.is_semisimple and len(r.factors) == 1
    r2 = decompose_semisimple(direct_product(a5, a5))
    assert r2.is_semisimple and len(r2.factors) == 2
    r3 = decompose_semisimple(s5)
    assert not r3.is_semisimple and r3.witness
    assert not decompose_semisimple(cyclic(6)).is_semisimple


def test_condition_a():
    from grouplogic.constructions.fields import gf
    from grouplogic.constructions.sl2 import sl2

    assert check_condition_a(alternating(5))
    assert check_condition_a(sl2(gf(5)))
    assert check_condition_a(symmetric(4))


def test_quasisimple_and_subnormal(a5):
    from grouplogic.constructions.fields import gf
    from grouplogic.constructions.sl2 import sl2

    SL = sl2(gf(5))
    assert is_quasisimple(SL, whole_group(SL))
    assert not is_quasisimple(a5, trivial_subgroup(a5))
    S4 = symmetric(4)
    V4 = normal_closure(S4, [S4.id_of(parse_cycles("(1 2)(3 4)", 4))])
    sub = closure(S4, [S4.id_of(parse_cycles("(1 2)(3 4)", 4))])
    assert is_subnormal(S4, sub) and not is_normal(S4, sub)
    assert is_subnormal(S4, V4)
    assert not is_subnormal(S4, closure(S4, [S4.id_of(parse_cycles("(1 2)", 4))]))


def test_simple():
    assert is_simple(alternating(5)) and is_simple(psl2_7()) and is_simple(cyclic(7))
    assert not is_simple(symmetric(5)) and not is_simple(alternating(4))


def test_cyclic_sylow():
    assert cyclic_sylow_prime(alternating(5))[0] == 3
    assert cyclic_sylow_prime(psl2_7())[0] == 3
    A6 = alternating(6)
    p, s = cyclic_sylow_prime(A6)
    assert p == 5
    B = brute(A6)
    assert B.elem_order(s) == 5
    # Sylow 2 of A6 (order 8) is not cyclic, nor is Sylow 3 (order 9)
    assert not any(B.elem_order(x) in (8, 9) for x in range(A6.order))


def test_supplements(s4):
    A4 = normal_closure(s4, [s4.id_of(parse_cycles("(1 2 3)", 4))])
    ok, H = has_proper_supplement(s4, A4)
    assert ok and H.order == 2
    assert members(H) == {0, s4.id_of(parse_cycles("(1 2)", 4))}
    C4 = cyclic(4)
    assert has_proper_supplement(C4, closure(C4, [2])) == (False, None)
    for G in (cyclic(1), cyclic(5), symmetric(3)):
        assert has_proper_supplement(G, whole_group(G))[0] == (G.order > 1)
    with pytest.raises(NotNormal):
        has_proper_supplement(s4, closure(s4, [s4.id_of(parse_cycles("(1 2)", 4))]))


def test_wreath_radical_and_fitting():
    W = wreath_cyclic(cyclic(3), 2)
    assert soluble_radical(W).order == W.order
    assert fitting(W).order == 9
