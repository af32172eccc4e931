from fractions import Fraction
from itertools import product

import numpy as np
import pytest

import oracle
from conftest import brute
from grouplogic.constructions import (
    build_En,
    build_Hn,
    check_Hn,
    comlength_inequality,
    comlength_min_n,
    count_det_one,
    family,
    find_binary_icosahedral,
    gf,
    parse_family,
    sl2,
    split_Wn,
    thmD_finite_instance,
)
from grouplogic.constructions.families import odd_prime, psl2_8
from grouplogic.constructions.sl2 import check_binary_icosahedral, subgroup_as_group
from grouplogic.errors import BadCharacteristic, ConditionViolated, GroupSpecError, NotPrime, TooLarge
from grouplogic.kernel import cyclic, dihedral, is_isomorphic, symmetric, wreath_cyclic
from grouplogic.structure import is_nilpotent, is_perfect, is_simple


# --------------------------------------------------------------------- fields


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (11, 1), (2, 2), (3, 2), (2, 3), (5, 2)])
def test_field_axioms(p, e):
    F = gf(p, e)
    q = p**e
    assert F.q == q and F.add.shape == (q, q)
    els = range(q)
    for a in els:
        assert F.add[a, 0] == a and F.mul[a, 1] == a
        assert F.add[a, F.neg[a]] == 0
        if a:
            assert F.mul[a, F.inv[a]] == 1
    # associativity and distributivity exhaustively
    A = np.arange(q)
    assert (F.mul[F.mul[A[:, None, None], A[None, :, None]], A[None, None, :]] == F.mul[A[:, None, None], F.mul[A[None, :, None], A[None, None, :]]]).all()
    assert (F.mul[A[:, None, None], F.add[A[None, :, None], A[None, None, :]]] == F.add[F.mul[A[:, None, None], A[None, :, None]], F.mul[A[:, None, None], A[None, None, :]]]).all()


def test_field_examples():
    assert gf(11, 1).q == 11
    F9 = gf(3, 2)
    assert F9.q == 9
    assert F9.modulus == (1, 0, 1)  # t^2 + 1
    # t^2 + 1 has no root mod 3, so it is irreducible in degree 2
    assert all((x * x + 1) % 3 for x in range(3))
    with pytest.raises(NotPrime):
        gf(4, 1)


def test_modulus_is_least_irreducible():
    F = gf(2, 3)
    # degree 3 over GF(2): irreducible iff no root; least in (c2, c1, c0) order is t^3 + t + 1
    assert F.modulus == (1, 1, 0, 1)

    def has_root(c2, c1, c0):
        return any((x**3 + c2 * x * x + c1 * x + c0) % 2 == 0 for x in range(2))

    assert has_root(0, 0, 1)  # t^3 + 1, the only earlier candidate with c0 != 0
    assert not has_root(0, 1, 1)


# ----------------------------------------------------------------------- SL2


def test_sl2_examples():
    SL5 = sl2(gf(5))
    assert SL5.order == 120 and is_perfect(SL5)
    assert sl2(gf(11)).order == 1320 == count_det_one(gf(11))
    SL3 = sl2(gf(3))
    assert SL3.order == 24 and not is_perfect(SL3)


@pytest.mark.parametrize("p", [3, 5])
def test_sl2_against_matrix_oracle(p):
    G = sl2(gf(p))
    ref = oracle.sl2_mod_p(p)
    assert {tuple(int(v) for v in G.coords[x]) for x in range(G.order)} == set(ref.elements)
    for a in range(0, G.order, 7):
        for b in range(G.order):
            ca, cb = tuple(G.coords[a]), tuple(G.coords[b])
            assert tuple(G.coords[G.mul(a, b)]) == ref.mul(ca, cb)
    assert (len(ref.derived_series()[-1]) == ref.order) == is_perfect(G)


def test_sl2_over_nonprime_field_counts():
    for p, e in ((3, 2), (2, 3)):
        F = gf(p, e)
        assert sl2(F).order == F.q * (F.q**2 - 1) == count_det_one(F)


@pytest.mark.parametrize("p,e", [(11, 1), (3, 2), (19, 1)])
def test_binary_icosahedral(p, e):
    F = gf(p, e)
    SL = sl2(F)
    B = find_binary_icosahedral(F, SL)
    info = check_binary_icosahedral(SL, B)
    assert info == {"order": 120, "perfect": True, "center_order": 2, "involutions": 1}
    Bg, _ = subgroup_as_group(SL, B, "B")
    assert is_isomorphic(Bg, sl2(gf(5)))


def test_binary_icosahedral_condition():
    with pytest.raises(ConditionViolated):
        find_binary_icosahedral(gf(13))


# ------------------------------------------------------------ E_n, W_n, H_n


def _brute_En(E):
    """E_n as an oracle group on coordinate tuples."""
    q, d = E.F.q, E.dim_v + E.dim_w
    elems = list(product(range(q), repeat=d))

    def mul(a, b):
        return tuple(int(v) for v in E.mul(np.array(a), np.array(b)))

    return oracle.BruteGroup(elems, mul, tuple([0] * d))


@pytest.mark.parametrize("q", [5, 11])
def test_E1_exhaustive(q):
    E = build_En(1, gf(q))
    assert E.order == q**3
    G = E.group()
    assert G.order == q**3
    B = brute(G) if q == 5 else None
    if B is not None:
        assert B.is_nilpotent()
        lcs = B.commutator_subgroup(B.elements, B.elements)
        assert len(lcs) == 5 and len(B.commutator_subgroup(lcs, B.elements)) == 1
        assert all(B.power(x, 5) == 0 for x in B.elements)
        assert len(B.center()) == 5  # centre = W_1
    X = G.coords
    assert (E.power(X, q) == 0).all()
    laws = E.check_laws(X[:: max(1, G.order // 200)])
    assert all(laws.values())
    # centre equals the W_1 part, checked exhaustively against the V part
    centre = [x for x in range(G.order) if (G.comm_ids(x, G.elements) == 0).all()]
    assert sorted(centre) == sorted(np.flatnonzero((X[:, :2] == 0).all(axis=1)).tolist())


def test_E1_matches_oracle_multiplication():
    E = build_En(1, gf(5))
    B = _brute_En(E)
    assert B.is_nilpotent() and B.order == 125


def test_E2_laws_on_generators():
    E = build_En(2, gf(5))
    assert E.order == 5**10
    assert all(E.check_laws().values())
    with pytest.raises(TooLarge):
        E.group()


def test_bad_characteristic():
    with pytest.raises(BadCharacteristic):
        build_En(1, gf(2, 2))
    with pytest.raises(BadCharacteristic):
        split_Wn(1, gf(3))
    assert split_Wn(1, gf(3), allow_p3=True).dims == (0, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_split_dims(n):
    S = split_Wn(n, gf(11))
    assert S.dims == (3 * n * (n - 1) // 2, n * (n + 1) // 2)


def test_H1_orders():
    for (p, e), order in (((11, 1), 159720), ((3, 2), 87480)):
        b = build_Hn(1, gf(p, e), allow_p3=(p == 3))
        info = check_Hn(b)
        assert info["order"] == info["expected_order"] == order == 120 * (p**e) ** 3
        assert info["perfect"] and info["Z_central"] and info["B_trivial_on_Z"]
    with pytest.raises(ConditionViolated):
        build_Hn(1, gf(13))


# ------------------------------------------------------------------ comlength


@pytest.mark.parametrize("k,n", [(1, 9), (2, 17), (10, 81)])
def test_comlength(k, n):
    r = comlength_min_n(k)
    assert r["n"] == n and r["reference_threshold"] == 8 * k + 2

    def holds(m):
        return 2 * k * (2 * m + 3) <= Fraction(m * (m + 1), 2) - 1

    assert holds(n) and not holds(n - 1)
    assert all(comlength_inequality(k, m) == holds(m) for m in range(1, 3 * n))


# ------------------------------------------------------------------- thmD


def test_thmD_examples():
    I = thmD_finite_instance(1, 3)
    Hg, _ = subgroup_as_group(I.F, I.H, "H")
    assert is_isomorphic(Hg, symmetric(3))
    assert thmD_finite_instance(2, 3).index_L == 4
    I35 = thmD_finite_instance(3, 5)
    assert I35.F.order == 160 and I35.L.order == 40 and I35.index_L == 4


def test_thmD_rejects_bad_input():
    with pytest.raises(ValueError):
        thmD_finite_instance(1, 2)


# ------------------------------------------------------------------ families


def test_family_examples():
    assert is_isomorphic(family("cyc2")(4), cyclic(16))
    W = family("wr_q", 2)(2)
    assert W.order == 32 and is_nilpotent(W)
    assert is_isomorphic(W, wreath_cyclic(cyclic(4), 2))
    fam = family("simple_adj")
    assert fam(1).order == 60 * 168


def test_family_members():
    assert [odd_prime(n) for n in range(1, 6)] == [3, 5, 7, 11, 13]
    assert family("cyc2p")(2).order == 4 * 5
    assert family("dih2")(3).order == 16
    assert family("dih2p")(1).order == 12
    assert family("wr_pq", 3)(1).order == (5 * 3) ** 3 * 3
    assert family("thmD")(2).order == 16 * 5
    assert family("simple_sq")(1).order == 3600
    P8 = psl2_8()
    assert P8.order == 504 and is_simple(P8)
    with pytest.raises(TooLarge):
        family("cyc2")(40)
    with pytest.raises(GroupSpecError):
        family("nope")
    fam, idx = parse_family("wr_q/3:1")
    assert fam.name == "wr_q/3" and idx == 1 and fam(1).order == 81


def test_dih2p_against_oracle_dihedral():
    G = family("dih2p")(1)
    ref = oracle.dihedral(6)
    assert G.order == ref.order
    assert is_isomorphic(G, dihedral(6))


def test_commutator_products_data():
    from grouplogic.constructions.perfect import commutator_products_in_line_space

    d = commutator_products_in_line_space(1, gf(5))
    # Z_1 is one line of five elements, all of them commutators in G_1 x| SL2(5)
    assert d == {"order_L": 15000, "Z_size": 5, "Z_elements_hit": 5, "lines_total": 1, "lines_hit": 1}
    with pytest.raises(TooLarge):
        commutator_products_in_line_space(2, gf(5))
