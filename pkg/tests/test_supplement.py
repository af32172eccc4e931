import dataclasses

import numpy as np
import pytest

from conftest import brute, members
from grouplogic.errors import CheckFailed, InsideRadical, NotNormal
from grouplogic.kernel import (
    alternating,
    closure,
    cyclic,
    direct_product,
    normal_closure,
    parse_cycles,
    symmetric,
    trivial_subgroup,
    whole_group,
)
from grouplogic.logic import definable_set, format_formula, free_vars, parse
from grouplogic.supplement import (
    build_formulas,
    build_supplement,
    check_invariants,
    formula_oracles,
    lemma62_checks,
    spot_check_chi,
    verify_formula_level,
)


@pytest.fixture(scope="module")
def s5_cert(s5):
    K = normal_closure(s5, [s5.id_of(parse_cycles("(1 2 3)", 5))])
    return build_supplement(s5, K)


@pytest.fixture(scope="module")
def a5c2_cert():
    G = direct_product(alternating(5), cyclic(2))
    return build_supplement(G, whole_group(G))


def oracle_D_N(cert):
    """D and N recomputed by brute force from s, T and M alone."""
    B = brute(cert.G)
    M = members(cert.M)
    D = frozenset(x for x in members(cert.T) if B.comm(cert.s, x) in M)
    return D, B.normalizer(D)


def test_s5_example(s5_cert):
    c = s5_cert
    info = c.summary()
    assert (info["order_M"], info["order_L"], info["p"]) == (1, 60, 3)
    assert (info["order_T"], info["order_D"], info["order_N"]) == (120, 6, 12)
    assert info["LN_is_G"] and info["KN_is_G"] and info["N_proper"]
    assert brute(c.G).elem_order(c.s) == 3
    D, N = oracle_D_N(c)
    assert members(c.D) == D and members(c.N) == N


def test_a5_times_c2(a5c2_cert):
    c = a5c2_cert
    assert c.M.order == 2 and c.L.order == 120 and c.K.order == 120
    assert len(c.factors) == 1 and c.factors[0].order == 60
    D, N = oracle_D_N(c)
    assert members(c.D) == D and members(c.N) == N
    assert c.N.order < c.G.order
    assert lemma62_checks(c).passed


def test_s5_lemma_and_formulas(s5_cert):
    rep = lemma62_checks(s5_cert)
    assert rep.passed, rep.lines()
    assert [ln.split("=")[0] for ln in rep.lines()] == ["a", "b", "c", "d"]
    rep = verify_formula_level(s5_cert)
    assert rep.passed, rep.lines()
    assert {"theta=D", "chi=N", "supplement", "xi"} <= set(rep.results)


def test_a5c2_formula_level(a5c2_cert):
    rep = verify_formula_level(a5c2_cert)
    assert rep.passed, rep.lines()


def brute_theta(cert, rad):
    """The theta set straight from its meaning, with ``rad`` read as the given member set."""
    B = brute(cert.G)
    w = (cert.d1, cert.d2)

    def theta0(x):
        return any(B.comm(a, B.conj(b, x)) not in rad for a in w for b in w)

    return frozenset(
        x for x in B.elements
        if B.comm(cert.s, x) in rad and all(theta0(B.mul(B.mul(g, x), B.inv(g))) for g in B.elements)
    )


def test_empty_radical_is_harmless_when_M_is_central(a5c2_cert):
    # every commutator of A5 x C2 lies in A5, which meets the radical C2 trivially,
    # so reading rad as empty changes no atom that the formulas ever evaluate
    c = a5c2_cert
    G = c.G
    assert brute_theta(c, frozenset({0})) == brute_theta(c, members(c.M)) == members(c.D)
    assert verify_formula_level(c, rad=trivial_subgroup(G)).passed


def test_negative_controls(a5c2_cert):
    G = a5c2_cert.G
    with pytest.raises(CheckFailed):
        verify_formula_level(a5c2_cert, rad=whole_group(G))
    # a non-central M: shift s by a 3-cycle of the S3 factor, still a valid preimage
    H = direct_product(alternating(5), symmetric(3))
    c = build_supplement(H, whole_group(H))
    m = H.id_of([0, symmetric(3).id_of(parse_cycles("(1 2 3)", 3))])
    shifted = dataclasses.replace(c, s=H.mul(c.s, m))
    check_invariants(shifted)
    assert verify_formula_level(shifted).passed
    with pytest.raises(CheckFailed):
        verify_formula_level(shifted, rad=trivial_subgroup(H))
    rep = verify_formula_level(shifted, rad=trivial_subgroup(H), strict=False)
    assert not rep.results["theta=D"][0] and "witness" in rep.results["theta=D"][1]


def test_tampered_certificate(s5_cert):
    c = s5_cert
    bad = dataclasses.replace(c, D=closure(c.G, [c.s]))
    rep = lemma62_checks(bad)
    ok, detail = rep.results["c"]
    assert not ok and "witness" in detail
    with pytest.raises(CheckFailed):
        lemma62_checks(bad, strict=True)


def test_inside_radical_and_not_normal(s4, s5):
    with pytest.raises(InsideRadical):
        build_supplement(s4, whole_group(s4))
    with pytest.raises(NotNormal):
        build_supplement(s5, closure(s5, [s5.id_of(parse_cycles("(1 2)", 5))]))


def test_determinism(s5):
    K = normal_closure(s5, [s5.id_of(parse_cycles("(1 2 3)", 5))])
    a, b = build_supplement(s5, K), build_supplement(symmetric(5), K)
    assert a.summary() == b.summary()
    assert (a.d1, a.d2, a.s) == (b.d1, b.d2, b.s)


@pytest.mark.parametrize("which", ["s5", "a5c2"])
def test_chi_set_is_subgroup_for_any_parameters(which, s5_cert, a5c2_cert):
    # chi defines the stabiliser of the theta set under conjugation, for every parameter triple
    c = s5_cert if which == "s5" else a5c2_cert
    G = c.G
    chi = build_formulas(c)["chi"]
    orc = formula_oracles(c)
    rng = np.random.default_rng(7)
    for w1, w2, z in rng.integers(0, G.order, size=(10, 3)):
        X = definable_set(G, chi, {"w1": int(w1), "w2": int(w2), "z": int(z)}, oracles=orc)
        assert closure(G, list(X)).order == X.order


def test_formula_shapes_round_trip(s5_cert):
    fs = build_formulas(s5_cert)
    assert set(fs) == {"psi", "psi_prime", "theta0", "theta1", "theta", "chi", "xi"}
    for f in fs.values():
        assert parse(format_formula(f), oracles={"rad", "inK"}) == f
    assert free_vars(fs["chi"]) == {"w1", "w2", "z", "x"}
    assert free_vars(fs["xi"]) == {"w1", "w2", "z"}
    assert free_vars(fs["psi_prime"]) == set()


def test_naive_spot_check(s5_cert):
    c = s5_cert
    picks = [0, int(c.N.array[-1])] + [x for x in range(1, 120, 29) if x not in c.N][:2]
    for x, (val, inN) in spot_check_chi(c, picks).items():
        assert val == inN, x
