import pytest

from qore.qscalar import ONE, Q, RatQ, ZERO, qfact
from qore.rootdata import CartanData, RootVec, Weight
from qore.schubert import (
    SchubertError,
    UwAlgebra,
    fund_generation_check,
    poset_check,
    verify_normality_uw,
    verify_separating_uw,
)
from qore.weyl import from_word, identity, simple

A1 = CartanData.preset("A1")
A2 = CartanData.preset("A2")


@pytest.fixture(scope="module")
def sl2():
    return UwAlgebra(A1, (0,))


@pytest.fixture(scope="module")
def a2_full():
    return UwAlgebra(A2, (0, 1, 0))


def test_requires_reduced_word():
    with pytest.raises(SchubertError, match="not reduced"):
        UwAlgebra(A2, (0, 0))


def test_pbw_basis_examples(a2_full):
    short = UwAlgebra(A2, (0, 1))
    assert short.pbw_basis(RootVec((2, 1))) == [(1, 1)]
    assert short.pbw_basis(RootVec((0, 0))) == [(0, 0)]
    assert a2_full.pbw_basis(RootVec((1, 1))) == [(0, 1, 0), (1, 0, 1)]
    assert a2_full.pbw_basis(RootVec((1, 0))) == [(1, 0, 0)]


def test_rw_coefficient(sl2):
    assert sl2.rw_coefficient((0,)) == ONE
    assert sl2.rw_coefficient((1,)) == Q.inv() - Q
    assert sl2.rw_coefficient((2,)) == (Q.inv() - Q) ** 2 / (Q * qfact(2, 1))


def test_uw_multiply_rank1(sl2):
    f2 = sl2.monomial((2,))
    f3 = sl2.monomial((3,))
    prod = sl2.multiply(f2, f3)
    # F^2 F^3 = F^5 exactly in rank one
    assert prod == sl2.monomial((5,))


def test_uw_multiply_q_commutation():
    alg = UwAlgebra(A2, (0, 1))
    fb1, fb2 = alg.generator(1), alg.generator(2)
    # the monomial order puts position 2 first; that product is already normal
    assert alg.multiply(fb2, fb1) == alg.monomial((1, 1))
    # the reversed product straightens to a pure q-power, no lower terms:
    # the component above the monomial is one-dimensional
    prod = alg.multiply(fb1, fb2)
    assert set(prod.terms) == {(1, 1)}
    sigma = prod.terms[(1, 1)].q_monomial_exponent()
    assert sigma in (1, -1)
    # pinned after cross-checking by hand through the Serre relation
    assert sigma == 1


def test_sl2_d_elements(sl2):
    e, s = identity(A1), simple(A1, 0)
    w1 = Weight((1,))
    assert sl2.d_element(s, w1) == sl2.one()
    d = sl2.d_element(e, w1)
    assert d == sl2.monomial((1,), Q.inv() - Q)


def test_sl2_d_element_matches_brute_force_oracle():
    """Independent expansion of the graded R-matrix sum on the 2-dim module.

    Explicit matrices (basis v0 = highest, v1 = lowest): E v1 = v0, F v0 = v1,
    K v0 = q v0, K v1 = q^-1 v1; xi = dual of v0; b_{w.1} = v1.
    Only m = 0, 1 can pair nonzero; the m-th coefficient is
    (q^-1 - q)^m / (q^{m(m-1)/2} [m]!).
    """
    coeffs = {}
    for m in range(0, 4):
        # tau(E^m) = E^m; <xi, E^m v1> is 1 for m = 1, 0 otherwise (2-dim)
        pairing = ONE if m == 1 else ZERO
        if m == 0:
            pairing = ZERO  # xi has weight -s(w1) = ... pairs v0 against v1: zero
        coeff = (Q.inv() - Q) ** m / (RatQ.q_power(m * (m - 1) // 2) * qfact(m, 1))
        val = coeff * pairing
        if not val.is_zero:
            coeffs[(m,)] = val
    sl2 = UwAlgebra(A1, (0,))
    assert sl2.d_element(identity(A1), Weight((1,))).terms == coeffs


def test_sl2_ideals(sl2):
    e, s = identity(A1), simple(A1, 0)
    t_e = sl2.truncation(e, cutoff=3)
    assert all(sp.dim == 0 for sp in t_e.components.values())
    t_s = sl2.truncation(s, cutoff=3)
    assert t_s.components[(1,)].dim == 1  # spanned by the image of F
    assert sl2.truncation(s, cutoff=3).contains(sl2.monomial((1,)), sl2)


def test_sl2_normality_and_separation(sl2):
    e, s = identity(A1), simple(A1, 0)
    rep = verify_normality_uw(sl2, e, cutoff=3)
    assert rep["verdict"] == "pass"
    assert rep["checks"][0]["exponent"] == 0  # (w+e) w1 = 0 in rank one
    rep2 = verify_normality_uw(sl2, s, cutoff=3)
    assert rep2["verdict"] == "pass"
    sep = verify_separating_uw(sl2, e, s, cutoff=3)
    assert sep["verdict"] == "pass"
    assert sep["witnesses"] == []  # no violating H-prime in the 2-chain
    sep2 = verify_separating_uw(sl2, e, e, cutoff=3)
    assert sep2["verdict"] == "pass"
    assert len(sep2["witnesses"]) == 1  # q^Z{d_{e,lambda}} must hit I_w(s)
    with pytest.raises(SchubertError, match="not incident"):
        verify_separating_uw(sl2, s, e, cutoff=3)


def test_sl2_poset(sl2):
    rep = poset_check(sl2, cutoff=3)
    assert rep["verdict"] == "pass"
    assert rep["elements"] == ["e", "1"]


def test_d_element_homogeneous(a2_full):
    for u in (identity(A2), simple(A2, 0), from_word(A2, (0, 1))):
        for lam in (A2.fundamental(0), A2.fundamental(1), A2.rho()):
            d = a2_full.d_element(u, lam)
            label = d.label()
            assert label is not None
            expect = A2.weight_to_root(u.act_weight(lam) - a2_full.w.act_weight(lam))
            assert label == expect


def test_d_element_u_equals_w(a2_full):
    assert a2_full.d_element(a2_full.w, A2.rho()) == a2_full.one()


def test_a2_short_word_d_element():
    alg = UwAlgebra(A2, (0, 1))
    d = alg.d_element(identity(A2), A2.fundamental(0))
    assert set(d.terms) == {(1, 0)}  # degree is a single simple root


def test_fund_generation_a2(a2_full):
    for u in (identity(A2), simple(A2, 0), a2_full.w):
        rep = fund_generation_check(a2_full, u)
        assert rep["verdict"] == "pass"
        for pair in rep["pairs"]:
            assert isinstance(pair["n"], int)


def test_a2_poset_small_cutoff(a2_full):
    rep = poset_check(a2_full, cutoff=4)
    assert rep["verdict"] == "pass"
    assert len(rep["elements"]) == 6


def test_a2_separating_sample(a2_full):
    e = identity(A2)
    s1 = simple(A2, 0)
    rep = verify_separating_uw(a2_full, e, s1, cutoff=6)
    assert rep["verdict"] == "pass"
    ks = {w["K"] for w in rep["witnesses"]}
    assert ks == {"2", "2,1", "1,2", "1,2,1"}
    assert all(w["demazure_route"] and w["ideal_route"] for w in rep["witnesses"])


def test_graded_dims_match_pbw_count(a2_full):
    for nu in a2_full.labels_to_height(6):
        if any(nu):
            assert a2_full.graded_dim(RootVec(nu)) == len(a2_full.pbw_basis(RootVec(nu)))
