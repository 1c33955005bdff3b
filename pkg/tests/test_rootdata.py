import pytest

from qore.rootdata import CartanData, CartanDataError, RootVec, Weight


def test_presets_validate():
    for name in ("A1", "A2", "A3", "B2", "C2", "G2"):
        cd = CartanData.preset(name)
        assert cd.is_finite_type


def test_rejects_bad_matrices():
    with pytest.raises(CartanDataError, match="diagonal"):
        CartanData([[1]], [1])
    with pytest.raises(CartanDataError, match="symmetrizable"):
        CartanData([[2, -1], [-2, 2]], [1, 1])
    with pytest.raises(CartanDataError, match="zero pattern"):
        CartanData([[2, 0], [-1, 2]], [1, 1])
    with pytest.raises(CartanDataError, match="positive"):
        CartanData([[2]], [0])


def test_affine_matrix_accepted_but_not_finite():
    cd = CartanData([[2, -2], [-2, 2]], [1, 1])
    assert not cd.is_finite_type


def test_form_a2():
    cd = CartanData.preset("A2")
    a1, a2 = cd.alpha(0), cd.alpha(1)
    assert cd.form(a1, a2) == -1
    assert cd.form(a1, a1) == 2
    assert cd.form(a2, a1) == -1


def test_pairing_rho():
    for name in ("A2", "B2", "G2"):
        cd = CartanData.preset(name)
        rho = cd.rho()
        for i in range(cd.rank):
            assert cd.pairing(rho, i) == 1


def test_mixed_pairing_a2():
    cd = CartanData.preset("A2")
    w1 = cd.fundamental(0)
    assert cd.pair_weight_root(w1, cd.alpha(0)) == 1
    assert cd.pair_weight_root(w1, cd.alpha(1)) == 0
    assert cd.pair_weight_root(cd.zero_weight(), cd.alpha(0) + cd.alpha(1)) == 0


def test_form_symmetric_randomized():
    import random

    rng = random.Random(3)
    for name in ("A2", "B2", "G2", "A3"):
        cd = CartanData.preset(name)
        for _ in range(40):
            b = RootVec(tuple(rng.randint(-4, 4) for _ in range(cd.rank)))
            g = RootVec(tuple(rng.randint(-4, 4) for _ in range(cd.rank)))
            assert cd.form(b, g) == cd.form(g, b)


def test_root_to_weight_consistency():
    # <beta, alpha_i^vee> computed two ways
    for name in ("A2", "B2", "G2"):
        cd = CartanData.preset(name)
        for j in range(cd.rank):
            wt = cd.root_to_weight(cd.alpha(j))
            for i in range(cd.rank):
                assert wt.coords[i] == cd.cartan[i][j]
            # mixed pairing matches the form through the conversion
            for i in range(cd.rank):
                lam = cd.fundamental(i)
                assert cd.pair_weight_root(lam, cd.alpha(j)) == (
                    cd.sym[j] if i == j else 0
                )


def test_dominance():
    assert Weight((0, 2)).is_dominant
    assert not Weight((0, 2)).is_strictly_dominant
    assert Weight((1, 1)).is_strictly_dominant
    assert RootVec((1, 0)).height == 1


def test_from_config():
    cd = CartanData.from_config({"type": "A2"})
    assert cd.name == "A2"
    cd2 = CartanData.from_config({"cartan": "[[2,-1],[-1,2]]", "sym": "[1,1]"})
    assert cd2.key == cd.key
    with pytest.raises(CartanDataError):
        CartanData.from_config({"cartan": "[[2,-1],[-1,2]]"})
