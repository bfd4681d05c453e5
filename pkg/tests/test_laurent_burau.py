import random

import pytest

from burau_orbits.laurent_burau import (
    BT, BX, BY, LaurentPoly, PSL_ONE, PSL_X, PSL_Y, BurauMatrix, burau_word_eval, reduce_c_dg,
    special_element, word_ab,
)

t = LaurentPoly({1: 1})
one = LaurentPoly.const(1)


def test_canonical_form_drops_zeros():
    assert LaurentPoly({0: 0, 3: 2, -1: 0}) == LaurentPoly({3: 2})
    assert (t - t).is_zero()
    assert LaurentPoly({2: 1}) * LaurentPoly({-2: 1}) == one


def test_omega_examples():
    assert special_element("omega", 3, 0) == one
    assert special_element("omega", 3, 1) == LaurentPoly({0: 1, 1: -1, 2: 1})


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("ell", [1, 2, 3, 4])
def test_omega_factors_through_delta(p, ell):
    if p ** ell > 2500:
        pytest.skip("large")
    w = special_element("omega", p, ell)
    assert w == special_element("omega", p, ell - 1) * special_element("delta", p, ell)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("ell", [0, 1, 2])
def test_lambda_omega_identity(p, ell):
    lam = special_element("lambda", p)
    assert lam == LaurentPoly({0: -1, 1: -1})
    assert lam * special_element("omega", p, ell) == (one + lam) ** (p ** ell) - one


def test_special_element_errors():
    with pytest.raises(ValueError):
        special_element("omega", 2, 1)
    with pytest.raises(ValueError):
        special_element("delta", 5, 0)
    with pytest.raises(ValueError):
        special_element("omega", 9, 1)


def test_generator_relations():
    t3 = BurauMatrix.scalar(t ** 3)
    assert burau_word_eval("XXX") == t3
    assert burau_word_eval("YY") == t3
    assert burau_word_eval([]) == BurauMatrix.identity()
    assert BX ** 3 == BY ** 2 == t3


def test_determinants():
    assert BX.det() == t ** 2
    assert BY.det() == -(t ** 3)


def test_reduce_c_dg_examples():
    assert reduce_c_dg(BX) == (PSL_X, 2)
    assert reduce_c_dg(BY) == (PSL_Y, 3)
    assert reduce_c_dg(BT) == (PSL_ONE, 2)


def test_reduce_rejects_non_unit_determinant():
    M = BurauMatrix(one + one, LaurentPoly(), LaurentPoly(), one)
    with pytest.raises(ValueError):
        reduce_c_dg(M)


def test_inverse_letters():
    for g in ("X", "Y", "T"):
        assert burau_word_eval([g, g + "-"]) == BurauMatrix.identity()
    assert burau_word_eval(["X^-1", "X"]) == BurauMatrix.identity()


def test_psl_sign_convention():
    from burau_orbits.laurent_burau import PSL2Elem
    assert PSL2Elem.make(0, -1, 1, 0) == PSL2Elem.make(0, 1, -1, 0)
    assert PSL_X @ PSL_X @ PSL_X == PSL_ONE
    assert PSL_Y @ PSL_Y == PSL_ONE


def test_ab_matches_dg_on_random_words():
    rng = random.Random(20261015)
    letters = ["X", "Y", "X-", "Y-"]
    for _ in range(500):
        w = [rng.choice(letters) for _ in range(rng.randint(0, 20))]
        _, dg = reduce_c_dg(burau_word_eval(w))
        assert word_ab(w) == dg % 6


def test_dg_additive():
    rng = random.Random(7)
    letters = ["X", "Y", "T", "X-", "Y-", "T-"]
    for _ in range(100):
        u = [rng.choice(letters) for _ in range(rng.randint(0, 8))]
        v = [rng.choice(letters) for _ in range(rng.randint(0, 8))]
        dg = lambda w: reduce_c_dg(burau_word_eval(w))[1]  # noqa: E731
        assert dg(u + v) == dg(u) + dg(v)
