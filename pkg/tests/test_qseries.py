from fractions import Fraction

import pytest

from errors import DomainError, NonSquareError, PoleError
from algebra.qseries import (
    LaurentV,
    RationalFn,
    eval_at,
    neg_q_pow,
    q_pow,
    qbinom,
    qfact,
    qnum,
    v_pow,
)


def test_qnum_is_geometric_sum_in_q():
    assert qnum(3) == LaurentV({0: 1, 2: 1, 4: 1})
    assert qnum(2, base=2) == LaurentV({0: 1, 4: 1})
    assert qnum(0).is_zero()


def test_qfact_at_one_is_factorial():
    assert qfact(0).is_one()
    assert eval_at(qfact(4), 1) == 24
    assert eval_at(qfact(3, base=2), 1) == 6


@pytest.mark.parametrize("n,t,expected", [(4, 2, 6), (5, 1, 5), (6, 3, 20), (3, 0, 1)])
def test_qbinom_is_polynomial_and_counts_subsets(n, t, expected):
    value = qbinom(n, t)
    assert value.is_polynomial()
    assert eval_at(value, 1) == expected


def test_qbinom_rejects_t_above_n():
    with pytest.raises(DomainError):
        qbinom(2, 3)


def test_rational_functions_normalize_to_lowest_terms():
    # (q - 1) / (v - 1) = v + 1
    value = RationalFn(LaurentV({2: 1, 0: -1}), LaurentV({1: 1, 0: -1}))
    assert value == RationalFn(LaurentV({1: 1, 0: 1}))
    assert RationalFn(qfact(3), qfact(2)) == RationalFn.from_laurent(qnum(3))


def test_equal_values_hash_equal():
    a = RationalFn(LaurentV({4: 1, 0: -1}), LaurentV({2: 1, 0: -1}))
    b = RationalFn.from_laurent(LaurentV({2: 1, 0: 1}))
    assert a == b
    assert hash(a) == hash(b)


def test_signed_powers():
    assert neg_q_pow(3) == -q_pow(3)
    assert neg_q_pow(2) == q_pow(2)
    assert q_pow(2) * q_pow(-2) == 1
    assert v_pow(2) == q_pow(1)


def test_arithmetic_and_inverse():
    x = RationalFn.from_laurent(qnum(2))
    assert x * x.inverse() == 1
    assert (x - x).is_zero()
    assert x / x == 1
    assert x ** -1 == x.inverse()


def test_eval_at_uses_square_root_for_half_powers():
    assert eval_at(v_pow(1), 4) == 2
    assert eval_at(v_pow(3), Fraction(9, 4)) == Fraction(27, 8)
    with pytest.raises(NonSquareError):
        eval_at(v_pow(1), 2)


def test_eval_at_pole():
    value = RationalFn(1, LaurentV({2: 1, 0: -1}))
    with pytest.raises(PoleError):
        eval_at(value, 1)
    assert eval_at(value, 2) == 1


def test_inverse_of_zero_is_a_pole():
    with pytest.raises(PoleError):
        RationalFn(0).inverse()


def test_text_form():
    assert qnum(3).to_text() == "1 + q + q^2"
    assert RationalFn(1, qnum(2)).to_text() == "(1)/(1 + q)"
