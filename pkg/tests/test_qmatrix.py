import random

import pytest

from errors import DomainError
from algebra.ncalg import NCPoly
from algebra.qmatrix import (
    QMatrixContext,
    coproduct_matq,
    det_of_matrix,
    det_q_col,
    det_q_row,
    matq_relations,
    matrix_product,
    normal_form,
    transposition_matrix,
)
from algebra.qseries import q_pow


def test_relations_cover_rows_and_columns():
    assert len(matq_relations(2)) == 6
    assert len(matq_relations(3)) == 9 + 9 + 18


def test_normal_form_rewrites_descending_pairs():
    ctx = QMatrixContext(2)
    a = lambda i, j: NCPoly.of(ctx.gen(i, j))
    assert normal_form(a(1, 2) * a(1, 1), ctx) == (a(1, 1) * a(1, 2)).scale(q_pow(-1))
    assert normal_form(a(2, 1) * a(1, 2), ctx) == a(1, 2) * a(2, 1)
    assert normal_form(a(1, 1) * a(2, 2), ctx) == a(1, 1) * a(2, 2)


def test_relations_vanish_in_normal_form():
    ctx = QMatrixContext(3)
    assert all(normal_form(r, ctx).is_zero() for r in matq_relations(3))


@pytest.mark.parametrize("n", [2, 3])
def test_row_and_column_determinants_agree(n):
    assert normal_form(det_q_row(n) - det_q_col(n), QMatrixContext(n)).is_zero()


def test_determinant_is_central():
    ctx = QMatrixContext(2)
    det = det_q_row(2)
    for g in ctx.generators():
        x = NCPoly.of(g)
        assert normal_form(x * det - det * x, ctx).is_zero()


def test_determinant_is_multiplicative():
    A, B = QMatrixContext(2, 0), QMatrixContext(2, 1)
    lhs = det_of_matrix(matrix_product(A.matrix(), B.matrix()))
    assert normal_form(lhs - det_q_row(2, 0) * det_q_row(2, 1), [A, B]).is_zero()


def test_determinant_is_grouplike():
    image = coproduct_matq(det_q_row(2), 2)
    contexts = [QMatrixContext(2, 0), QMatrixContext(2, 1)]
    assert normal_form(image - det_q_row(2, 0) * det_q_row(2, 1), contexts).is_zero()


def test_row_interchange_scales_by_minus_q():
    ctx = QMatrixContext(3)
    det = det_q_row(3)
    for i in (1, 2):
        swapped = det_of_matrix(matrix_product(transposition_matrix(3, i), ctx.matrix()))
        assert normal_form(swapped + det.scale(q_pow(1)), ctx).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_random_rewrite_order_reaches_the_same_normal_form(n):
    ctx = QMatrixContext(n)
    gens = ctx.generators()
    rng = random.Random(7)
    for _ in range(200):
        word = NCPoly.of(*(rng.choice(gens) for _ in range(3)))
        assert normal_form(word, ctx, rng=random.Random(rng.randrange(1000))) == normal_form(word, ctx)


def test_bad_sizes():
    with pytest.raises(DomainError):
        QMatrixContext(0)
    with pytest.raises(DomainError):
        transposition_matrix(2, 2)
    with pytest.raises(DomainError):
        QMatrixContext(2).gen(3, 1)
