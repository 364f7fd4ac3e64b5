from fractions import Fraction

import pytest

from errors import DomainError
from algebra.hyperalg import (
    HyperAlgebra,
    HyperShape,
    WeightVector,
    cayley_classical,
    circ_classical,
    circ_product,
    coaction_targets,
    contract_classical,
    delta_split,
    delta_targets,
    hyperdet_fixed,
    hyperdet_normalized,
    hyperdet_unnormalized,
    minor_xi,
    phi_map,
    pluecker_poly,
    realign_index,
    relations,
    unrealign_index,
    uq_action,
)
from algebra.ncalg import GenId, NCPoly
from algebra.qmatrix import QMatrixContext, det_q_col, det_q_row
from algebra.qseries import qfact, v_pow


def test_shapes():
    assert HyperShape.cube(3, 2).dims == (3, 3)
    assert HyperShape((2, 3)).m == 2
    with pytest.raises(DomainError):
        HyperShape((2, 0))
    with pytest.raises(DomainError):
        HyperShape((2, 3)).n
    with pytest.raises(DomainError):
        HyperShape.cube(2, 3).check_axis(4)


def test_realignment_moves_one_axis_to_the_front():
    shape = HyperShape((2, 3, 4))
    assert realign_index(shape, 2, (1, 3, 4)) == (3, (1, 4))
    assert unrealign_index(shape, 2, 3, (1, 4)) == (1, 3, 4)
    with pytest.raises(DomainError):
        realign_index(shape, 1, (3, 1, 1))


def test_two_axis_relations_have_mat_q_size():
    assert len(relations(HyperAlgebra.cube(2, 2))) == 6


def test_single_axis_has_no_relations():
    assert len(relations(HyperAlgebra.cube(3, 1))) == 0


def test_fixed_forms_of_a_matrix_are_quantum_determinants():
    alg = HyperAlgebra.cube(3, 2)
    assert hyperdet_fixed(alg, 1) == det_q_row(3)
    assert hyperdet_fixed(alg, 2) == det_q_col(3)


def test_normalized_form_divides_the_full_sum():
    alg = HyperAlgebra.cube(2, 3)
    assert hyperdet_normalized(alg).scale(qfact(2, 2)) == hyperdet_unnormalized(alg)
    assert len(hyperdet_unnormalized(alg)) == 8
    assert len(hyperdet_fixed(alg, 1)) == 4


def test_hyperdeterminants_need_cubical_shapes():
    with pytest.raises(DomainError):
        hyperdet_fixed(HyperAlgebra(HyperShape((2, 3))))


def test_full_minor_is_the_fixed_form():
    alg = HyperAlgebra.cube(2, 3)
    full = (1, 2)
    assert minor_xi(alg, full, full, full) == hyperdet_fixed(alg, 1)
    assert minor_xi(alg, (), (), ()) == NCPoly.one()
    assert minor_xi(alg, (2,), (1,), (2,)) == NCPoly.of(alg.gen(2, 1, 2))
    with pytest.raises(DomainError):
        minor_xi(alg, (1,), (1, 2), (1,))


def test_cayley_sign_conventions():
    values = {(1, 1): 1, (1, 2): 2, (2, 1): 3, (2, 2): 4}
    assert cayley_classical(values, 2, 2) == -2
    assert cayley_classical(values, 2, 2, signed_axes="first-half") == 0
    with pytest.raises(DomainError):
        cayley_classical({}, 2, 3)


def test_numeric_products():
    A = {(1, 1): 1, (1, 2): 2, (2, 1): 3, (2, 2): 4}
    B = {(1, 1): 0, (1, 2): 1, (2, 1): 1, (2, 2): 0}
    C = contract_classical(A, 2, 2, B, 2, 1, 2)
    assert C == {(1, 1): 2, (1, 2): 1, (2, 1): 4, (2, 2): 3}
    identity = [[1, 0], [0, 1]]
    assert circ_classical(identity, A, 2, 2, 1) == {k: Fraction(v) for k, v in A.items()}
    swap = [[0, 1], [1, 0]]
    assert circ_classical(swap, A, 2, 2, 1, "left")[(1, 1)] == 3


def test_circ_product_entries():
    alg = HyperAlgebra.cube(2, 2)
    images = circ_product([[1, 0], [0, 1]], alg, 1)
    assert images[alg.gen(1, 2)] == alg.a(1, 2)
    B = QMatrixContext(2, component=1)
    images = circ_product(B, alg, 2)
    assert images[alg.gen(1, 1)] == NCPoly.of(B.gen(1, 1), alg.gen(1, 1)) + NCPoly.of(B.gen(1, 2), alg.gen(1, 2))
    with pytest.raises(DomainError):
        circ_product(QMatrixContext(2, component=0), alg, 1)


def test_phi_splits_indices_into_pairs():
    alg = HyperAlgebra.cube(2, 4)
    image = phi_map(alg.a(1, 2, 2, 1), alg)
    assert image == NCPoly.of(GenId(0, "a", (1, 2)), GenId(1, "a", (2, 1)))
    with pytest.raises(DomainError):
        phi_map(NCPoly.one(), HyperAlgebra.cube(2, 3))


def test_comultiplication_targets():
    alg = HyperAlgebra.cube(2, 3)
    left, right = delta_targets(alg, 1)
    assert (left.shape.m, right.shape.m) == (2, 3)
    image = delta_split(alg.a(1, 2, 1), alg, 1)
    assert len(image) == 2
    with pytest.raises(DomainError):
        delta_targets(alg, 3)
    with pytest.raises(DomainError):
        coaction_targets(alg, "middle")


def test_weight_action_on_the_determinant():
    alg = HyperAlgebra.cube(2, 2)
    det = hyperdet_fixed(alg, 1)
    weight = WeightVector((Fraction(1, 2), 1))
    assert uq_action(weight, "left", det, alg) == det.scale(v_pow(3))
    assert uq_action(weight, "right", det, alg) == det.scale(v_pow(3))
    with pytest.raises(DomainError):
        WeightVector((Fraction(1, 3), 0))


def test_raising_and_lowering_single_letters():
    alg = HyperAlgebra.cube(2, 2)
    assert uq_action(("e", 1), "left", alg.a(1, 2), alg) == alg.a(1, 1)
    assert uq_action(("e", 1), "left", alg.a(1, 1), alg).is_zero()
    assert uq_action(("f", 1), "right", alg.a(2, 1), alg) == alg.a(1, 1)
    with pytest.raises(DomainError):
        uq_action(("e", 2), "left", alg.a(1, 1), alg)


def test_pluecker_preconditions():
    with pytest.raises(DomainError):
        pluecker_poly(HyperAlgebra.cube(4, 2), "thp1_a", 2)
    with pytest.raises(DomainError):
        pluecker_poly(HyperAlgebra.cube(4, 2), "thp9", 1)
    with pytest.raises(DomainError):
        pluecker_poly(HyperAlgebra.cube(3, 2), "thp3", 1)
