import pytest

from errors import DomainError
from algebra.hyperalg import HyperAlgebra
from algebra.ncalg import GenId
from algebra.pfaffian import (
    BlockIndex,
    PfShape,
    block_arrangements,
    bridge_c_entries,
    canonical_symplectic_b,
    compose_constant,
    det_pf_constant,
    hypf_relations,
    pf_compose_poly,
    pf_det_bridge_poly,
    pf_full,
    pf_laplace_poly,
    pf_prime,
    pf_recursive,
    pf_volume_sum,
)
from algebra.qseries import RationalFn, qfact
from algebra.render import poly_to_text


def test_shape_and_block_index():
    shape = PfShape(2, 1, 3)
    assert shape.size == 6
    assert shape.arity == 2
    with pytest.raises(DomainError):
        PfShape(0, 1, 1)
    assert BlockIndex.from_flat((1, 2, 3, 4), 2).blocks == ((1, 2), (3, 4))
    with pytest.raises(DomainError):
        BlockIndex.from_flat((1, 2, 3), 2)
    with pytest.raises(DomainError):
        BlockIndex(((2, 1),))
    with pytest.raises(DomainError):
        shape.gen(BlockIndex(((1, 7),)))


def test_block_arrangements():
    assert len(block_arrangements((1, 2, 3, 4), 2)) == 6
    sorted_minima = block_arrangements((1, 2, 3, 4), 2, True)
    assert [inv for _, inv in sorted_minima] == [0, 1, 2]
    with pytest.raises(DomainError):
        block_arrangements((1, 2, 3), 2)


def test_pf_prime_of_a_four_by_four_block():
    text = poly_to_text(pf_prime(PfShape(2, 1, 2)))
    assert text == "b[1,2].b[3,4] - q*b[1,3].b[2,4] + q^2*b[1,4].b[2,3]"


@pytest.mark.parametrize("shape", [PfShape(2, 1, 2), PfShape(1, 2, 2), PfShape(1, 1, 3)])
def test_recursive_expansion_matches_block_sorted_sum(shape):
    assert pf_recursive(shape) == pf_prime(shape)


def test_full_sum_is_normalized_volume():
    shape = PfShape(1, 2, 2)
    assert pf_full(shape).scale(qfact(2, 1)) == pf_volume_sum(shape)


def test_index_sets_must_fit():
    with pytest.raises(DomainError):
        pf_prime(PfShape(1, 2, 2), [(1, 2)])
    with pytest.raises(DomainError):
        pf_prime(PfShape(1, 1, 2), [(1, 2, 3)])


def test_hypf_relations():
    assert len(hypf_relations(PfShape(1, 1, 3))) == 3
    with pytest.raises(DomainError):
        hypf_relations(PfShape(2, 1, 1))
    with pytest.raises(DomainError):
        hypf_relations(PfShape(1, 1, 3), sign="other")


def test_laplace_with_empty_block_is_trivial():
    assert pf_laplace_poly(PfShape(1, 1, 2), 0).is_zero()
    with pytest.raises(DomainError):
        pf_laplace_poly(PfShape(1, 1, 2), 3)
    with pytest.raises(DomainError):
        pf_laplace_poly(PfShape(1, 1, 2), 1, placement="sideways")


def test_constants():
    assert compose_constant(1, 1, 3) == 1
    assert det_pf_constant(3, 1) == 1
    assert det_pf_constant(3, 1, "displayed") == 1
    assert det_pf_constant(1, 2) == RationalFn(qfact(2, 1), qfact(2, 2))
    with pytest.raises(DomainError):
        det_pf_constant(1, 2, "guess")
    with pytest.raises(DomainError):
        pf_compose_poly(0, 1, 1, 1)


def test_bridge_inputs():
    b = canonical_symplectic_b(2)
    assert len(b) == 6
    assert b[GenId(1, "b", (1, 2))] == 1
    assert b[GenId(1, "b", (1, 3))].is_zero()
    with pytest.raises(DomainError):
        bridge_c_entries(HyperAlgebra.cube(2, 2), 2, b_component=0)
    with pytest.raises(DomainError):
        pf_det_bridge_poly(HyperAlgebra.cube(3, 2), 2)
