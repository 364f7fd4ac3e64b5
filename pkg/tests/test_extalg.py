import pytest

from errors import DomainError
from algebra.extalg import ExtElem, big_omega, coeff_of, eta_vector, omega_vector, top_mono, truncate, wedge, wedge_power
from algebra.hyperalg import HyperAlgebra, hyperdet_unnormalized
from algebra.ncalg import NCPoly
from algebra.qseries import neg_q_pow


def test_quantum_exterior_relations():
    x1 = ExtElem.basis((2,), (1,))
    x2 = ExtElem.basis((2,), (2,))
    assert wedge(x1, x1).is_zero()
    assert coeff_of(wedge(x1, x2), [(1, 2)]) == NCPoly.one()
    assert coeff_of(wedge(x2, x1), [(1, 2)]) == NCPoly.scalar(neg_q_pow(1))


def test_slots_multiply_independently():
    e = ExtElem.basis((2, 2), (2,), (1,))
    f = ExtElem.basis((2, 2), (1,), (2,))
    # one inversion in the first slot, none in the second
    assert coeff_of(e ^ f, top_mono((2, 2))) == NCPoly.scalar(neg_q_pow(1))


def test_incompatible_slots_are_rejected():
    with pytest.raises(DomainError):
        wedge(ExtElem.basis((2,), (1,)), ExtElem.basis((3,), (1,)))
    with pytest.raises(DomainError):
        ExtElem((2,), {((2, 1),): NCPoly.one()})
    with pytest.raises(DomainError):
        wedge_power(ExtElem.basis((2,), (1,)), 0)


def test_omega_vector_shape():
    alg = HyperAlgebra.cube(2, 3)
    omegas = omega_vector(alg, 2)
    assert len(omegas) == 2
    assert omegas[0].caps == (2, 2)
    assert all(len(w) == 4 for w in omegas)
    assert eta_vector(alg, 2)[0].caps == (2, 2, 2)


def test_truncate_keeps_allowed_slot_values():
    alg = HyperAlgebra.cube(2, 2)
    omega = omega_vector(alg, 1)[0]
    assert len(truncate(omega, 0, [1])) == 1


@pytest.mark.parametrize("m", [2, 3])
def test_volume_coefficient_is_the_full_permutation_sum(m):
    alg = HyperAlgebra.cube(2, m)
    power = wedge_power(big_omega(alg, 1), 2)
    assert coeff_of(power, top_mono(power.caps)) == hyperdet_unnormalized(alg)
