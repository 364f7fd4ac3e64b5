from fractions import Fraction

import pytest

from errors import DomainError
from algebra.ncalg import (
    GenId,
    NCPoly,
    Perm,
    RelationSet,
    act_axis_perm,
    complement,
    cross,
    ell_subset,
    gen,
    inv_blocks,
    inv_pair,
    inversions,
    permutations_with_length,
    shuffle_perm,
    specialize_commutative,
    subsets,
)
from algebra.qseries import q_pow


def _x(*index, component=0):
    return NCPoly.of(GenId(component, "a", index))


def test_letters_in_one_component_do_not_commute():
    x, y = _x(1, 1), _x(1, 2)
    assert x * y != y * x
    assert (x * y - y * x).degree == 2


def test_letters_in_different_components_commute():
    x, y = _x(1, 2), _x(2, 1, component=1)
    assert x * y == y * x
    assert len(x * y - y * x) == 0


def test_scalars_and_zero():
    x = _x(1, 1)
    assert (x - x).is_zero()
    assert x * 0 == NCPoly.zero()
    assert (x + 1).coeff(()) == 1
    assert NCPoly.one() * x == x


def test_substitute_is_an_algebra_map():
    x, y = GenId(0, "a", (1,)), GenId(0, "a", (2,))
    p = NCPoly.of(x, y)
    image = p.substitute({x: NCPoly.of(y) + NCPoly.of(x)})
    assert image == NCPoly.of(y, y) + NCPoly.of(x, y)


def test_monic_scales_the_smallest_word_to_one():
    x, y = _x(1), _x(2)
    p = (x * y).scale(q_pow(2)) - (y * x).scale(q_pow(3))
    assert p.monic() == x * y - (y * x).scale(q_pow(1))


def test_homogeneity():
    x, y = _x(1), _x(2)
    assert (x * y + y * x).is_homogeneous()
    assert not (x + x * y).is_homogeneous()
    assert sorted((x + x * y).homogeneous_components()) == [1, 2]


def test_gen_checks_names():
    assert gen("b", 1, 2, component=1) == GenId(1, "b", (1, 2))
    with pytest.raises(DomainError):
        gen("z", 1)


def test_permutation_statistics():
    assert inversions((3, 1, 2)) == 2
    assert Perm((2, 3, 1)).length == 2
    assert Perm((2, 3, 1)).inverse() == Perm((3, 1, 2))
    assert Perm((2, 1, 3)).compose(Perm((2, 1, 3))) == Perm.identity(3)
    assert sorted(length for _, length in permutations_with_length(3)) == [0, 1, 1, 2, 2, 3]
    with pytest.raises(DomainError):
        Perm((1, 1))


def test_reversal_complements_the_inversion_count():
    for n in range(1, 5):
        for s in Perm.all(n):
            assert s.length + s.reversed_word().length == n * (n - 1) // 2


def test_subset_statistics():
    assert ell_subset((2, 3)) == 2
    assert shuffle_perm((2, 3), 4).images == (2, 3, 1, 4)
    assert shuffle_perm((2, 3), 4).length == ell_subset((2, 3))
    assert cross((3, 4), (1, 2)) == 4
    assert inv_pair((2, 1), (1, 2)) == 1
    assert inv_blocks(((1, 3), (2, 4)), ((2, 4), (1, 3))) == 1 + 3
    assert complement((2,), range(1, 4)) == (1, 3)
    assert subsets(range(1, 4), 2) == [(1, 2), (1, 3), (2, 3)]


def test_axis_permutation_moves_indices():
    p = NCPoly.of(GenId(0, "a", (1, 2, 3)))
    moved = act_axis_perm(Perm((2, 3, 1)), p)
    assert moved == NCPoly.of(GenId(0, "a", (3, 1, 2)))
    with pytest.raises(DomainError):
        act_axis_perm(Perm((2, 1)), p)


def test_commutative_specialization():
    x, y = GenId(0, "a", (1,)), GenId(0, "a", (2,))
    p = NCPoly.of(x, y) - NCPoly.of(y, x).scale(q_pow(1))
    assert specialize_commutative(p, {x: 2, y: 3}, 1) == 0
    assert specialize_commutative(p, {x: 2, y: 3}, 2) == Fraction(-6)
    with pytest.raises(DomainError):
        specialize_commutative(p, {x: 2}, 1)
    with pytest.raises(DomainError):
        specialize_commutative(p, {x: 0}, 1)


def test_relation_sets_deduplicate_up_to_scalars():
    x, y = _x(1), _x(2)
    r = x * y - (y * x).scale(q_pow(1))
    rels = RelationSet.from_polys([r, r.scale(q_pow(3)), NCPoly.zero()], "demo")
    assert len(rels) == 1
    assert rels.alphabet() == {GenId(0, "a", (1,)), GenId(0, "a", (2,))}
    assert len(rels.union(RelationSet.from_polys([x * x]))) == 2


def test_relation_sets_require_quadratic_homogeneous_polys():
    x, y = _x(1), _x(2)
    with pytest.raises(DomainError):
        RelationSet.from_polys([x * y + x])
    with pytest.raises(DomainError):
        RelationSet.from_polys([x * y * x])
