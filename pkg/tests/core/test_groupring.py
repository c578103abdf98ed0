import pytest
import numpy as np
from itertools import permutations
from pdcomplex.core.groupring import (FiniteGroup, GroupHom, GroupRingElement,
                                      OrientationChar, aug, bar, cyclic_group,
                                      diagonal_hom, norm_element,
                                      outer_product, regular_rep, right_rep,
                                      ring_mul, swap_hom, trivial_group,
                                      twisted_int)


def symmetric_group_3() -> FiniteGroup:
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(3))] for q in perms]
             for p in perms]
    return FiniteGroup(table, name='S3')


@pytest.fixture
def z6():
    return cyclic_group(6)


@pytest.fixture
def s3():
    return symmetric_group_3()


def test_cyclic_group(z6):
    assert z6.order == 6
    assert z6.mul(4, 5) == 3
    assert z6.inv(2) == 4
    assert z6.power(1, 8) == 2
    assert z6.element_order(2) == 3
    assert z6.generators() == [1]
    assert z6.is_abelian()


def test_symmetric_group(s3):
    assert s3.order == 6
    assert not s3.is_abelian()
    assert sorted(s3.generated_subgroup(s3.generators())) == list(range(6))
    for g in s3.elements:
        assert s3.mul(g, s3.inv(g)) == 0


def test_invalid_tables():
    with pytest.raises(ValueError, match='Row 1'):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(ValueError, match='identity'):
        FiniteGroup([[1, 0], [0, 1]])
    with pytest.raises(ValueError, match='square'):
        FiniteGroup([[0, 1]])
    with pytest.raises(ValueError, match='positive'):
        cyclic_group(0)


def test_non_associative_table():
    # a Latin square with identity 0 that is not a group
    table = [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]]
    with pytest.raises(ValueError, match='associative'):
        FiniteGroup(table)


def test_direct_product_indexing():
    G = cyclic_group(2).direct_product(cyclic_group(3))
    assert G.order == 6
    # (1, 2) * (1, 2) = (0, 1)
    assert G.mul(1 * 3 + 2, 1 * 3 + 2) == 0 * 3 + 1


def test_element_normal_form(z6):
    x = GroupRingElement(z6, [(3, 2), (1, -1), (3, -2), (0, 5)])
    assert x.terms == ((0, 5), (1, -1))
    assert x.coeff(3) == 0
    assert GroupRingElement(z6, {2: 0}).is_zero()
    with pytest.raises(ValueError):
        GroupRingElement(z6, {6: 1})


def test_ring_operations(z6):
    t = GroupRingElement.basis(z6, 1)
    one = GroupRingElement.one(z6)
    # (1 + t)(1 - t) = 1 - t^2
    assert (one + t) * (one - t) == one - GroupRingElement.basis(z6, 2)
    N = norm_element(z6)
    assert (t - one) * N == GroupRingElement.zero(z6)
    assert aug(N) == 6
    assert aug(ring_mul(N, N)) == 36
    assert 3 * t == GroupRingElement.basis(z6, 1, 3)


def test_noncommutative_product(s3):
    a, b = (GroupRingElement.basis(s3, g) for g in (1, 2))
    assert a * b == GroupRingElement.basis(s3, s3.mul(1, 2))
    if s3.mul(1, 2) != s3.mul(2, 1):
        assert a * b != b * a


def test_bar_is_anti_involution(s3):
    sign = OrientationChar(s3, [0, 1, 1, 0, 0, 1])
    x = GroupRingElement(s3, {1: 2, 3: -1, 4: 1})
    y = GroupRingElement(s3, {0: 1, 2: 3, 5: -2})
    assert bar(bar(x, sign), sign) == x
    assert bar(x * y, sign) == bar(y, sign) * bar(x, sign)


def test_orientation_character(z6):
    omega = OrientationChar(z6, [0, 1, 0, 1, 0, 1])
    assert omega.sign(3) == -1
    assert not omega.is_trivial()
    assert OrientationChar.trivial(z6).is_trivial()
    with pytest.raises(ValueError, match='pair'):
        OrientationChar(z6, [0, 1, 1, 0, 0, 0])
    with pytest.raises(ValueError, match='values'):
        OrientationChar(z6, [0, 1])


def test_representations(s3):
    rng = np.random.default_rng(7)
    for _ in range(10):
        x = GroupRingElement.from_vector(s3, rng.integers(-3, 4, 6))
        y = GroupRingElement.from_vector(s3, rng.integers(-3, 4, 6))
        assert np.array_equal(regular_rep(x).dot(y.to_vector()),
                              (x * y).to_vector())
        assert np.array_equal(right_rep(x).dot(y.to_vector()),
                              (y * x).to_vector())


def test_hom_from_generators(z6):
    z3 = cyclic_group(3)
    phi = GroupHom.from_generators(z6, z3, [1], [1])
    assert phi.images == (0, 1, 2, 0, 1, 2)
    assert phi.is_surjective()
    assert not phi.is_injective()
    assert GroupHom.from_generators(z3, z6, [1], [1]) is None
    assert GroupHom.from_generators(z3, z6, [1], [2]).images == (0, 2, 4)


def test_invalid_hom(z6):
    with pytest.raises(ValueError, match='not a homomorphism'):
        GroupHom(z6, z6, [0, 2, 1, 3, 4, 5])
    with pytest.raises(ValueError, match='needs 6 images'):
        GroupHom(z6, z6, [0, 1])


def test_push_and_pullback(z6):
    z2 = cyclic_group(2)
    phi = GroupHom.from_generators(z6, z2, [1], [1])
    x = GroupRingElement(z6, {1: 1, 3: 2, 4: 5})
    assert x.push(phi) == GroupRingElement(z2, {1: 3, 0: 5})
    omega = OrientationChar(z2, [0, 1]).pullback(phi)
    assert omega.values == (0, 1, 0, 1, 0, 1)
    assert aug(x.push(GroupHom.trivial(z6, trivial_group()))) == 8


def test_product_homs(s3):
    delta = diagonal_hom(s3)
    assert delta(4) == 4 * 6 + 4
    swap = swap_hom(s3, cyclic_group(2))
    assert swap(2 * 2 + 1) == 1 * 6 + 2
    x = GroupRingElement(s3, {1: 2})
    y = GroupRingElement(cyclic_group(2), {1: 3})
    G = s3.direct_product(cyclic_group(2))
    assert outer_product(x, y, G) == GroupRingElement(G, {1 * 2 + 1: 6})


def test_twisted_int():
    z2 = cyclic_group(2)
    x = GroupRingElement(z2, {0: 3, 1: 5})
    assert twisted_int(x, OrientationChar.trivial(z2)) == 8
    assert twisted_int(x, OrientationChar(z2, [0, 1])) == -2
