import pytest
import numpy as np
from pdcomplex.core.errors import PeifferCollectionError
from pdcomplex.core.linalg import AbelianGroup
from pdcomplex.crossed.peiffer import PeifferCollector, tensor_vector
from pdcomplex.crossed.words import (FreeWord, PreCrossedModule,
                                     peiffer_commutator)


def cyclic_module(n: int) -> PreCrossedModule:
    return PreCrossedModule(1, [FreeWord.from_powers(1, [(0, n)])], ['a'],
                            ['r'], name=f'Z{n}')


def random_word(M: PreCrossedModule, rng, length: int = 6):
    letters = []
    for _ in range(length):
        x = int(rng.integers(0, M.n_relators))
        alpha = FreeWord.from_powers(M.n_gens, [
            (int(rng.integers(0, M.n_gens)), int(rng.integers(-3, 4)))])
        letters.append((x, alpha, int(rng.choice([-1, 1]))))
    return M.word(letters)


@pytest.fixture
def collector():
    return PeifferCollector(cyclic_module(2))


def test_collector_invariants(collector):
    assert collector.group.order == 2
    assert collector.dim == 2
    assert len(collector.kernel_positions) == 1
    assert collector.peiffer_group == AbelianGroup(3)


def test_identity_collects_to_zero(collector):
    M = collector.module
    zero = collector.collect(M.word())
    assert zero.is_central()
    assert zero.peiffer_class() == (0, 0, 0)
    x = M.letter(0, FreeWord.generator(1, 0))
    assert collector.collect(x * x.inverse()) == zero


def test_collection_preserves_boundary(collector):
    M = collector.module
    rng = np.random.default_rng(3)
    for _ in range(15):
        w = random_word(M, rng)
        collected = collector.collect(w)
        assert collected.boundary() == M.boundary(w)
        assert np.array_equal(collected.abelian_image,
                              collector.abelian_image(w))


def test_peiffer_commutators_are_tensors(collector):
    M = collector.module
    a = FreeWord.generator(1, 0)
    x, y = M.letter(0), M.letter(0, a)
    commutator = collector.collect(peiffer_commutator(M, x, y))
    assert commutator.is_central()
    expected = collector.omega(tensor_vector(collector.abelian_image(x),
                                             collector.abelian_image(y)))
    assert commutator == expected


def test_products_add_abelian_images(collector):
    M = collector.module
    rng = np.random.default_rng(8)
    u = collector.collect(random_word(M, rng))
    v = collector.collect(random_word(M, rng))
    assert np.array_equal((u * v).abelian_image,
                          u.abelian_image + v.abelian_image)


def test_kernel_lift(collector):
    kappa = collector.kappa[:, 0]
    lifted = collector.kernel_lift(2 * kappa)
    assert lifted.in_kernel()
    assert lifted.kernel_coeffs in ((2,), (-2,))
    with pytest.raises(ValueError, match='ker d2'):
        collector.kernel_lift([1, 0])


def test_omega_length(collector):
    with pytest.raises(ValueError, match='Tensor of length'):
        collector.omega([1, 0])


def test_omega_on_free_relators():
    single = PeifferCollector(PreCrossedModule(0, [FreeWord.identity(0)]))
    assert single.omega([1]) == single.omega([0])
    pair = PeifferCollector(PreCrossedModule(0, [FreeWord.identity(0)] * 2))
    zero = pair.omega([0, 0, 0, 0])
    ab, ba = pair.omega([0, 1, 0, 0]), pair.omega([0, 0, 1, 0])
    assert ab != zero
    assert ab * ba == zero


def test_certified_range():
    with pytest.raises(PeifferCollectionError):
        PeifferCollector(cyclic_module(9))
    relators = [FreeWord.identity(0)] * 4
    with pytest.raises(PeifferCollectionError):
        PeifferCollector(PreCrossedModule(0, relators))
