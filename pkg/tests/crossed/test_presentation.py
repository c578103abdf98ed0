import pytest
import numpy as np
from pdcomplex.core.chain import validate_reduced
from pdcomplex.core.errors import EnumerationBoundError
from pdcomplex.core.groupring import GroupRingElement, cyclic_group
from pdcomplex.core.linalg import AbelianGroup
from pdcomplex.crossed.presentation import (Presentation, fox_boundary,
                                            presentation,
                                            presentation_complex)
from pdcomplex.crossed.words import (FreeWord, PreCrossedModule, Rho2Word,
                                     peiffer_commutator)


def word(rank, powers):
    return FreeWord.from_powers(rank, powers)


@pytest.fixture
def s3_presentation():
    relators = [word(2, [(0, 3)]), word(2, [(1, 2)]),
                word(2, [(0, 1), (1, 1), (0, 1), (1, 1)])]
    return Presentation(2, relators, name='S3')


def test_free_word_reduction():
    a = FreeWord.generator(2, 0)
    b = FreeWord.generator(2, 1)
    assert (a * b * b.inverse() * a.inverse()).is_identity()
    assert len(word(2, [(0, 3), (0, -1)])) == 2
    assert (a * b) ** -1 == b.inverse() * a.inverse()
    assert b.conjugate(a) == a.inverse() * b * a
    assert (a * b.inverse()).format(['s', 't']) == 's t^-1'
    assert FreeWord.identity(2).format() == '1'
    with pytest.raises(ValueError, match='outside alphabet'):
        FreeWord(1, [(1, 1)])
    with pytest.raises(ValueError, match='alphabets'):
        a * FreeWord.generator(3, 0)


def test_rho2_words():
    M = PreCrossedModule(1, [word(1, [(0, 2)])], ['a'], ['r'])
    a = FreeWord.generator(1, 0)
    x = M.letter(0)
    y = M.letter(0, a)
    assert (x * x.inverse()).is_identity()
    assert M.boundary(y) == word(1, [(0, 2)])
    assert M.boundary(x * y) == word(1, [(0, 4)])
    assert y.act(a) == x
    assert x.act_left(a) == y
    assert y.format(['a'], ['r']) == '+(a).r'
    # the Peiffer commutator always has trivial boundary
    assert M.boundary(peiffer_commutator(M, x * y, y.inverse())).is_identity()
    with pytest.raises(ValueError, match='Relator index'):
        Rho2Word(1, 1, [(1, FreeWord.identity(1), 1)])


def test_cyclic_presentation():
    pres = Presentation(1, [word(1, [(0, 5)])])
    assert pres.group == cyclic_group(5)
    assert pres.generator_images == [1]
    assert pres.evaluate(word(1, [(0, 7)])) == 2
    assert pres.evaluate(word(1, [(0, -1)])) == 4


def test_symmetric_group_presentation(s3_presentation):
    group = s3_presentation.group
    assert group.order == 6
    assert not group.is_abelian()
    for relator in s3_presentation.relators:
        assert s3_presentation.evaluate(relator) == 0


def test_quaternion_presentation():
    relators = [word(2, [(0, 4)]), word(2, [(0, 2), (1, -2)]),
                word(2, [(1, 1), (0, 1), (1, -1), (0, 1)])]
    pres = Presentation(2, relators)
    assert pres.group.order == 8
    assert not pres.group.is_abelian()


def test_trivial_presentation():
    pres = Presentation(0, [FreeWord.identity(0)])
    assert pres.group.order == 1
    assert pres.schreier_generators == []


def test_enumeration_bound():
    with pytest.raises(EnumerationBoundError):
        Presentation(2, [word(2, [(0, 2)])], max_cosets=50)


def test_schreier_rewriting(s3_presentation):
    pres = s3_presentation
    # rank of N is 1 + |pi|(n_gens - 1)
    assert len(pres.schreier_generators) == 1 + 6 * (2 - 1)
    for relator in pres.relators:
        rewritten = pres.rewrite(relator)
        product = FreeWord.identity(2)
        for index, exp in rewritten:
            product = product * pres.schreier_element(index) ** exp
        assert product == relator
    with pytest.raises(ValueError, match='relation subgroup'):
        pres.rewrite(FreeWord.generator(2, 0))


def test_fox_fundamental_formula(s3_presentation):
    pres = s3_presentation
    group = pres.group
    one = GroupRingElement.one(group)
    rng = np.random.default_rng(5)
    for _ in range(20):
        letters = [(int(g), int(e)) for g, e in
                   zip(rng.integers(0, 2, 8), rng.choice([-1, 1], 8))]
        w = FreeWord(2, letters)
        lhs = GroupRingElement.basis(group, pres.evaluate(w)) - one
        rhs = GroupRingElement.zero(group)
        for gen in range(2):
            generator = GroupRingElement.basis(group,
                                               pres.generator_images[gen])
            rhs = rhs + pres.fox_derivative(w, gen) * (generator - one)
        assert lhs == rhs


def test_presentation_complex():
    M = PreCrossedModule(1, [word(1, [(0, 5)])], name='Z5')
    C = presentation_complex(M)
    assert C.ranks == (1, 1, 1)
    assert validate_reduced(C).passed
    assert C.homology(1).is_trivial()
    assert C.homology(2) == AbelianGroup(4)
    rank2, rank1, d2, d1 = fox_boundary(M, presentation(M))
    assert (rank2, rank1) == (1, 1)
    assert d2[0, 0] == GroupRingElement(C.group, {g: 1 for g in range(5)})
