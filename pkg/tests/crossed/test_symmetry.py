import pytest
from pdcomplex.core.groupring import GroupHom
from pdcomplex.crossed.presentation import presentation
from pdcomplex.crossed.symmetry import (presentation_symmetries, rotations,
                                        substitute)
from pdcomplex.crossed.words import FreeWord, PreCrossedModule


def word(rank, powers):
    return FreeWord.from_powers(rank, powers)


@pytest.fixture
def z3_module():
    """<a, b | ab, a^3, b^3>, where b is a^-1."""
    return PreCrossedModule(2, [word(2, [(0, 1), (1, 1)]), word(2, [(0, 3)]),
                                word(2, [(1, 3)])], name='Z3')


def inversion(group):
    return GroupHom(group, group, [group.inv(g) for g in group.elements])


def test_rotations():
    ab, ba = word(2, [(0, 1), (1, 1)]), word(2, [(1, 1), (0, 1)])
    assert list(rotations(ba, ab)) == [word(2, [(0, 1)])]
    assert list(rotations(ab, ab)) == [FreeWord.identity(2)]
    cube = word(2, [(0, 3)])
    assert len(list(rotations(cube, cube))) == 3
    assert not list(rotations(ab, cube))
    assert substitute(ab, (1, 0)) == ba


def test_identity_comes_first(z3_module):
    pres = presentation(z3_module)
    symmetries = list(presentation_symmetries(
        z3_module, pres, GroupHom.identity(pres.group)))
    assert symmetries[0].is_identity()
    # a^3 and b^3 can each be rotated onto themselves in three ways
    assert len(symmetries) == 9
    assert {s.generators for s in symmetries} == {(0, 1)}


def test_swap_lies_over_inversion(z3_module):
    pres = presentation(z3_module)
    G = pres.group
    symmetries = list(presentation_symmetries(z3_module, pres, inversion(G)))
    assert symmetries
    swap = symmetries[0]
    assert swap.generators == (1, 0)
    assert swap.relators == (0, 2, 1)
    # ba = a^-1 (ab) a
    assert swap.conjugators[0] == G.inv(pres.generator_images[0])
    assert swap.conjugators[1:] == (0, 0)
    assert not swap.is_identity()
    assert swap.cells(2, 3) == ((0, 2, 1), swap.conjugators)
    assert swap.cells(3, 2) == ((0, 1), (0, 0))


def test_symmetries_follow_generator_images():
    M = PreCrossedModule(2, [word(2, [(0, 2)]), word(2, [(1, 3)]),
                             word(2, [(0, 1), (1, -1), (0, -1), (1, 1)])])
    pres = presentation(M)
    symmetries = list(presentation_symmetries(
        M, pres, GroupHom.identity(pres.group)))
    assert len(symmetries) == 6
    assert all(s.generators == (0, 1) for s in symmetries)
    # no generator maps to the inverse of b
    assert not list(presentation_symmetries(M, pres, inversion(pres.group)))
