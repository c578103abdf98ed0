import pytest
from pdcomplex.core.groupring import GroupRingElement, trivial_group
from pdcomplex.core.linalg import AbelianGroup, LambdaMatrix
from pdcomplex.crossed.ptcomplex import (b_from_boundary, build_pt,
                                         check_pattern, pt_homology)
from pdcomplex.crossed.words import FreeWord, PreCrossedModule


def spheres(count: int) -> PreCrossedModule:
    """Wedge of count two-spheres: no generators, trivial relators."""
    return PreCrossedModule(0, [FreeWord.identity(0)] * count,
                            name=f'S2^{count}')


def projective_plane() -> PreCrossedModule:
    return PreCrossedModule(1, [FreeWord.from_powers(1, [(0, 2)])], ['a'],
                            ['r'], name='RP2')


def test_sphere_two_type():
    P = build_pt(spheres(1))
    assert P.pi2 == AbelianGroup(1)
    assert P.pattern.passed
    groups = pt_homology(P).groups
    assert groups[2] == AbelianGroup(1)
    assert groups[3].is_trivial()
    assert groups[4] == AbelianGroup(1)


def test_moore_space_two_type():
    P = build_pt(spheres(1), [[2]])
    assert P.pi2 == AbelianGroup(0, [2])
    groups = pt_homology(P).groups
    assert groups[2] == AbelianGroup(0, [2])
    assert groups[3].is_trivial()
    assert groups[4] == AbelianGroup(0, [4])


def test_b_given_as_lambda_vector():
    group = trivial_group()
    b = [GroupRingElement(group, {0: 3})]
    P = build_pt(spheres(1), [b])
    assert P.pi2 == AbelianGroup(0, [3])
    assert pt_homology(P).groups[4] == AbelianGroup(0, [3])


def test_wedge_of_spheres():
    P = build_pt(spheres(2))
    assert P.pi2 == AbelianGroup(2)
    assert pt_homology(P).groups[4] == AbelianGroup(3)
    assert check_pattern(P).passed


def test_projective_plane_two_type():
    P = build_pt(projective_plane())
    assert P.group.order == 2
    assert P.pi2 == AbelianGroup(1)
    assert [check.name for check in P.pattern.checks] == \
        ['h1', 'h2', 'h3', 'h4']


def test_b_outside_kernel():
    with pytest.raises(ValueError, match='not in ker d2'):
        build_pt(projective_plane(), [[1, 0]])
    with pytest.raises(ValueError, match='coordinates'):
        build_pt(projective_plane(), [[1]])


def test_b_from_boundary():
    group = trivial_group()
    d3 = LambdaMatrix.from_int(group, [[2, 0], [0, 1]])
    B = b_from_boundary(d3)
    assert len(B) == 2
    assert B[0] == [GroupRingElement(group, {0: 2}),
                    GroupRingElement.zero(group)]
