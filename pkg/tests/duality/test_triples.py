import os
from itertools import combinations
from math import gcd
import numpy as np
import pytest
from pdcomplex.core.chain import ReducedComplex
from pdcomplex.core.errors import ResourceBoundError, UndecidedError
from pdcomplex.core.groupring import (GroupHom, GroupRingElement,
                                      OrientationChar, cyclic_group)
from pdcomplex.core.linalg import AbelianGroup, LambdaMatrix
from pdcomplex.crossed.presentation import fox_boundary, presentation
from pdcomplex.crossed.symmetry import presentation_symmetries
from pdcomplex.crossed.words import FreeWord, PreCrossedModule
from pdcomplex.duality.poincare import PDChainComplex
from pdcomplex.duality.triples import (bar_resolution, degree_one_exists,
                                       find_isometry, group_isomorphisms,
                                       pd4_obstruction_targets, triple_pd3,
                                       transport_complex, triple_pd4,
                                       triples_isomorphic)
from pdcomplex.io.loader import load_document, pd_complex
from pdcomplex.utils import get_full_path


CORPUS = get_full_path('corpus')


def lens_triples(p: int):
    triples = {}
    for file in sorted(os.listdir(CORPUS)):
        if file.startswith(f'lens_{p}_'):
            q = int(file[:-len('.json')].split('_')[2])
            doc = load_document(os.path.join(CORPUS, file))
            triples[q] = triple_pd3(doc.pd_complex())
    return triples


def pd4_triple(name: str):
    doc = load_document(os.path.join(CORPUS, name))
    return triple_pd4(pd_complex(doc), doc.precrossed)


@pytest.mark.slow
@pytest.mark.parametrize('p', range(2, 12))
def test_lens_triples_follow_square_law(p):
    triples = lens_triples(p)
    units = [m for m in range(1, p) if gcd(m, p) == 1] or [1]
    assert sorted(triples) == [q for q in range(1, max(p, 2))
                               if gcd(q, p) == 1]
    for q, q2 in combinations(sorted(triples), 2):
        expected = any((m * m * q - q2) % p == 0 for m in units)
        iso = triples_isomorphic(triples[q], triples[q2])
        assert (iso is not None) == expected, (p, q, q2)
        if iso is not None:
            m = iso.phi(1)
            assert (m * m * q - q2) % p == 0 or (m * m * q2 - q) % p == 0


def test_lens_triple_homology():
    T = lens_triples(5)[2]
    assert T.homology == AbelianGroup(0, [5])
    assert T.to_dict()['homology'] == {'free_rank': 0, 'torsion': [5]}
    assert T.meta['resolution'] == 'killing'


def test_bar_and_killing_resolutions_agree():
    X = load_document(os.path.join(CORPUS, 'lens_3_1.json')).pd_complex()
    killing = triple_pd3(X)
    bar = triple_pd3(X, 'bar')
    assert bar.homology == killing.homology == AbelianGroup(0, [3])
    assert triples_isomorphic(bar, killing) is not None


def test_bar_resolution():
    B = bar_resolution(cyclic_group(3), 3)
    assert list(B.ranks) == [1, 2, 4, 8]
    assert B.homology(1).is_trivial()
    assert B.homology(2).is_trivial()
    with pytest.raises(ValueError, match='degree'):
        bar_resolution(cyclic_group(2), 9)
    with pytest.raises(ResourceBoundError):
        bar_resolution(cyclic_group(5), 4, max_rank=100)


def test_triple_errors():
    doc = load_document(os.path.join(CORPUS, 's4.json'))
    with pytest.raises(ValueError, match='expected 3'):
        triple_pd3(doc.pd_complex())
    X = load_document(os.path.join(CORPUS, 's3.json')).pd_complex()
    with pytest.raises(ValueError, match='Unknown resolution'):
        triple_pd3(X, 'cellular')


def test_group_isomorphisms_of_cyclic_group():
    Z5 = cyclic_group(5)
    isos = list(group_isomorphisms(Z5, Z5))
    assert [phi(1) for phi in isos] == [1, 2, 3, 4]
    assert not list(group_isomorphisms(Z5, cyclic_group(6)))


@pytest.mark.parametrize('name, form', [
    ('cp2.json', [[1]]),
    ('cp2_cp2bar.json', [[1, 0], [0, -1]]),
    ('s2xs2.json', [[0, 1], [1, 0]])
])
def test_simply_connected_forms(name, form):
    T = pd4_triple(name)
    assert T.form is not None
    assert find_isometry(T.form, form) is not None\
        or find_isometry(T.form, -np.array(form, dtype=object)) is not None
    assert T.to_dict()['pi2']['free_rank'] == len(form)


def test_forms_distinguish_four_manifolds():
    cp2_cp2bar = pd4_triple('cp2_cp2bar.json')
    s2xs2 = pd4_triple('s2xs2.json')
    assert triples_isomorphic(cp2_cp2bar, s2xs2) is None
    assert triples_isomorphic(s2xs2, s2xs2) is not None


def test_isometry_search():
    hyperbolic = np.array([[0, 1], [1, 0]], dtype=object)
    P = find_isometry(hyperbolic, hyperbolic)
    assert np.array_equal(P.T.dot(hyperbolic).dot(P), hyperbolic)
    assert find_isometry([[1, 0], [0, -1]], hyperbolic) is None
    assert find_isometry([[1]], [[1, 0], [0, 1]]) is None


def test_degree_one_criterion():
    triples = lens_triples(5)
    identity = GroupHom.identity(cyclic_group(5))
    assert degree_one_exists(triples[1], triples[1], identity)
    assert not degree_one_exists(triples[1], triples[2], identity)


def test_obstruction_targets():
    doc = load_document(get_full_path('tests/data', 'z3_obstruction.json'))
    targets = pd4_obstruction_targets(pd_complex(doc))
    assert targets.h2 == AbelianGroup(3)
    assert targets.gamma_coinvariants == AbelianGroup(2)
    assert targets.tensor_coinvariants == AbelianGroup(3)
    assert targets.exterior_coinvariants == AbelianGroup(1)
    assert targets.ker_h.is_trivial()
    assert targets.odd_order
    assert targets.to_dict()['ker_h'] == {'free_rank': 0, 'torsion': []}


def test_obstruction_targets_of_sphere():
    X = pd_complex(load_document(os.path.join(CORPUS, 's4.json')))
    targets = pd4_obstruction_targets(X)
    assert targets.h2.is_trivial()
    assert targets.realization_certified
    with pytest.raises(ValueError, match='expected 4'):
        pd4_obstruction_targets(
            load_document(os.path.join(CORPUS, 's3.json')).pd_complex())


def symmetric_rp4():
    """RP4-type complex on <a, b | ab, a^2, b^2> with pi2 = 0."""
    G = cyclic_group(2)
    one, zero = GroupRingElement.one(G), GroupRingElement.zero(G)
    t = GroupRingElement.basis(G, 1)
    C = ReducedComplex(G, [1, 2, 3, 2, 1], {
        1: LambdaMatrix(G, [[t - one, t - one]]),
        2: LambdaMatrix(G, [[one, one + t, zero], [t, zero, one + t]]),
        3: LambdaMatrix(G, [[-(one + t), zero], [one, zero],
                            [one, t - one]]),
        4: LambdaMatrix(G, [[zero], [one + t]])}, name='RP4(a,b)')
    M = PreCrossedModule(2, [FreeWord.from_powers(2, [(0, 1), (1, 1)]),
                             FreeWord.from_powers(2, [(0, 2)]),
                             FreeWord.from_powers(2, [(1, 2)])])
    return PDChainComplex(C, OrientationChar(G, [0, 1]), [1]), M


def test_triples_compared_along_presentation_symmetries():
    X, M = symmetric_rp4()
    assert X.complex.d_squared_failure() is None
    identity = GroupHom.identity(X.group)
    swap = next(s for s in presentation_symmetries(M, presentation(M),
                                                   identity)
                if s.generators == (1, 0))
    moved = transport_complex(X, swap)
    assert moved.complex.d_squared_failure() is None
    assert moved.complex.boundary(2) == X.complex.boundary(2)
    assert moved.complex.boundary(3) != X.complex.boundary(3)
    assert moved.omega == X.omega
    T, T2 = triple_pd4(X, M), triple_pd4(moved, M)
    assert T.meta['complex'] is X
    iso = triples_isomorphic(T, T2)
    assert iso is not None
    assert iso.phi == identity
    assert triple_pd4(moved, M, model=T).t == T.t


def test_transport_over_inversion_fixes_fox_boundaries():
    M = PreCrossedModule(2, [FreeWord.from_powers(2, [(0, 1), (1, 1)]),
                             FreeWord.from_powers(2, [(0, 3)]),
                             FreeWord.from_powers(2, [(1, 3)])])
    pres = presentation(M)
    G = pres.group
    _, _, d2, d1 = fox_boundary(M, pres)
    X = PDChainComplex(ReducedComplex(G, [1, 2, 3], {1: d1, 2: d2}),
                       OrientationChar.trivial(G), [0, 0, 0])
    inversion = GroupHom(G, G, [G.inv(g) for g in G.elements])
    swap = next(presentation_symmetries(M, pres, inversion))
    moved = transport_complex(X, swap)
    assert moved.complex.boundary(1) == d1
    assert moved.complex.boundary(2) == d2


def test_two_types_need_a_common_presentation():
    X, M = symmetric_rp4()
    rp4 = pd4_triple('rp4.json')
    assert triples_isomorphic(rp4, rp4) is not None
    with pytest.raises(UndecidedError, match='equal presentations'):
        triples_isomorphic(rp4, triple_pd4(X, M))
