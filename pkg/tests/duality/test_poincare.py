import os
import pytest
from pdcomplex.cli.commands import default_lower_map
from pdcomplex.core.chain import ChainMap, ReducedComplex, identity_map
from pdcomplex.core.groupring import (GroupHom, GroupRingElement,
                                      OrientationChar, norm_element)
from pdcomplex.core.linalg import LambdaMatrix
from pdcomplex.duality.poincare import (PDChainComplex, WeaklyStandardData,
                                        cap_chain_map, check_weakly_standard,
                                        construct_degree_one, degree_of_map,
                                        dual_complex,
                                        fundamental_class_candidates,
                                        poincare_duality_table, verify_pd)
from pdcomplex.io.loader import load_document, pd_complex
from pdcomplex.utils import get_full_path


SMALL_LENS = sorted(
    name for name in os.listdir(get_full_path('corpus'))
    if name.startswith('lens_') and int(name.split('_')[1]) <= 7)


def load(name: str) -> PDChainComplex:
    return pd_complex(load_document(get_full_path('corpus', name)))


@pytest.mark.parametrize('name', [
    'lens_2_1.json', 'lens_5_2.json', 'lens_7_3.json', 's3.json', 's4.json',
    'cp2.json', 'cp2_cp2bar.json', 's2xs2.json', 'rp4.json'
])
def test_corpus_is_pd(name):
    report = verify_pd(load(name))
    assert report.passed, report.first_failure()
    assert [c.name for c in report.checks] == [
        'h1', 'fundamental_cycle', 'cap_chain_map', 'cone']


def test_twice_the_fundamental_class_fails():
    X = load('lens_5_2.json')
    doubled = PDChainComplex(X.complex, X.omega, [2], X.diagonal)
    report = verify_pd(doubled)
    assert not report.passed
    assert report.first_failure().name == 'fundamental_cycle'
    assert '2 times' in report.first_failure().detail


def test_missing_diagonal_fails_cap():
    X = load('s3.json')
    bare = PDChainComplex(X.complex, X.omega, X.fundamental_cycle)
    report = verify_pd(bare)
    assert report.first_failure().name == 'cap_chain_map'
    with pytest.raises(ValueError, match='diagonal missing'):
        cap_chain_map(bare)


def test_cycle_length_checked():
    X = load('s3.json')
    with pytest.raises(ValueError, match='coordinates'):
        PDChainComplex(X.complex, X.omega, [1, 0], X.diagonal)


def test_dual_complex_is_regraded():
    X = load('cp2_cp2bar.json')
    dual = dual_complex(X)
    assert list(dual.ranks) == list(reversed(X.complex.ranks))
    assert dual.signs == {1: 1, 2: -1, 3: 1, 4: -1}


def test_duality_table_matches():
    X = load('lens_7_3.json')
    rows = poincare_duality_table(X)
    assert [row['r'] for row in rows] == [0, 1, 2, 3]
    assert all(row['match'] for row in rows)
    assert rows[0]['cohomology'].is_infinite_cyclic()


def test_fundamental_class_candidates():
    X = load('rp4.json')
    candidates = fundamental_class_candidates(X.complex, X.omega)
    assert len(candidates) == 2
    assert list(candidates[0]) == [-int(z) for z in candidates[1]]


def test_weakly_standard_lens():
    doc = load_document(get_full_path('corpus', 'lens_5_2.json'))
    X = pd_complex(doc)
    report = check_weakly_standard(X, doc.weakly_standard)
    assert report.passed
    assert [c.name for c in report.checks] == [
        'subcomplex', 'top_cell', 'generates_ideal', 'splitting']


def test_weakly_standard_failures():
    X = load('lens_5_2.json')
    wrong_ranks = WeaklyStandardData(0, [1, 1, 1, 1])
    assert check_weakly_standard(X, wrong_ranks).first_failure().name\
        == 'subcomplex'
    with pytest.raises(ValueError, match='outside'):
        check_weakly_standard(X, WeaklyStandardData(1, [1, 1, 1, 0]))


@pytest.mark.parametrize('name', SMALL_LENS)
def test_degree_one_onto_sphere(name):
    doc_Y = load_document(get_full_path('corpus', name))
    Y, X = pd_complex(doc_Y), load('s3.json')
    phi = GroupHom.trivial(Y.group, X.group)
    result = construct_degree_one(Y, X, phi, default_lower_map(Y, X, phi),
                                  doc_Y.weakly_standard)
    assert result.succeeded
    assert result.failed_step is None
    assert degree_of_map(result.chain_map, Y, X) == 1
    # C_2 S3 = 0, so the top cell needs no correction
    assert not result.witnesses


@pytest.mark.parametrize('name', SMALL_LENS)
def test_degree_one_corrects_shifted_lower_map(name):
    Y = load(name)
    G = Y.group
    components = identity_map(Y.complex).components
    components[2] = LambdaMatrix(G, [[GroupRingElement.basis(G, 1)]])
    lower = ChainMap(Y.complex, Y.complex, GroupHom.identity(G), components)
    result = construct_degree_one(Y, Y, GroupHom.identity(G), lower)
    assert result.succeeded
    assert degree_of_map(result.chain_map, Y, Y) == 1
    assert set(result.witnesses) == {'x', 'y', 'alpha'}
    assert not result.witnesses['alpha'].is_zero()


def lens_with_cancelling_pair(X: PDChainComplex) -> PDChainComplex:
    """L(5,1) with an extra 3-cell c bounding an extra 2-cell."""
    G = X.group
    one, zero = GroupRingElement.one(G), GroupRingElement.zero(G)
    t = GroupRingElement.basis(G, 1)
    C = ReducedComplex(G, [1, 1, 2, 2], {
        1: LambdaMatrix(G, [[t - one]]),
        2: LambdaMatrix(G, [[norm_element(G), zero]]),
        3: LambdaMatrix(G, [[t - one, t - one], [zero, one]])},
        name='L(5,1)+pair')
    return PDChainComplex(C, OrientationChar.trivial(G), [1, 0])


def test_degree_one_with_two_top_cells():
    X = load('lens_5_1.json')
    Y = lens_with_cancelling_pair(X)
    G = X.group
    t = GroupRingElement.basis(G, 1)
    phi = GroupHom.identity(G)
    components = {k: LambdaMatrix.identity(G, 1) for k in (0, 1)}
    components[2] = LambdaMatrix(G, [[t, t - t * t]])
    lower = ChainMap(Y.complex, X.complex, phi, components)
    result = construct_degree_one(Y, X, phi, lower)
    assert result.succeeded, result.failed_step
    assert result.witnesses
    assert degree_of_map(result.chain_map, Y, X) == 1


def test_identity_has_degree_one():
    Y = load('lens_7_3.json')
    phi = GroupHom.identity(Y.group)
    result = construct_degree_one(Y, Y, phi, default_lower_map(Y, Y, phi))
    assert result.succeeded
    assert not result.witnesses


def test_degree_one_between_lens_spaces_fails():
    Y, X = load('lens_5_1.json'), load('lens_5_2.json')
    phi = GroupHom.identity(Y.group)
    result = construct_degree_one(Y, X, phi, default_lower_map(Y, X, phi))
    assert not result.succeeded
    assert result.failed_step == 'decompose'


def test_degree_one_needs_surjection():
    Y, X = load('s3.json'), load('lens_3_1.json')
    phi = GroupHom.trivial(Y.group, X.group)
    result = construct_degree_one(Y, X, phi, default_lower_map(Y, X, phi))
    assert result.failed_step == 'surjective'


def test_degree_one_dimension_mismatch():
    Y, X = load('s4.json'), load('s3.json')
    phi = GroupHom.identity(X.group)
    with pytest.raises(ValueError, match='formal dimensions'):
        construct_degree_one(Y, X, phi, default_lower_map(Y, X, phi))
