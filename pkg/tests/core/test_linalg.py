import pytest
import numpy as np
from itertools import permutations
from pdcomplex.core.groupring import (FiniteGroup, GroupRingElement,
                                      OrientationChar, cyclic_group,
                                      norm_element)
from pdcomplex.core.linalg import (AbelianGroup, LambdaMatrix, Lattice,
                                   apply_lambda, as_int_matrix, compose_lambda,
                                   generates_ideal, homology_at,
                                   integer_kernel, integer_solve,
                                   lambda_to_int, lambda_vector_to_int, matmul,
                                   smith_decomposition, smith_normal_form,
                                   solve_lambda, subquotient, twisted_matrix)


SEED = 2024


def random_matrix(rng, rows, cols, low=-4, high=5):
    return as_int_matrix(rng.integers(low, high, (rows, cols)))


def random_lambda(rng, group, rows, cols) -> LambdaMatrix:
    return LambdaMatrix(group, [
        [GroupRingElement.from_vector(group, rng.integers(-2, 3, group.order))
         for _ in range(cols)] for _ in range(rows)], rows, cols)


@pytest.fixture
def s3():
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    return FiniteGroup([[index[tuple(p[q[i]] for i in range(3))]
                         for q in perms] for p in perms], name='S3')


def test_smith_normal_form_random():
    rng = np.random.default_rng(SEED)
    for _ in range(100):
        rows, cols = rng.integers(1, 6, 2)
        A = random_matrix(rng, rows, cols)
        snf = smith_decomposition(A)
        U, D, V = smith_normal_form(A)
        assert np.array_equal(matmul(matmul(U, A), V), D)
        assert np.array_equal(matmul(snf.U, snf.U_inv),
                              np.eye(rows, dtype=int))
        assert np.array_equal(matmul(snf.V, snf.V_inv),
                              np.eye(cols, dtype=int))
        off_diagonal = D.copy()
        for i in range(min(rows, cols)):
            off_diagonal[i, i] = 0
        assert np.count_nonzero(off_diagonal) == 0
        diag = snf.diagonal
        assert all(d > 0 for d in diag)
        assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
        assert snf.rank == np.linalg.matrix_rank(A.astype(float))


def test_smith_normal_form_known():
    _, D, _ = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [D[i, i] for i in range(3)] == [2, 6, 12]


def test_big_integers_stay_exact():
    A = as_int_matrix([[2 ** 70, 3], [5, 2 ** 65 + 1]])
    U, D, V = smith_normal_form(A)
    assert np.array_equal(matmul(matmul(U, A), V), D)


def test_integer_solve():
    A = [[2, 0], [0, 3]]
    assert list(integer_solve(A, [4, 9])) == [2, 3]
    assert integer_solve(A, [1, 0]) is None
    assert integer_solve([[1, 1]], [5]) is not None
    K = integer_kernel([[1, 1, 0], [0, 0, 0]])
    assert K.shape == (3, 2)
    assert np.count_nonzero(matmul(as_int_matrix([[1, 1, 0]]), K)) == 0


def test_abelian_group_from_relations():
    G = AbelianGroup.from_relations([[2, 0], [0, 3]])
    assert G == AbelianGroup(0, [6])
    assert G.order() == 6
    H = AbelianGroup.from_relations([[2, 0, 0], [0, 4, 0], [0, 0, 0]])
    assert H == AbelianGroup(1, [2, 4])
    assert H.order() == 0
    assert H.two_rank() == 2
    assert repr(H) == 'Z/2 + Z/4 + Z'
    assert repr(AbelianGroup(0)) == '0'
    assert H.to_dict() == {'free_rank': 1, 'torsion': [2, 4]}


def test_abelian_group_rejects_bad_torsion():
    with pytest.raises(ValueError, match='divisibility'):
        AbelianGroup(0, [4, 6])
    with pytest.raises(ValueError, match='at least 2'):
        AbelianGroup(0, [1])


def test_homology_at_with_coordinates():
    # Z --2--> Z --0--> 0
    H = homology_at([[2]], np.zeros((0, 1), dtype=object))
    assert H == AbelianGroup(0, [2])
    assert H.coordinates([1]) == (1,)
    assert H.coordinates([4]) == (0,)
    with pytest.raises(ValueError, match='composable'):
        homology_at([[1], [1]], [[1]])
    with pytest.raises(ValueError, match='nonzero'):
        homology_at([[1]], [[1]])


def test_lattice_and_subquotient():
    L = Lattice([[2, 0], [0, 2]])
    M = Lattice([[2, 4], [2, 0]])
    assert L.contains([4, 2])
    assert not L.contains([1, 0])
    assert M.contains_lattice(Lattice([[4], [4]]))
    assert L != M
    Q = subquotient(L, [[4], [0]])
    assert Q == AbelianGroup(1, [2])


def test_lambda_to_int_is_functorial(s3):
    rng = np.random.default_rng(SEED)
    for _ in range(5):
        A = random_lambda(rng, s3, 2, 3)
        B = random_lambda(rng, s3, 3, 2)
        assert np.array_equal(lambda_to_int(compose_lambda(A, B)),
                              matmul(lambda_to_int(A), lambda_to_int(B)))


def test_apply_matches_integer_matrix(s3):
    rng = np.random.default_rng(SEED + 1)
    A = random_lambda(rng, s3, 2, 2)
    v = [GroupRingElement.from_vector(s3, rng.integers(-2, 3, 6))
         for _ in range(2)]
    image = apply_lambda(A, v)
    expected = matmul(lambda_to_int(A), lambda_vector_to_int(v, s3))
    assert np.array_equal(lambda_vector_to_int(image, s3), expected)


def test_solve_lambda(s3):
    rng = np.random.default_rng(SEED + 2)
    A = random_lambda(rng, s3, 2, 3)
    x = [GroupRingElement.from_vector(s3, rng.integers(-2, 3, 6))
         for _ in range(3)]
    rhs = apply_lambda(A, x)
    solution = solve_lambda(A, rhs)
    assert apply_lambda(A, solution) == rhs
    with pytest.raises(ValueError, match='side'):
        solve_lambda(A, rhs, side='middle')


def test_solve_lambda_without_solution():
    z3 = cyclic_group(3)
    N = LambdaMatrix(z3, [[norm_element(z3)]])
    assert solve_lambda(N, [GroupRingElement.one(z3)]) is None


def test_twisted_matrix():
    z2 = cyclic_group(2)
    omega = OrientationChar(z2, [0, 1])
    d = LambdaMatrix(z2, [[GroupRingElement(z2, {0: 1, 1: 1})]])
    assert twisted_matrix(d, omega)[0, 0] == 0
    assert twisted_matrix(d, OrientationChar.trivial(z2))[0, 0] == 2


def test_generates_ideal():
    z5 = cyclic_group(5)
    trivial = OrientationChar.trivial(z5)
    t_minus_1 = GroupRingElement(z5, {1: 1, 0: -1})
    t2_minus_1 = GroupRingElement(z5, {2: 1, 0: -1})
    assert generates_ideal([t_minus_1], trivial)
    assert generates_ideal([t2_minus_1], trivial)
    assert not generates_ideal([t_minus_1 * t_minus_1], trivial)
    assert not generates_ideal([norm_element(z5)], trivial)


def test_matrix_shape_errors():
    z2 = cyclic_group(2)
    with pytest.raises(ValueError, match='2x2'):
        LambdaMatrix(z2, [[GroupRingElement.one(z2)]], 2, 2)
    with pytest.raises(ValueError, match='compose'):
        compose_lambda(LambdaMatrix.zeros(z2, 1, 2),
                       LambdaMatrix.zeros(z2, 1, 1))
