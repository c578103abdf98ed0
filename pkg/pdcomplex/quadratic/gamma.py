"""
Whitehead's quadratic functor Γ on finitely generated abelian groups.

A group A = ⊕ ℤ/d_i is fixed by its cyclic decomposition (d_i = 0 for a
free summand). Γ(A) has the basis γ(e_i), then [e_i, e_j] for i < j in
lexicographic order, and A ⊗ A the basis e_i ⊗ e_j at index i·r + j.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Callable, Dict, List, Sequence, Tuple
import numpy as np
from pdcomplex.core.linalg import (AbelianGroup, as_int_matrix, as_int_vector,
                                   hstack, matmul, zeros)


class FGAbelian:
    """⊕ ℤ/d_i; an order of 1 marks a generator that is zero."""
    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(d) for d in orders)
        if any(d < 0 for d in orders):
            raise ValueError(f'Cyclic orders must be nonnegative,'
                             f' got {orders}')
        self.orders = orders

    @classmethod
    def from_group(cls, group: AbelianGroup) -> 'FGAbelian':
        """Torsion summands first, then the free ones."""
        return cls(list(group.torsion) + [0] * group.free_rank)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def is_finite(self) -> bool:
        return all(self.orders)

    def cardinality(self) -> int:
        if not self.is_finite():
            return 0
        return int(np.prod(self.orders, dtype=object))

    def reduce(self, vec) -> np.ndarray:
        vec = as_int_vector(vec)
        for i, d in enumerate(self.orders):
            if d:
                vec[i] %= d
        return vec

    def is_zero(self, vec) -> bool:
        return not np.count_nonzero(self.reduce(vec))

    def relation_matrix(self) -> np.ndarray:
        torsion = [i for i, d in enumerate(self.orders) if d]
        rel = zeros(self.rank, len(torsion))
        for col, i in enumerate(torsion):
            rel[i, col] = self.orders[i]
        return rel

    def to_abelian_group(self) -> AbelianGroup:
        return AbelianGroup.from_relations(self.relation_matrix())

    def elements(self) -> List[Tuple[int, ...]]:
        if not self.is_finite():
            raise ValueError('Cannot enumerate an infinite group')
        return list(product(*(range(d) for d in self.orders)))

    def check_homomorphism(self, target: 'FGAbelian', matrix) -> np.ndarray:
        """Validates that e_i ↦ matrix[:, i] respects the orders."""
        matrix = as_int_matrix(matrix, target.rank, self.rank)
        if matrix.shape != (target.rank, self.rank):
            raise ValueError(f'Homomorphism matrix has shape {matrix.shape},'
                             f' expected {(target.rank, self.rank)}')
        for i, d in enumerate(self.orders):
            if d and not target.is_zero(matrix[:, i] * d):
                raise ValueError(f'Generator {i} of order {d} is not sent to'
                                 ' an element of dividing order')
        return matrix

    def __eq__(self, other) -> bool:
        return isinstance(other, FGAbelian) and self.orders == other.orders

    def __hash__(self) -> int:
        return hash(self.orders)

    def __repr__(self) -> str:
        return 'FGAbelian(' + ', '.join('Z' if d == 0 else f'Z/{d}'
                                        for d in self.orders) + ')'


def tensor_square(A: FGAbelian) -> FGAbelian:
    return FGAbelian([gcd(a, b) for a in A.orders for b in A.orders])


def _gamma_order(d: int) -> int:
    if d == 0:
        return 0
    return 2 * d if d % 2 == 0 else d


class GammaGroup:
    def __init__(self, source: FGAbelian):
        self.source = source
        r = source.rank
        self.pairs: List[Tuple[int, int]] = list(combinations(range(r), 2))
        self._pair_index = {pair: r + k for k, pair in enumerate(self.pairs)}
        self.orders = tuple([_gamma_order(d) for d in source.orders]
                            + [gcd(source.orders[i], source.orders[j])
                               for i, j in self.pairs])
        self.group = FGAbelian(self.orders)

    @property
    def dim(self) -> int:
        return len(self.orders)

    def gamma_index(self, i: int) -> int:
        return i

    def bracket_index(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError('[e_i, e_i] = 2γ(e_i) is not a basis element')
        return self._pair_index[(min(i, j), max(i, j))]

    def reduce(self, vec) -> np.ndarray:
        return self.group.reduce(vec)

    def to_abelian_group(self) -> AbelianGroup:
        return self.group.to_abelian_group()

    def labels(self) -> List[str]:
        return [f'gamma(e{i})' for i in range(self.source.rank)]\
            + [f'[e{i},e{j}]' for i, j in self.pairs]

    def __repr__(self) -> str:
        return f'GammaGroup({self.source!r} -> {self.group!r})'


def gamma_group(A: FGAbelian) -> GammaGroup:
    return GammaGroup(A)


def gamma_eval(G: GammaGroup, a) -> np.ndarray:
    """γ(Σ n_i e_i) = Σ n_i² γ(e_i) + Σ_{i<j} n_i n_j [e_i, e_j]."""
    a = as_int_vector(a)
    if len(a) != G.source.rank:
        raise ValueError(f'Element has {len(a)} coordinates, expected'
                         f' {G.source.rank}')
    x = np.zeros(G.dim, dtype=object)
    for i, n in enumerate(a):
        x[i] = n * n
    for i, j in G.pairs:
        x[G.bracket_index(i, j)] = a[i] * a[j]
    return G.reduce(x)


def whitehead_P_matrix(G: GammaGroup) -> np.ndarray:
    r = G.source.rank
    mat = zeros(G.dim, r * r)
    for i in range(r):
        for j in range(r):
            if i == j:
                mat[i, i * r + i] = 2
            else:
                mat[G.bracket_index(i, j), i * r + j] = 1
    return mat


def whitehead_H_matrix(G: GammaGroup) -> np.ndarray:
    r = G.source.rank
    mat = zeros(r * r, G.dim)
    for i in range(r):
        mat[i * r + i, i] = 1
    for i, j in G.pairs:
        col = G.bracket_index(i, j)
        mat[i * r + j, col] = 1
        mat[j * r + i, col] = 1
    return mat


def whitehead_P(G: GammaGroup, t) -> np.ndarray:
    """e_i ⊗ e_j ↦ [e_i, e_j], with [e_i, e_i] = 2γ(e_i)."""
    return G.reduce(matmul(whitehead_P_matrix(G), as_int_vector(t)))


def whitehead_H(G: GammaGroup, x) -> np.ndarray:
    """γ(e_i) ↦ e_i ⊗ e_i and [e_i, e_j] ↦ e_i ⊗ e_j + e_j ⊗ e_i."""
    return tensor_square(G.source).reduce(
        matmul(whitehead_H_matrix(G), as_int_vector(x)))


def exterior_square(A: FGAbelian) -> AbelianGroup:
    """Λ²A = coker(H: Γ(A) → A ⊗ A)."""
    T = tensor_square(A)
    return AbelianGroup.from_relations(
        hstack([T.relation_matrix(), whitehead_H_matrix(GammaGroup(A))],
               T.rank))


def tensor_induced(f, A: FGAbelian, B: FGAbelian) -> np.ndarray:
    """f ⊗ f on the tensor coordinates."""
    f = A.check_homomorphism(B, f)
    return np.kron(f, f)


def exterior_induced(f, A: FGAbelian, B: FGAbelian) -> np.ndarray:
    """f ⊗ f, which preserves the image of H and so descends to Λ²."""
    return tensor_induced(f, A, B)


def gamma_induced(f, A: FGAbelian, B: FGAbelian) -> np.ndarray:
    """Matrix of Γ(f): Γ(A) → Γ(B) on the documented bases."""
    f = A.check_homomorphism(B, f)
    GA, GB = GammaGroup(A), GammaGroup(B)
    P = whitehead_P_matrix(GB)
    mat = zeros(GB.dim, GA.dim)
    for i in range(A.rank):
        mat[:, i] = gamma_eval(GB, f[:, i])
    for i, j in GA.pairs:
        mat[:, GA.bracket_index(i, j)] = GB.reduce(
            matmul(P, np.kron(f[:, i], f[:, j])))
    return mat


def quadratic_map_data(A: FGAbelian, B: FGAbelian,
                       func: Callable[[Tuple[int, ...]], Sequence[int]])\
        -> Tuple[np.ndarray, Dict[Tuple[int, int], np.ndarray]]:
    """Values f(e_i) and cross effects f(e_i + e_j) − f(e_i) − f(e_j)."""
    r = A.rank
    basis = [tuple(int(i == k) for k in range(r)) for i in range(r)]
    values = zeros(B.rank, r)
    for i in range(r):
        values[:, i] = B.reduce(func(basis[i]))
    cross = {}
    for i, j in combinations(range(r), 2):
        both = tuple(basis[i][k] + basis[j][k] for k in range(r))
        cross[(i, j)] = B.reduce(as_int_vector(func(both))
                                 - values[:, i] - values[:, j])
    return values, cross


def f_square(A: FGAbelian, B: FGAbelian, values,
             cross: Dict[Tuple[int, int], Sequence[int]]) -> np.ndarray:
    """
    The homomorphism f^□: Γ(A) → B with f^□γ = f, given by f(e_i) and the
    cross effects. Raises ValueError when the data is not well defined.
    """
    G = GammaGroup(A)
    values = as_int_matrix(values, B.rank, A.rank)
    mat = zeros(B.rank, G.dim)
    for i in range(A.rank):
        mat[:, i] = values[:, i]
    for i, j in G.pairs:
        mat[:, G.bracket_index(i, j)] = as_int_vector(cross[(i, j)])
    for col, d in enumerate(G.orders):
        if d and not B.is_zero(mat[:, col] * d):
            raise ValueError(f'Quadratic data is not well defined on basis'
                             f' element {G.labels()[col]}')
    return mat


def presentation_oracle(A: FGAbelian) -> AbelianGroup:
    """
    Γ(A) of a finite A from its universal presentation: one generator per
    element, γ(−a) = γ(a), and additivity of the cross effect in its first
    argument.
    """
    elements = A.elements()
    index = {a: k for k, a in enumerate(elements)}

    def add(*terms) -> Tuple[int, ...]:
        total = np.sum([as_int_vector(t) for t in terms], axis=0)
        return tuple(int(x) for x in A.reduce(total))

    relations = []

    def relation(coeffs: Dict[Tuple[int, ...], int]) -> None:
        col = np.zeros(len(elements), dtype=object)
        for a, c in coeffs.items():
            col[index[a]] += c
        if np.count_nonzero(col):
            relations.append(col)

    for a in elements:
        neg = add(-as_int_vector(a))
        if neg != a:
            relation({a: 1, neg: -1})
    for a, a2, b in product(elements, repeat=3):
        coeffs: Dict[Tuple[int, ...], int] = {}
        for term, c in ((add(a, a2, b), 1), (add(a, a2), -1), (add(a, b), -1),
                        (add(a2, b), -1), (a, 1), (a2, 1), (b, 1)):
            coeffs[term] = coeffs.get(term, 0) + c
        relation(coeffs)
    matrix = np.column_stack(relations) if relations\
        else zeros(len(elements), 0)
    return AbelianGroup.from_relations(matrix)


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    determinant: int
    even: bool
    signature: int

    def to_dict(self):
        return {'rank': self.rank, 'determinant': self.determinant,
                'parity': 'even' if self.even else 'odd',
                'signature': self.signature}


def quadratic_form_invariants(form) -> FormInvariants:
    """
    Rank, determinant, parity and signature of a symmetric integer form,
    by exact symmetric elimination over the rationals.
    """
    form = as_int_matrix(form)
    n = form.shape[0]
    if form.shape != (n, n) or not np.array_equal(form, form.T):
        raise ValueError('Form must be a symmetric square matrix')
    M = [[Fraction(int(form[i, j])) for j in range(n)] for i in range(n)]
    pivots: List[Fraction] = []
    k = 0
    while k < n:
        pivot = next((i for i in range(k, n) if M[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                         if M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for m in range(n):
                M[i][m] += M[j][m]
            for m in range(n):
                M[m][i] += M[m][j]
            pivot = i
        M[k], M[pivot] = M[pivot], M[k]
        for row in M:
            row[k], row[pivot] = row[pivot], row[k]
        p = M[k][k]
        for i in range(k + 1, n):
            factor = M[i][k] / p
            if factor:
                for m in range(k, n):
                    M[i][m] -= factor * M[k][m]
        pivots.append(p)
        k += 1
    rank = len(pivots)
    det = 0
    if rank == n:
        det = Fraction(1)
        for p in pivots:
            det *= p
    return FormInvariants(rank, int(det),
                          all(int(form[i, i]) % 2 == 0 for i in range(n)),
                          sum(1 if p > 0 else -1 for p in pivots))
