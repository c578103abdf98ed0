"""
Free Λ-chain complexes, chain maps over group homomorphisms, chain
homotopies, tensor products and the diagonal solver.

Tensor complexes over π × π′ order their basis in degree n by blocks
i = 0..n (C_i ⊗ D_{n-i}), and inside a block lexicographically by the pair
of source indices. The boundary is d(c⊗d) = dc⊗d + (−1)^|c| c⊗dd.
"""
from dataclasses import dataclass
from logging import getLogger
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from pdcomplex.core.errors import check_bound
from pdcomplex.core.groupring import (FiniteGroup, GroupHom, GroupRingElement,
                                      OrientationChar, aug, diagonal_hom,
                                      outer_product, product_hom,
                                      projection_hom, regular_rep, swap_hom,
                                      trivial_group)
from pdcomplex.core.linalg import (AbelianGroup, IntegerSolver, LambdaMatrix,
                                   Lattice, apply_lambda, compose_lambda,
                                   homology_at, int_to_lambda_vector,
                                   integer_solve, left_translate,
                                   lambda_to_int, lambda_vector_to_int,
                                   solve_lambda, twisted_matrix, vstack, zeros)
from pdcomplex.core.pipeline import Check, CheckPipeline, CheckReport


logger = getLogger(__name__)


class FreeComplex:
    """
    Bounded free Λ-complex in degrees 0..top. boundaries[k] is the
    rank(k−1) × rank(k) matrix of d_k; missing degrees are zero.
    """
    def __init__(self, group: FiniteGroup, ranks: Sequence[int],
                 boundaries: Dict[int, LambdaMatrix] = None, name: str = ''):
        self.group = group
        self.ranks = tuple(int(r) for r in ranks)
        if not self.ranks or any(r < 0 for r in self.ranks):
            raise ValueError(f'Invalid ranks {self.ranks}')
        self.name = name
        boundaries = boundaries or {}
        self._boundaries: Dict[int, LambdaMatrix] = {}
        for k in range(1, len(self.ranks)):
            expected = (self.ranks[k - 1], self.ranks[k])
            matrix = boundaries.get(k)
            if matrix is None:
                matrix = LambdaMatrix.zeros(group, *expected)
            if matrix.shape != expected:
                raise ValueError(f'Boundary d_{k} has shape {matrix.shape},'
                                 f' expected {expected}')
            if matrix.group != group:
                raise ValueError(f'Boundary d_{k} lives over another group')
            self._boundaries[k] = matrix
        extra = set(boundaries) - set(self._boundaries)
        if extra:
            raise ValueError(f'Boundaries given outside the complex: {extra}')
        self._int_cache: Dict[int, np.ndarray] = {}

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def rank(self, k: int) -> int:
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def boundary(self, k: int) -> LambdaMatrix:
        if k in self._boundaries:
            return self._boundaries[k]
        return LambdaMatrix.zeros(self.group, self.rank(k - 1), self.rank(k))

    def integer_boundary(self, k: int) -> np.ndarray:
        if k not in self._int_cache:
            self._int_cache[k] = lambda_to_int(self.boundary(k))
        return self._int_cache[k]

    def twisted_boundary(self, k: int, omega: OrientationChar) -> np.ndarray:
        return twisted_matrix(self.boundary(k), omega)

    def integer_complex(self) -> Dict[int, np.ndarray]:
        return {k: self.integer_boundary(k) for k in range(1, self.top + 1)}

    def twisted_matrices(self, omega: OrientationChar)\
            -> Dict[int, np.ndarray]:
        return {k: self.twisted_boundary(k, omega)
                for k in range(1, self.top + 1)}

    def d_squared_failure(self) -> Optional[int]:
        """Middle degree k of the first nonzero composite d_k ∘ d_{k+1}."""
        for k in range(1, self.top):
            if not (self.boundary(k) @ self.boundary(k + 1)).is_zero():
                return k
        return None

    def homology(self, k: int) -> AbelianGroup:
        """H_k of the underlying integer complex (the universal cover)."""
        return homology_at(self.integer_boundary(k + 1),
                           self.integer_boundary(k))

    def twisted_homology(self, k: int, omega: OrientationChar) -> AbelianGroup:
        """H_k(C, ℤ^ω) = H_k(ℤ^ω ⊗_Λ C)."""
        return homology_at(self.twisted_boundary(k + 1, omega),
                           self.twisted_boundary(k, omega))

    def truncate(self, top: int) -> 'FreeComplex':
        cls = ReducedComplex if self.rank(0) == 1 else FreeComplex
        return cls(self.group, self.ranks[:top + 1],
                   {k: self.boundary(k) for k in range(1, top + 1)},
                   self.name)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FreeComplex) and self.group == other.group\
            and self.ranks == other.ranks\
            and all(self.boundary(k) == other.boundary(k)
                    for k in range(1, len(self.ranks)))

    def __hash__(self) -> int:
        return hash(self.ranks)

    def __repr__(self) -> str:
        return f'{type(self).__name__}({self.name or self.group.name},' \
               f' ranks={list(self.ranks)})'


class ReducedComplex(FreeComplex):
    """Free complex with C_0 = Λ generated by ∗; see validate_reduced."""


def point_complex(group: FiniteGroup = None) -> ReducedComplex:
    return ReducedComplex(group or trivial_group(), [1], name='point')


def homology(C: FreeComplex) -> Dict[int, AbelianGroup]:
    return {k: C.homology(k) for k in range(C.top + 1)}


def twisted_homology(C: FreeComplex,
                     omega: OrientationChar) -> Dict[int, AbelianGroup]:
    return {k: C.twisted_homology(k, omega) for k in range(C.top + 1)}


def _extend_complex(C: FreeComplex, degree: int,
                    cycles: List[List[GroupRingElement]]) -> FreeComplex:
    """Adds one generator in the given degree per cycle, bounding it."""
    group = C.group
    ranks = list(C.ranks) + [0] * max(0, degree - C.top)
    boundaries = {k: C.boundary(k) for k in range(1, C.top + 1)}
    old = ranks[degree]
    ranks[degree] += len(cycles)
    columns = [C.boundary(degree).column(j) for j in range(old)] + cycles
    boundaries[degree] = LambdaMatrix.from_columns(group, columns,
                                                   ranks[degree - 1])
    if degree + 1 < len(ranks):
        above = C.boundary(degree + 1)
        zero = GroupRingElement.zero(group)
        rows = above.entries() + [[zero] * above.cols
                                  for _ in range(len(cycles))]
        boundaries[degree + 1] = LambdaMatrix(group, rows, ranks[degree],
                                              above.cols)
    cls = ReducedComplex if ranks[0] == 1 else FreeComplex
    return cls(group, ranks, boundaries, C.name)


def kill_homology(C: FreeComplex, degree: int, top: int) -> FreeComplex:
    """
    Extends C by free generators in degrees degree+1..top so that the
    universal cover has H_k = 0 for degree ≤ k < top. A homology generator
    gets a new cell only when it is not already bounded by the Λ-span of
    the cells added so far.
    """
    group = C.group
    result = C
    for k in range(degree, top):
        H = result.homology(k)
        if H.is_trivial():
            continue
        bounded = Lattice(result.integer_boundary(k + 1),
                          result.rank(k) * group.order)
        killers = []
        for col in range(H.generators.shape[1]):
            z = H.generators[:, col]
            if bounded.contains(z):
                continue
            killers.append(int_to_lambda_vector(z, group))
            translates = [left_translate(z, g, group) for g in group.elements]
            spanning = np.column_stack([bounded.basis] + translates)\
                if bounded.rank else np.column_stack(translates)
            bounded = Lattice(spanning, len(z))
        result = _extend_complex(result, k + 1, killers)
        logger.debug('Killed H_%d with %d cells, ranks now %s', k,
                     len(killers), list(result.ranks))
        assert result.homology(k).is_trivial(), 'homology killing failed'
    return result


def _degree_bounds(C: FreeComplex) -> Check:
    if C.rank(0) != 1:
        return Check('degree_bounds', False,
                     f'C_0 has rank {C.rank(0)}, expected 1', 0)
    return Check('degree_bounds', True)


def _d_squared(C: FreeComplex) -> Check:
    failure = C.d_squared_failure()
    if failure is not None:
        return Check('d_squared', False,
                     f'd_{failure} d_{failure + 1} is nonzero', failure)
    return Check('d_squared', True)


def _augmentation(C: FreeComplex) -> Check:
    d1 = C.boundary(1)
    for j in range(d1.cols):
        if any(aug(d1[i, j]) for i in range(d1.rows)):
            return Check('h0', False, f'aug(d_1(e_{j})) is nonzero', 0)
    return Check('h0', True)


REDUCED_CHECKS = CheckPipeline(
    ('degree_bounds', _degree_bounds),
    ('d_squared', _d_squared),
    ('h0', _augmentation)
)


def validate_reduced(C: FreeComplex) -> CheckReport:
    return REDUCED_CHECKS.run(C, name=C.name or 'complex')


class TensorComplex(ReducedComplex):
    """C ⊗_ℤ D over π × π′ with the documented basis order."""
    def __init__(self, left: FreeComplex, right: FreeComplex):
        self.left, self.right = left, right
        group = left.group.direct_product(right.group)
        top = left.top + right.top
        self._blocks: Dict[int, List[Tuple[int, int]]] = {}
        ranks = []
        for n in range(top + 1):
            offset, blocks = 0, []
            for i in range(max(0, n - right.top), min(n, left.top) + 1):
                blocks.append((i, offset))
                offset += left.rank(i) * right.rank(n - i)
            self._blocks[n] = blocks
            ranks.append(offset)
        self.ranks = tuple(ranks)
        self.group = group
        boundaries = {n: self._boundary_matrix(n) for n in range(1, top + 1)}
        super().__init__(group, ranks, boundaries,
                         name=f'({left.name} x {right.name})')

    def index(self, n: int, i: int, a: int, b: int) -> int:
        for block_i, offset in self._blocks[n]:
            if block_i == i:
                return offset + a * self.right.rank(n - i) + b
        raise IndexError(f'No block ({i}, {n - i}) in degree {n}')

    def decompose(self, n: int, idx: int) -> Tuple[int, int, int]:
        for block_i, offset in reversed(self._blocks[n]):
            if idx >= offset:
                width = self.right.rank(n - block_i)
                local = idx - offset
                return block_i, local // width, local % width
        raise IndexError(f'Index {idx} outside degree {n}')

    def basis(self, n: int) -> List[Tuple[int, int, int]]:
        return [self.decompose(n, idx) for idx in range(self.ranks[n])]

    def _boundary_matrix(self, n: int) -> LambdaMatrix:
        left, right, group = self.left, self.right, self.group
        one_left = GroupRingElement.one(left.group)
        one_right = GroupRingElement.one(right.group)
        entries = [[GroupRingElement.zero(group)] * self.ranks[n]
                   for _ in range(self.ranks[n - 1])]
        for col, (i, a, b) in enumerate(self.basis(n)):
            j = n - i
            if i >= 1:
                d_left = left.boundary(i)
                for a2 in range(left.rank(i - 1)):
                    x = d_left[a2, a]
                    if not x.is_zero():
                        row = self.index(n - 1, i - 1, a2, b)
                        entries[row][col] = entries[row][col]\
                            + outer_product(x, one_right, group)
            if j >= 1:
                d_right = right.boundary(j)
                sign = -1 if i % 2 else 1
                for b2 in range(right.rank(j - 1)):
                    y = d_right[b2, b]
                    if not y.is_zero():
                        row = self.index(n - 1, i, a, b2)
                        entries[row][col] = entries[row][col]\
                            + outer_product(one_left, y, group) * sign
        return LambdaMatrix(group, entries, self.ranks[n - 1], self.ranks[n])


def tensor_complexes(C: FreeComplex, D: FreeComplex) -> TensorComplex:
    return TensorComplex(C, D)


class ChainMap:
    """φ-equivariant chain map; component k is a target.rank(k) ×
    source.rank(k) matrix."""
    def __init__(self, source: FreeComplex, target: FreeComplex,
                 phi: GroupHom, components: Dict[int, LambdaMatrix] = None):
        if phi.source != source.group or phi.target != target.group:
            raise ValueError('Homomorphism does not match the groups of the'
                             ' complexes')
        self.source, self.target, self.phi = source, target, phi
        components = components or {}
        self._components: Dict[int, LambdaMatrix] = {}
        for k in range(source.top + 1):
            expected = (target.rank(k), source.rank(k))
            matrix = components.get(k)
            if matrix is None:
                matrix = LambdaMatrix.zeros(target.group, *expected)
            if matrix.shape != expected:
                raise ValueError(f'Component {k} has shape {matrix.shape},'
                                 f' expected {expected}')
            self._components[k] = matrix

    def component(self, k: int) -> LambdaMatrix:
        if k in self._components:
            return self._components[k]
        return LambdaMatrix.zeros(self.target.group, self.target.rank(k),
                                  self.source.rank(k))

    @property
    def components(self) -> Dict[int, LambdaMatrix]:
        return dict(self._components)

    def apply(self, k: int, vector: Sequence[GroupRingElement])\
            -> List[GroupRingElement]:
        return apply_lambda(self.component(k), vector, self.phi)

    def __repr__(self) -> str:
        return f'ChainMap({self.source!r} -> {self.target!r})'


def is_chain_map(f: ChainMap) -> bool:
    S, T = f.source, f.target
    if S.rank(0) == 1 and T.rank(0) == 1:
        if f.component(0) != LambdaMatrix.identity(T.group, 1):
            return False
    for k in range(1, S.top + 1):
        lhs = compose_lambda(T.boundary(k), f.component(k))
        rhs = compose_lambda(f.component(k - 1), S.boundary(k), f.phi)
        if lhs != rhs:
            return False
    return True


def identity_map(C: FreeComplex) -> ChainMap:
    return ChainMap(C, C, GroupHom.identity(C.group),
                    {k: LambdaMatrix.identity(C.group, C.rank(k))
                     for k in range(C.top + 1)})


def augmentation_map(C: FreeComplex) -> ChainMap:
    """ε: C → ℤ, the point complex over the trivial group."""
    point = point_complex()
    return ChainMap(C, point, GroupHom.trivial(C.group, point.group),
                    {0: LambdaMatrix.identity(point.group, 1)})


def trivial_map(C: FreeComplex) -> ChainMap:
    """ιε: C → ℤ → C, over the constant homomorphism."""
    return ChainMap(C, C, GroupHom.trivial(C.group, C.group),
                    {0: LambdaMatrix.identity(C.group, 1)})


def compose_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    """g ∘ f."""
    if f.target != g.source:
        raise ValueError('Chain maps are not composable')
    return ChainMap(f.source, g.target, g.phi.compose(f.phi),
                    {k: compose_lambda(g.component(k), f.component(k), g.phi)
                     for k in range(f.source.top + 1)})


def tensor_maps(f: ChainMap, g: ChainMap,
                source: TensorComplex = None,
                target: TensorComplex = None) -> ChainMap:
    """f ⊗ g: C ⊗ D → C′ ⊗ D′ over φ × ψ."""
    source = source or tensor_complexes(f.source, g.source)
    target = target or tensor_complexes(f.target, g.target)
    phi = product_hom(f.phi, g.phi)
    components = {}
    for n in range(source.top + 1):
        entries = [[GroupRingElement.zero(target.group)] * source.rank(n)
                   for _ in range(target.rank(n))]
        for col, (i, a, b) in enumerate(source.basis(n)):
            if i > target.left.top or n - i > target.right.top:
                continue
            f_i, g_j = f.component(i), g.component(n - i)
            for a2 in range(f_i.rows):
                x = f_i[a2, a]
                if x.is_zero():
                    continue
                for b2 in range(g_j.rows):
                    y = g_j[b2, b]
                    if not y.is_zero():
                        row = target.index(n, i, a2, b2)
                        entries[row][col] = outer_product(x, y, target.group)
        components[n] = LambdaMatrix(target.group, entries, target.rank(n),
                                     source.rank(n))
    return ChainMap(source, target, phi, components)


def swap_map(C: FreeComplex, D: FreeComplex) -> ChainMap:
    """T(c ⊗ d) = (−1)^{|c||d|} d ⊗ c."""
    source, target = tensor_complexes(C, D), tensor_complexes(D, C)
    phi = swap_hom(C.group, D.group)
    components = {}
    for n in range(source.top + 1):
        entries = [[GroupRingElement.zero(target.group)] * source.rank(n)
                   for _ in range(target.rank(n))]
        for col, (i, a, b) in enumerate(source.basis(n)):
            sign = -1 if (i * (n - i)) % 2 else 1
            entries[target.index(n, n - i, b, a)][col] =\
                GroupRingElement(target.group, {0: sign})
        components[n] = LambdaMatrix(target.group, entries, target.rank(n),
                                     source.rank(n))
    return ChainMap(source, target, phi, components)


def associator(C: FreeComplex, D: FreeComplex, E: FreeComplex,
               inverse: bool = False) -> ChainMap:
    """(C ⊗ D) ⊗ E → C ⊗ (D ⊗ E), or its inverse."""
    CD = tensor_complexes(C, D)
    DE = tensor_complexes(D, E)
    left, right = tensor_complexes(CD, E), tensor_complexes(C, DE)
    pairs = {}
    for n in range(left.top + 1):
        for col, (j, x, c) in enumerate(left.basis(n)):
            i, a, b = CD.decompose(j, x)
            y = DE.index(n - i, j - i, b, c)
            pairs.setdefault(n, []).append((right.index(n, i, a, y), col))
    source, target = (right, left) if inverse else (left, right)
    phi = GroupHom(source.group, target.group, list(source.group.elements),
                   validate=False)
    components = {}
    for n in range(source.top + 1):
        entries = [[GroupRingElement.zero(target.group)] * source.rank(n)
                   for _ in range(target.rank(n))]
        for row_right, col_left in pairs.get(n, []):
            row, col = (col_left, row_right) if inverse\
                else (row_right, col_left)
            entries[row][col] = GroupRingElement.one(target.group)
        components[n] = LambdaMatrix(target.group, entries, target.rank(n),
                                     source.rank(n))
    return ChainMap(source, target, phi, components)


def counit_map(T: TensorComplex, factor: int) -> ChainMap:
    """p_1 = id ⊗ ε (factor 1) or p_2 = ε ⊗ id (factor 2)."""
    base = T.left if factor == 1 else T.right
    phi = projection_hom(T.left.group, T.right.group, factor)
    components = {}
    for n in range(T.top + 1):
        if n > base.top:
            continue
        entries = [[GroupRingElement.zero(base.group)] * T.rank(n)
                   for _ in range(base.rank(n))]
        for a in range(base.rank(n)):
            col = T.index(n, n, a, 0) if factor == 1 else T.index(n, 0, 0, a)
            entries[a][col] = GroupRingElement.one(base.group)
        components[n] = LambdaMatrix(base.group, entries, base.rank(n),
                                     T.rank(n))
    return ChainMap(T, base, phi, components)


class ChainHomotopy:
    """α with G − F = dα + αd; component k maps C_k → D_{k+1}, α_0 = 0."""
    def __init__(self, source: FreeComplex, target: FreeComplex,
                 phi: GroupHom, components: Dict[int, LambdaMatrix]):
        self.source, self.target, self.phi = source, target, phi
        self._components = dict(components)

    def component(self, k: int) -> LambdaMatrix:
        if k in self._components:
            return self._components[k]
        return LambdaMatrix.zeros(self.target.group, self.target.rank(k + 1),
                                  self.source.rank(k))

    @property
    def components(self) -> Dict[int, LambdaMatrix]:
        return dict(self._components)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self._components.values())

    def verify(self, f: ChainMap, g: ChainMap) -> bool:
        S, T = self.source, self.target
        for k in range(S.top + 1):
            lhs = g.component(k) - f.component(k)
            rhs = compose_lambda(T.boundary(k + 1), self.component(k))
            if k >= 1:
                rhs = rhs + compose_lambda(self.component(k - 1),
                                           S.boundary(k), self.phi)
            if lhs != rhs:
                return False
        return True


def _check_endpoints(f: ChainMap, g: ChainMap) -> None:
    if f.source != g.source or f.target != g.target:
        raise ValueError('Chain maps have different endpoints')
    if f.phi != g.phi:
        raise ValueError('Chain maps lie over different homomorphisms')


def _homotopy_greedy(f: ChainMap, g: ChainMap)\
        -> Optional[Dict[int, LambdaMatrix]]:
    S, T, phi = f.source, f.target, f.phi
    alpha = {0: LambdaMatrix.zeros(T.group, T.rank(1), S.rank(0))}
    for k in range(1, S.top + 1):
        rhs = g.component(k) - f.component(k)\
            - compose_lambda(alpha[k - 1], S.boundary(k), phi)
        d_next = T.boundary(k + 1)
        columns = []
        for j in range(S.rank(k)):
            col = solve_lambda(d_next, rhs.column(j))
            if col is None:
                return None
            columns.append(col)
        alpha[k] = LambdaMatrix.from_columns(T.group, columns, T.rank(k + 1))
    return alpha


def _homotopy_global(f: ChainMap, g: ChainMap)\
        -> Optional[Dict[int, LambdaMatrix]]:
    """All degrees at once; complete for the integer system."""
    S, T, phi = f.source, f.target, f.phi
    n = T.group.order
    degrees = list(range(1, S.top + 1))
    offsets, total = {}, 0
    for k in degrees:
        offsets[k] = total
        total += S.rank(k) * T.rank(k + 1) * n
    eq_offsets, eq_total = {}, 0
    for k in degrees:
        eq_offsets[k] = eq_total
        eq_total += S.rank(k) * T.rank(k) * n
    system = zeros(eq_total, total)
    rhs = np.zeros(eq_total, dtype=object)
    for k in degrees:
        d_int = T.integer_boundary(k + 1)
        width_eq, width_unk = T.rank(k) * n, T.rank(k + 1) * n
        diff = g.component(k) - f.component(k)
        for j in range(S.rank(k)):
            r0 = eq_offsets[k] + j * width_eq
            c0 = offsets[k] + j * width_unk
            system[r0:r0 + width_eq, c0:c0 + width_unk] = d_int
            rhs[r0:r0 + width_eq] = lambda_vector_to_int(diff.column(j),
                                                         T.group)
            if k - 1 in offsets:
                D = S.boundary(k)
                for i in range(S.rank(k - 1)):
                    x = D[i, j].push(phi)
                    if x.is_zero():
                        continue
                    rep = regular_rep(x)
                    base = offsets[k - 1] + i * T.rank(k) * n
                    for m in range(T.rank(k)):
                        system[r0 + m * n:r0 + (m + 1) * n,
                               base + m * n:base + (m + 1) * n] += rep
    solution = integer_solve(system, rhs) if eq_total else\
        np.zeros(total, dtype=object)
    if solution is None:
        return None
    alpha = {0: LambdaMatrix.zeros(T.group, T.rank(1), S.rank(0))}
    for k in degrees:
        width = T.rank(k + 1) * n
        columns = [int_to_lambda_vector(
            solution[offsets[k] + j * width:offsets[k] + (j + 1) * width],
            T.group) for j in range(S.rank(k))]
        alpha[k] = LambdaMatrix.from_columns(T.group, columns, T.rank(k + 1))
    return alpha


def find_homotopy(f: ChainMap, g: ChainMap) -> Optional[ChainHomotopy]:
    """
    Some α with g − f = dα + αd and α_0 = 0, or None when the integer
    system has no solution. Degrees are solved bottom-up first; if that
    gets stuck the whole system is solved at once.
    """
    _check_endpoints(f, g)
    if f.component(0) != g.component(0):
        return None
    alpha = _homotopy_greedy(f, g)
    if alpha is None:
        logger.debug('Greedy homotopy search failed, solving globally')
        alpha = _homotopy_global(f, g)
    if alpha is None:
        return None
    homotopy = ChainHomotopy(f.source, f.target, f.phi, alpha)
    assert homotopy.verify(f, g), 'homotopy solver returned a non-solution'
    return homotopy


@dataclass
class Diagonal:
    """Δ: C → C ⊗ C over g ↦ (g, g) with its counit data."""
    chain_map: ChainMap
    strict: bool
    counit_homotopies: Tuple[Optional[ChainHomotopy],
                             Optional[ChainHomotopy]] = (None, None)

    @property
    def complex(self) -> FreeComplex:
        return self.chain_map.source

    @property
    def tensor(self) -> TensorComplex:
        return self.chain_map.target

    def component(self, k: int) -> LambdaMatrix:
        return self.chain_map.component(k)


def _counit_rows(C: FreeComplex, T: TensorComplex, k: int) -> np.ndarray:
    n = C.group.order
    N = n * n
    rows = zeros(2 * C.rank(k) * n, T.rank(k) * N)
    for a in range(C.rank(k)):
        left_col = T.index(k, k, a, 0) * N
        right_col = T.index(k, 0, 0, a) * N
        for g in range(n):
            for h in range(n):
                rows[a * n + g, left_col + g * n + h] = 1
                rows[(C.rank(k) + a) * n + h, right_col + g * n + h] = 1
    return rows


def _counit_rhs(C: FreeComplex, k: int, b: int) -> np.ndarray:
    n = C.group.order
    rhs = np.zeros(2 * C.rank(k) * n, dtype=object)
    rhs[b * n] = 1
    rhs[(C.rank(k) + b) * n] = 1
    return rhs


def diagonal_from_components(C: FreeComplex,
                             components: Dict[int, LambdaMatrix],
                             tensor: TensorComplex = None) -> Diagonal:
    """Wraps given components; counits are checked strictly, then up to
    homotopy."""
    T = tensor or tensor_complexes(C, C)
    chain_map = ChainMap(C, T, diagonal_hom(C.group), components)
    if not is_chain_map(chain_map):
        raise ValueError('Diagonal components do not form a chain map')
    diagonal = _with_counits(C, chain_map)
    if diagonal is None:
        raise ValueError('Diagonal fails the counit condition')
    return diagonal


def _with_counits(C: FreeComplex, chain_map: ChainMap) -> Optional[Diagonal]:
    T = chain_map.target
    identity = identity_map(C)
    witnesses, strict = [], True
    for factor in (1, 2):
        composite = compose_maps(counit_map(T, factor), chain_map)
        composite = ChainMap(C, C, identity.phi, composite.components)
        if all(composite.component(k) == identity.component(k)
               for k in range(C.top + 1)):
            witnesses.append(None)
            continue
        strict = False
        homotopy = find_homotopy(composite, identity)
        if homotopy is None:
            return None
        witnesses.append(homotopy)
    return Diagonal(chain_map, strict, tuple(witnesses))


def find_diagonal(C: FreeComplex, max_rank: int = None) -> Optional[Diagonal]:
    """
    Builds Δ degreewise with Δ(∗) = ∗⊗∗, solving d(Δb) = Δ(db) together
    with the strict counit equations. A degree where the strict system is
    infeasible is solved without them and the counits are then certified
    by homotopies. Returns None when no diagonal is found.
    """
    report = validate_reduced(C)
    if not report.passed:
        raise ValueError(f'Complex is not reduced: {report.first_failure()}')
    T = tensor_complexes(C, C)
    delta = diagonal_hom(C.group)
    N = T.group.order
    components = {0: LambdaMatrix.identity(T.group, 1)}
    strict = True
    for k in range(1, C.top + 1):
        check_bound(T.rank(k) * N, max_rank, 'Tensor rank')
        d_int = T.integer_boundary(k)
        rhs_d = [lambda_vector_to_int(
            apply_lambda(components[k - 1], C.boundary(k).column(b), delta),
            T.group) for b in range(C.rank(k))]
        columns = None
        if strict:
            solver = IntegerSolver(vstack([d_int, _counit_rows(C, T, k)],
                                          T.rank(k) * N))
            columns = []
            for b in range(C.rank(k)):
                x = solver.solve(np.concatenate([rhs_d[b],
                                                 _counit_rhs(C, k, b)]))
                if x is None:
                    logger.info('Strict counits infeasible in degree %d', k)
                    columns, strict = None, False
                    break
                columns.append(int_to_lambda_vector(x, T.group))
        if columns is None:
            solver = IntegerSolver(d_int)
            columns = []
            for b in range(C.rank(k)):
                x = solver.solve(rhs_d[b])
                if x is None:
                    logger.info('No diagonal component in degree %d', k)
                    return None
                columns.append(int_to_lambda_vector(x, T.group))
        components[k] = LambdaMatrix.from_columns(T.group, columns, T.rank(k))
    chain_map = ChainMap(C, T, delta, components)
    assert is_chain_map(chain_map), 'diagonal solver returned a non-chain map'
    return _with_counits(C, chain_map)


def check_cocommutative(C: FreeComplex,
                        diagonal: Diagonal) -> Optional[ChainHomotopy]:
    """Homotopy from Δ to TΔ, if one exists."""
    swapped = compose_maps(swap_map(C, C), diagonal.chain_map)
    swapped = ChainMap(C, diagonal.tensor, diagonal.chain_map.phi,
                       swapped.components)
    return find_homotopy(diagonal.chain_map, swapped)


def check_coassociative(C: FreeComplex,
                        diagonal: Diagonal) -> Optional[ChainHomotopy]:
    """Homotopy from (Δ ⊗ id)Δ to (id ⊗ Δ)Δ, both read in (C⊗C)⊗C."""
    identity = identity_map(C)
    T = diagonal.tensor
    left = compose_maps(tensor_maps(diagonal.chain_map, identity, source=T),
                        diagonal.chain_map)
    right = compose_maps(tensor_maps(identity, diagonal.chain_map, source=T),
                         diagonal.chain_map)
    right = compose_maps(associator(C, C, C, inverse=True), right)
    right = ChainMap(C, left.target, left.phi, right.components)
    return find_homotopy(left, right)
