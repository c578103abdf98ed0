"""
Finitely presented Λ-modules, maps between them, complexes of presented
modules and their free approximations.

A module Λ^a / R is stored by its relation matrix R (a × r), whose
columns are relators. A map of presented modules is a matrix on
generators that sends relators into the Λ-span of the target relators.
"""
from dataclasses import dataclass, field
from logging import getLogger
from typing import Dict, List, Mapping, Optional, Sequence
import numpy as np
from pdcomplex.core.chain import FreeComplex, ReducedComplex
from pdcomplex.core.groupring import (FiniteGroup, GroupRingElement,
                                      OrientationChar)
from pdcomplex.core.linalg import (AbelianGroup, LambdaMatrix, Lattice,
                                   apply_lambda, as_int_matrix, compose_lambda,
                                   eye, hstack, int_to_lambda_vector,
                                   integer_kernel, lambda_to_int,
                                   lambda_vector_to_int, left_translate,
                                   subquotient,
                                   twisted_matrix, zeros)


logger = getLogger(__name__)


class PresentedModule:
    def __init__(self, group: FiniteGroup, n_gens: int,
                 relations: Optional[LambdaMatrix] = None, name: str = ''):
        if relations is None:
            relations = LambdaMatrix.zeros(group, n_gens, 0)
        if relations.rows != n_gens:
            raise ValueError(f'Relations have {relations.rows} rows for'
                             f' {n_gens} generators')
        if relations.group != group:
            raise ValueError('Relations live over another group')
        self.group = group
        self.n_gens = n_gens
        self.relations = relations
        self.name = name
        self._lattice: Optional[Lattice] = None

    @classmethod
    def free(cls, group: FiniteGroup, n_gens: int) -> 'PresentedModule':
        return cls(group, n_gens)

    @classmethod
    def from_lattice_action(cls, group: FiniteGroup, relations,
                            actions: Mapping[int, np.ndarray])\
            -> 'PresentedModule':
        """
        The abelian group ℤ^r / relations with π acting through the
        given integer matrices on a generating set of π.
        """
        relations = as_int_matrix(relations)
        r = relations.shape[0]
        columns = [[GroupRingElement(group, {0: x}) for x in relations[:, j]]
                   for j in range(relations.shape[1])]
        for g, action in actions.items():
            action = as_int_matrix(action)
            for i in range(r):
                col = [GroupRingElement(group, {0: -int(action[m, i])})
                       for m in range(r)]
                col[i] = col[i] + GroupRingElement.basis(group, g)
                columns.append(col)
        return cls(group, r, LambdaMatrix.from_columns(group, columns, r))

    @property
    def is_free(self) -> bool:
        return self.relations.is_zero()

    def to_integer_presentation(self) -> np.ndarray:
        """Relators of the underlying abelian group on the basis g·e_i."""
        return lambda_to_int(self.relations)

    def relation_lattice(self) -> Lattice:
        if self._lattice is None:
            self._lattice = Lattice(self.to_integer_presentation(),
                                    self.n_gens * self.group.order)
        return self._lattice

    def underlying_group(self) -> AbelianGroup:
        return AbelianGroup.from_relations(self.to_integer_presentation())

    def is_zero_element(self, vector: Sequence[GroupRingElement]) -> bool:
        return self.relation_lattice().contains(
            lambda_vector_to_int(vector, self.group))

    def __repr__(self) -> str:
        return f'PresentedModule({self.n_gens} generators,' \
               f' {self.relations.cols} relations)'


class ModuleMap:
    """Λ-map source → target given on generators; relations are checked."""
    def __init__(self, source: PresentedModule, target: PresentedModule,
                 matrix: LambdaMatrix, check: bool = True):
        if matrix.shape != (target.n_gens, source.n_gens):
            raise ValueError(f'Module map has shape {matrix.shape}, expected'
                             f' {(target.n_gens, source.n_gens)}')
        self.source, self.target, self.matrix = source, target, matrix
        if check:
            for j in range(source.relations.cols):
                image = apply_lambda(matrix, source.relations.column(j))
                if not target.is_zero_element(image):
                    raise ValueError(f'Relation {j} of the source is not sent'
                                     ' into the relations of the target')

    def compose(self, inner: 'ModuleMap') -> 'ModuleMap':
        """self ∘ inner."""
        return ModuleMap(inner.source, self.target,
                         compose_lambda(self.matrix, inner.matrix),
                         check=False)

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(self.matrix.column(j))
                   for j in range(self.matrix.cols))


class PresentedComplex:
    """Bounded complex of presented modules in degrees 0..top."""
    def __init__(self, group: FiniteGroup, modules: Sequence[PresentedModule],
                 boundaries: Dict[int, LambdaMatrix] = None, name: str = ''):
        self.group = group
        self.modules = list(modules)
        self.name = name
        boundaries = boundaries or {}
        self._maps: Dict[int, ModuleMap] = {}
        for k in range(1, len(self.modules)):
            matrix = boundaries.get(k)
            if matrix is None:
                matrix = LambdaMatrix.zeros(group, self.modules[k - 1].n_gens,
                                            self.modules[k].n_gens)
            self._maps[k] = ModuleMap(self.modules[k], self.modules[k - 1],
                                      matrix)
        for k in range(2, len(self.modules)):
            if not self._maps[k - 1].compose(self._maps[k]).is_zero():
                raise ValueError(f'Boundaries d_{k - 1} d_{k} do not vanish'
                                 ' modulo relations')

    @classmethod
    def from_free(cls, C: FreeComplex) -> 'PresentedComplex':
        modules = [PresentedModule.free(C.group, r) for r in C.ranks]
        return cls(C.group, modules,
                   {k: C.boundary(k) for k in range(1, C.top + 1)}, C.name)

    @property
    def top(self) -> int:
        return len(self.modules) - 1

    def module(self, k: int) -> PresentedModule:
        if 0 <= k < len(self.modules):
            return self.modules[k]
        return PresentedModule.free(self.group, 0)

    def boundary(self, k: int) -> LambdaMatrix:
        if k in self._maps:
            return self._maps[k].matrix
        return LambdaMatrix.zeros(self.group, self.module(k - 1).n_gens,
                                  self.module(k).n_gens)

    def homology(self, k: int) -> AbelianGroup:
        return presented_homology(self, k)

    def __repr__(self) -> str:
        return f'PresentedComplex({self.name or self.group.name},' \
               f' generators={[m.n_gens for m in self.modules]})'


def _project_kernel(system: np.ndarray, keep: int) -> np.ndarray:
    return integer_kernel(system)[:keep, :]


def presented_homology(P: PresentedComplex, k: int) -> AbelianGroup:
    """H_k of the underlying abelian complex of P."""
    n = P.group.order
    M, below = P.module(k), P.module(k - 1)
    dim = M.n_gens * n
    system = hstack([lambda_to_int(P.boundary(k)),
                     -below.to_integer_presentation()], below.n_gens * n)
    cycles = Lattice(_project_kernel(system, dim), dim)
    bounding = hstack([lambda_to_int(P.boundary(k + 1)),
                       M.to_integer_presentation()], dim)
    return subquotient(cycles, bounding)


def coinvariants(M: PresentedModule, omega: OrientationChar) -> AbelianGroup:
    """H_0(π, M^ω) = M / ⟨m − (−1)^ω(g) g·m⟩."""
    if omega.group != M.group:
        raise ValueError('Orientation character lives over another group')
    return AbelianGroup.from_relations(
        as_int_matrix(twisted_matrix(M.relations, omega), M.n_gens,
                      M.relations.cols))


def twisted_coinvariants(relations, actions: Sequence[np.ndarray],
                         signs: Sequence[int]) -> AbelianGroup:
    """
    Coinvariants of ℤ^r / relations under integer action matrices A_g,
    each twisted by its sign s_g: the quotient by the A_g − s_g·I.
    """
    relations = as_int_matrix(relations)
    r = relations.shape[0]
    blocks = [relations]
    for action, sign in zip(actions, signs):
        blocks.append(as_int_matrix(action) - sign * eye(r))
    return AbelianGroup.from_relations(hstack(blocks, r))


@dataclass
class FreeApproximation:
    """Free complex with a comparison map into a presented complex."""
    complex: FreeComplex
    comparison: Dict[int, LambdaMatrix]
    source: PresentedComplex
    top: int
    cone_ranks: List[int] = field(default_factory=list)

    def compare(self, k: int, vector: Sequence[GroupRingElement])\
            -> List[GroupRingElement]:
        return apply_lambda(self.comparison_matrix(k), vector)

    def comparison_matrix(self, k: int) -> LambdaMatrix:
        if k in self.comparison:
            return self.comparison[k]
        return LambdaMatrix.zeros(self.complex.group,
                                  self.source.module(k).n_gens,
                                  self.complex.rank(k))

    def is_chain_map(self) -> bool:
        for k in range(1, self.complex.top + 1):
            lhs = compose_lambda(self.source.boundary(k),
                                 self.comparison_matrix(k))
            rhs = compose_lambda(self.comparison_matrix(k - 1),
                                 self.complex.boundary(k))
            target = self.source.module(k - 1)
            diff = lhs - rhs
            if not all(target.is_zero_element(diff.column(j))
                       for j in range(diff.cols)):
                return False
        return True


def _cone_cycles(C: FreeComplex, phi: Dict[int, LambdaMatrix],
                 P: PresentedComplex, k: int) -> Lattice:
    """(z, p) ∈ C_{k−1} ⊕ P_k with dz = 0 and φz + Dp ≡ 0 in P_{k−1}."""
    n = C.group.order
    zdim, pdim = C.rank(k - 1) * n, P.module(k).n_gens * n
    below = P.module(k - 1)
    rel = below.to_integer_presentation()
    rows_d, rows_p = C.rank(k - 2) * n, below.n_gens * n
    width = zdim + pdim + rel.shape[1]
    system = zeros(rows_d + rows_p, width)
    system[:rows_d, :zdim] = C.integer_boundary(k - 1)
    comparison = phi.get(k - 1)
    if comparison is not None and zdim:
        system[rows_d:, :zdim] = lambda_to_int(comparison)
    system[rows_d:, zdim:zdim + pdim] = lambda_to_int(P.boundary(k))
    system[rows_d:, zdim + pdim:] = -rel
    return Lattice(_project_kernel(system, zdim + pdim), zdim + pdim)


def _cone_boundaries(C: FreeComplex, phi: Dict[int, LambdaMatrix],
                     P: PresentedComplex, k: int) -> np.ndarray:
    n = C.group.order
    zdim, pdim = C.rank(k - 1) * n, P.module(k).n_gens * n
    cdim, qdim = C.rank(k) * n, P.module(k + 1).n_gens * n
    M = P.module(k)
    rel = M.to_integer_presentation()
    block = zeros(zdim + pdim, cdim + qdim + rel.shape[1])
    block[:zdim, :cdim] = -C.integer_boundary(k)
    comparison = phi.get(k)
    if comparison is not None and cdim:
        block[zdim:, :cdim] = lambda_to_int(comparison)
    block[zdim:, cdim:cdim + qdim] = lambda_to_int(P.boundary(k + 1))
    block[zdim:, cdim + qdim:] = rel
    return block


def _extend(C: FreeComplex, phi: Dict[int, LambdaMatrix], P: PresentedComplex,
            k: int, killers: List[np.ndarray]) -> FreeComplex:
    group = C.group
    n = group.order
    zdim = C.rank(k - 1) * n
    ranks = list(C.ranks) + [0] * max(0, k - C.top)
    boundaries = {j: C.boundary(j) for j in range(1, C.top + 1)}
    old = ranks[k]
    columns = [C.boundary(k).column(j) for j in range(old)]
    images = [phi[k].column(j) for j in range(old)] if k in phi else []
    for w in killers:
        columns.append(int_to_lambda_vector(w[:zdim], group))
        images.append(int_to_lambda_vector(-w[zdim:], group))
    ranks[k] = old + len(killers)
    if k >= 1:
        boundaries[k] = LambdaMatrix.from_columns(group, columns,
                                                  ranks[k - 1])
    phi[k] = LambdaMatrix.from_columns(group, images, P.module(k).n_gens)
    cls = ReducedComplex if ranks[0] == 1 else FreeComplex
    return cls(group, ranks, boundaries, P.name)


def _free_prefix(P: PresentedComplex, limit: int) -> int:
    m = -1
    while m + 1 <= limit and m + 1 <= P.top and P.module(m + 1).is_free:
        m += 1
    return m


def free_approximation(P: PresentedComplex, top: int) -> FreeApproximation:
    """
    Free complex C′ in degrees ≤ top + 1 with a comparison C′ → P that is
    a homology isomorphism in degrees ≤ top. Leading free degrees of P are
    copied. Above them the homology of the mapping cone is killed degree
    by degree: a cone cycle (z, p) gets a new cell c with dc = z and
    comparison image −p, unless the Λ-span of the cells already added
    bounds it.
    """
    group = P.group
    n = group.order
    prefix = _free_prefix(P, top + 1)
    if prefix >= 0:
        ranks = [P.module(k).n_gens for k in range(prefix + 1)]
        C = FreeComplex(group, ranks,
                        {k: P.boundary(k) for k in range(1, prefix + 1)})
        phi = {k: LambdaMatrix.identity(group, ranks[k])
               for k in range(prefix + 1)}
    else:
        C, phi = FreeComplex(group, [0]), {}
    for k in range(max(prefix + 1, 0), top + 2):
        cycles = _cone_cycles(C, phi, P, k)
        bounding = _cone_boundaries(C, phi, P, k)
        H = subquotient(cycles, bounding)
        killers = []
        if not H.is_trivial():
            dim = cycles.dim
            lattice = Lattice(bounding, dim)
            for col in range(H.generators.shape[1]):
                w = H.generators[:, col]
                if lattice.contains(w):
                    continue
                killers.append(w)
                spanning = [lattice.basis] + [
                    left_translate(w, g, group).reshape(-1, 1)
                    for g in group.elements]
                lattice = Lattice(hstack(spanning, dim), dim)
        C = _extend(C, phi, P, k, killers)
        logger.debug('Free approximation degree %d: %d new cells', k,
                     len(killers))
    result = FreeApproximation(C, phi, P, top, list(C.ranks))
    for k in range(top + 2):
        cone = subquotient(_cone_cycles(C, phi, P, k),
                           _cone_boundaries(C, phi, P, k))
        assert cone.is_trivial(),\
            f'mapping cone homology survives in degree {k}'
    assert result.is_chain_map(), 'comparison is not a chain map'
    logger.info('Free approximation of %s has ranks %s', P.name or 'complex',
                list(C.ranks))
    return result
