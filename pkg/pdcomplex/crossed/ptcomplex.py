"""
The 4-truncated chain complex P(∂_f, B) of a 2-type.

P₀, P₁, P₂ are the cellular chains of the presentation complex. With
K = ker d₂ and B ⊆ K a Λ-submodule,

    P₄ = (C₂ ⊗ C₂) / ∇_B,     ∇_B = B ⊗ B + H[B, C₂],

and P₃ is the part of σ₂ / ω∇_B lying over B. As a Λ-module P₃ is
generated by the tensor generators (spanning the Peiffer part
(C₂ ⊗ C₂) / (HΓ(K) + ∇_B)) and one lift σ_k for each element β_k of a
ℤ-basis of B; the action of a generator a of π on σ_k is read off from
the Peiffer collection of a·σ_k. d₄ = −ω and d₃(σ_k) = β_k.

C₂ ⊗ C₂ carries the diagonal action and is Λ-free on the generators
e_i ⊗ g·e_j; the ℤ-basis element a·e_i ⊗ b·e_j is a times the generator
(i, j, a⁻¹b).
"""
from dataclasses import dataclass
from logging import getLogger
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from pdcomplex.core.chain import FreeComplex
from pdcomplex.core.groupring import (FiniteGroup, GroupRingElement,
                                      OrientationChar)
from pdcomplex.core.linalg import (AbelianGroup, LambdaMatrix, Lattice,
                                   as_int_vector, hstack,
                                   int_to_lambda_vector, lambda_to_int,
                                   lambda_vector_to_int, left_translate,
                                   subquotient, zeros)
from pdcomplex.core.modules import (FreeApproximation, PresentedComplex,
                                    PresentedModule, free_approximation)
from pdcomplex.core.pipeline import Check, CheckPipeline, CheckReport
from pdcomplex.crossed.peiffer import PeifferCollector, tensor_vector
from pdcomplex.crossed.presentation import Presentation
from pdcomplex.crossed.words import FreeWord, PreCrossedModule
from pdcomplex.quadratic.gamma import FGAbelian, gamma_group


logger = getLogger(__name__)


def tensor_to_lambda(group: FiniteGroup, n_relators: int) -> np.ndarray:
    """
    perm[A·dim + B] is the ℤ-coordinate in Λ^{n_relators²·|π|} of the
    basis tensor u_A ⊗ u_B.
    """
    n = group.order
    dim = n_relators * n
    perm = np.zeros(dim * dim, dtype=np.int64)
    inverse = group.inverse_table
    table = group.table
    for A in range(dim):
        i, a = divmod(A, n)
        for B in range(dim):
            j, b = divmod(B, n)
            generator = (i * n_relators + j) * n + table[inverse[a], b]
            perm[A * dim + B] = generator * n + a
    return perm


@dataclass
class PTComplex:
    module: PreCrossedModule
    collector: PeifferCollector
    complex: PresentedComplex
    b_basis: np.ndarray
    pi2: AbelianGroup
    pattern: CheckReport

    @property
    def group(self) -> FiniteGroup:
        return self.collector.group

    @property
    def presentation(self) -> Presentation:
        return self.collector.presentation


@dataclass
class PTHomology:
    groups: Dict[int, AbelianGroup]
    pattern: CheckReport
    approximation: FreeApproximation


def _as_coordinates(vec, group: FiniteGroup) -> np.ndarray:
    if len(vec) and isinstance(vec[0], GroupRingElement):
        return lambda_vector_to_int(vec, group)
    return as_int_vector(vec)


def _nabla(b_basis: np.ndarray, dim: int) -> np.ndarray:
    columns = []
    m = b_basis.shape[1]
    for i in range(m):
        for j in range(m):
            columns.append(tensor_vector(b_basis[:, i], b_basis[:, j]))
        for c in range(dim):
            unit = np.zeros(dim, dtype=object)
            unit[c] = 1
            columns.append(tensor_vector(b_basis[:, i], unit)
                           + tensor_vector(unit, b_basis[:, i]))
    if not columns:
        return zeros(dim * dim, 0)
    return np.array(columns, dtype=object).T


def _extension_cocycle(collector: PeifferCollector, lattice: Lattice,
                       gen: int, k: int)\
        -> Tuple[np.ndarray, np.ndarray]:
    """
    Peiffer part of a·σ_k − Σ_l M_lk σ_l where a·β_k = Σ_l M_lk β_l,
    together with the coordinates M_·k.
    """
    pres = collector.presentation
    group = collector.group
    M = collector.module
    beta = lattice.basis
    lift = collector.kernel_lift(beta[:, k])
    acted = collector.collect(
        lift.representative().act_left(FreeWord.generator(M.n_gens, gen)))
    image = left_translate(beta[:, k], pres.generator_images[gen], group)
    coords = lattice.coordinates(image)
    if coords is None or not acted.in_kernel():
        raise ValueError('B is not a Λ-submodule of ker d2')
    word = M.word()
    for l, coeff in enumerate(coords):
        word = word * (collector.kernel_lift(beta[:, l]).representative()
                       ** int(coeff))
    summed = collector.collect(word)
    assert acted.kernel_coeffs == summed.kernel_coeffs,\
        'lifts of a·b and its B-expansion lie over different elements'
    return acted.peiffer - summed.peiffer, coords


def _pattern_checks(pi2: AbelianGroup) -> CheckPipeline:
    def vanishing(k: int):
        def step(P: PresentedComplex) -> Check:
            H = P.homology(k)
            return Check(f'h{k}', H.is_trivial(), str(H), degree=k)
        return step

    def second(P: PresentedComplex) -> Check:
        H = P.homology(2)
        return Check('h2', H == pi2, f'{H} vs pi2 = {pi2}', degree=2)

    def fourth(P: PresentedComplex) -> Check:
        H = P.homology(4)
        expected = gamma_group(FGAbelian.from_group(pi2)).to_abelian_group()
        return Check('h4', H == expected, f'{H} vs Gamma(pi2) = {expected}',
                     degree=4)

    return CheckPipeline(('h1', vanishing(1)), ('h2', second),
                         ('h3', vanishing(3)), ('h4', fourth))


def build_pt(M: PreCrossedModule, b_generators: Sequence[Sequence] = (),
             collector: Optional[PeifferCollector] = None) -> PTComplex:
    """
    P(∂_f, B) for B the Λ-span of b_generators (C₂ elements as Λ-vectors
    or ℤ-coordinates). Raises ValueError when B is not inside ker d₂ and
    AssertionError when the homology pattern H₁ = H₃ = 0, H₂ = K/B,
    H₄ = Γ(K/B) fails.
    """
    collector = collector or PeifferCollector(M)
    group = collector.group
    n = group.order
    dim = collector.dim
    d2_int = lambda_to_int(collector.d2)
    spanning = []
    for idx, b in enumerate(b_generators):
        vec = _as_coordinates(b, group)
        if len(vec) != dim:
            raise ValueError(f'B generator {idx} has {len(vec)} coordinates,'
                             f' expected {dim}')
        if d2_int.shape[0] and np.count_nonzero(d2_int.dot(vec)):
            raise ValueError(f'B generator {idx} is not in ker d2')
        for g in group.elements:
            spanning.append(left_translate(vec, g, group))
    lattice = Lattice(np.array(spanning, dtype=object).T if spanning
                      else zeros(dim, 0), dim)
    beta = lattice.basis
    m = beta.shape[1]
    perm = tensor_to_lambda(group, M.n_relators)
    F = dim * dim // n

    def to_lambda(vec: np.ndarray) -> List[GroupRingElement]:
        coords = np.zeros(dim * dim, dtype=object)
        coords[perm] = vec
        return int_to_lambda_vector(coords, group)

    zero = GroupRingElement.zero(group)
    nabla = _nabla(beta, dim)
    P4 = PresentedModule(group, F, LambdaMatrix.from_columns(
        group, [to_lambda(nabla[:, j]) for j in range(nabla.shape[1])], F),
        name='P4')
    peiffer_relations = hstack([nabla, collector.gamma_relations], dim * dim)
    columns = [to_lambda(peiffer_relations[:, j]) + [zero] * m
               for j in range(peiffer_relations.shape[1])]
    for gen in range(M.n_gens):
        g = collector.presentation.generator_images[gen]
        for k in range(m):
            cocycle, coords = _extension_cocycle(collector, lattice, gen, k)
            sigma = [GroupRingElement(group, {0: -int(c)}) for c in coords]
            sigma[k] = sigma[k] + GroupRingElement.basis(group, g)
            columns.append([-x for x in to_lambda(cocycle)] + sigma)
    P3 = PresentedModule(group, F + m, LambdaMatrix.from_columns(
        group, columns, F + m), name='P3')
    quotient = AbelianGroup.from_relations(
        lambda_to_int(LambdaMatrix.from_columns(
            group, [col[:F] for col in columns[:peiffer_relations.shape[1]]],
            F)))
    expected = AbelianGroup(quotient.free_rank + m, quotient.torsion)
    if P3.underlying_group() != expected:
        raise AssertionError(
            f'P3 is {P3.underlying_group()}, not an extension of B by the'
            f' Peiffer quotient {quotient}; the induced action is not'
            ' equivariant')
    d4 = LambdaMatrix(group, [[-GroupRingElement.one(group) if i == j
                               else zero for j in range(F)]
                              for i in range(F + m)], F + m, F)
    d3_columns = [[zero] * M.n_relators for _ in range(F)]
    d3_columns += [int_to_lambda_vector(beta[:, k], group) for k in range(m)]
    d3 = LambdaMatrix.from_columns(group, d3_columns, M.n_relators)
    modules = [PresentedModule.free(group, 1),
               PresentedModule.free(group, M.n_gens),
               PresentedModule.free(group, M.n_relators), P3, P4]
    complex_ = PresentedComplex(group, modules,
                                {1: collector.d1, 2: collector.d2, 3: d3,
                                 4: d4}, name=f'P({M.name or "T"})')
    kernel = Lattice(collector.kappa, dim)
    pi2 = subquotient(kernel, beta)
    pattern = _pattern_checks(pi2).run(complex_, complex_.name)
    if not pattern.passed:
        failure = pattern.first_failure()
        raise AssertionError(f'P(T) homology pattern fails at {failure.name}:'
                             f' {failure.detail}')
    logger.info('Built %s: pi2 = %s, P3 on %d generators, P4 on %d',
                complex_.name, pi2, F + m, F)
    return PTComplex(M, collector, complex_, beta, pi2, pattern)


def pt_homology(P: PTComplex,
                omega: Optional[OrientationChar] = None) -> PTHomology:
    """H_k(T, ℤ^ω) for k ≤ 4 through a free approximation of P(T)."""
    omega = omega or OrientationChar.trivial(P.group)
    approximation = free_approximation(P.complex, 4)
    C: FreeComplex = approximation.complex
    groups = {k: C.twisted_homology(k, omega) for k in range(5)}
    logger.debug('Homology of %s: %s', P.complex.name, groups)
    return PTHomology(groups, P.pattern, approximation)


def check_pattern(P: PTComplex) -> CheckReport:
    return _pattern_checks(P.pi2).run(P.complex, P.complex.name)


def b_from_boundary(d3: LambdaMatrix) -> List[List[GroupRingElement]]:
    """B = im d₃ given by the columns of a cellular d₃."""
    return [d3.column(j) for j in range(d3.cols)]
