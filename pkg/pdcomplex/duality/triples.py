"""
Fundamental triples (type, ω, t) of PD-chain complexes.

For n = 3 the type is the group π, modelled by a free resolution: either
the complex itself with the homology of its universal cover killed from
degree 1 up (the default, small) or the normalized bar resolution. For
n = 4 the type is the 2-type given by the pre-crossed module of the
2-skeleton and B = im d₃, modelled by a free approximation of P(∂_f, B).
t is the class of the pushed fundamental cycle in H_n(type, ℤ^ω).
"""
from dataclasses import dataclass, field
from itertools import product
from logging import getLogger
from typing import Any, Dict, Iterator, List, Optional, Tuple
import numpy as np
from tqdm import tqdm
from pdcomplex.core.chain import (ChainMap, FreeComplex, ReducedComplex,
                                  check_cocommutative,
                                  diagonal_from_components, is_chain_map,
                                  kill_homology, tensor_complexes,
                                  tensor_maps)
from pdcomplex.core.errors import UndecidedError, check_bound
from pdcomplex.core.groupring import (FiniteGroup, GroupHom, GroupRingElement,
                                      OrientationChar, diagonal_hom)
from pdcomplex.core.linalg import (AbelianGroup, LambdaMatrix, Lattice,
                                   apply_lambda, as_int_matrix, eye, hstack,
                                   int_to_lambda_vector, integer_kernel,
                                   integer_solve, lambda_to_int,
                                   lambda_vector_to_int, left_translate,
                                   matmul, subquotient, twisted_matrix, zeros)
from pdcomplex.core.modules import free_approximation, twisted_coinvariants
from pdcomplex.crossed.peiffer import PeifferCollector, tensor_vector
from pdcomplex.crossed.ptcomplex import (PTComplex, b_from_boundary, build_pt,
                                         tensor_to_lambda)
from pdcomplex.crossed.symmetry import (PresentationSymmetry,
                                       presentation_symmetries)
from pdcomplex.crossed.words import PreCrossedModule
from pdcomplex.duality.poincare import PDChainComplex, delta_of_cycle
from pdcomplex.quadratic.gamma import (FGAbelian, GammaGroup, gamma_induced,
                                       quadratic_form_invariants,
                                       tensor_induced, tensor_square,
                                       whitehead_H_matrix)
from pdcomplex.utils import BAR_FORMAT


logger = getLogger(__name__)

MAX_BAR_DEGREE = 5
DEFAULT_FORM_BOUND = 2


class BarResolution(ReducedComplex):
    """
    Normalized bar resolution in degrees 0..top. The cells of degree k are
    the tuples [g₁|…|g_k] of non-identity elements in lexicographic order,
    with d[g₁|…|g_k] = g₁[g₂|…|g_k] + Σ (−1)^i […|g_i g_{i+1}|…]
    + (−1)^k [g₁|…|g_{k−1}] and cells containing the identity dropped.
    """
    def __init__(self, group: FiniteGroup, top: int):
        self.cells: Dict[int, List[Tuple[int, ...]]] = {
            k: list(product(range(1, group.order), repeat=k))
            for k in range(top + 1)}
        boundaries = {k: self._boundary(group, k) for k in range(1, top + 1)}
        super().__init__(group, [len(self.cells[k]) for k in range(top + 1)],
                         boundaries, name=f'B({group.name})')

    def _boundary(self, group: FiniteGroup, k: int) -> LambdaMatrix:
        index = {cell: i for i, cell in enumerate(self.cells[k - 1])}
        terms: Dict[Tuple[int, int], Dict[int, int]] = {}

        def add(face: Tuple[int, ...], col: int, g: int, sign: int) -> None:
            if 0 in face:
                return
            coeffs = terms.setdefault((index[face], col), {})
            coeffs[g] = coeffs.get(g, 0) + sign

        for col, cell in enumerate(self.cells[k]):
            add(cell[1:], col, cell[0], 1)
            for i in range(k - 1):
                merged = cell[:i] + (group.mul(cell[i], cell[i + 1]),)\
                    + cell[i + 2:]
                add(merged, col, 0, (-1) ** (i + 1))
            add(cell[:-1], col, 0, (-1) ** k)
        zero = GroupRingElement.zero(group)
        rows, cols = len(self.cells[k - 1]), len(self.cells[k])
        entries = [[zero] * cols for _ in range(rows)]
        for (i, j), coeffs in terms.items():
            entries[i][j] = GroupRingElement(group, coeffs)
        return LambdaMatrix(group, entries, rows, cols)


def bar_resolution(group: FiniteGroup, top: int = 4,
                   max_rank: int = None) -> BarResolution:
    if not 0 <= top <= MAX_BAR_DEGREE:
        raise ValueError(f'Bar resolution degree must be in'
                         f' 0..{MAX_BAR_DEGREE}, got {top}')
    check_bound((group.order - 1) ** top * group.order, max_rank,
                'Bar resolution rank')
    return BarResolution(group, top)


def killing_resolution(C: FreeComplex, top: int = 4) -> FreeComplex:
    """C extended by cells killing H_k(C̃) for 1 ≤ k < top."""
    return kill_homology(C, 1, top)


def lift_to_resolution(C: FreeComplex, F: FreeComplex, phi: GroupHom = None,
                       fixed: Dict[int, LambdaMatrix] = None,
                       rng: np.random.Generator = None) -> ChainMap:
    """
    φ-equivariant chain map C → F with ∗ ↦ ∗, built degreewise by
    solving d_F ξ_k = ξ_{k−1} d_C column by column. Components in fixed
    are taken as given. With rng every solved column is moved by the
    boundary of a random chain, which gives another lift of the same map.
    """
    phi = phi or GroupHom.identity(C.group)
    if C.top > F.top:
        raise ValueError(f'Cannot lift {C.top}-dimensional {C.name} into'
                         f' {F.name} of top degree {F.top}')
    fixed = fixed or {}
    group, n = F.group, F.group.order
    comps = {0: fixed.get(0, LambdaMatrix.identity(group, 1))}
    for k in range(1, C.top + 1):
        if k in fixed:
            comps[k] = fixed[k]
            continue
        solver_matrix = F.integer_boundary(k)
        columns = []
        for j in range(C.rank(k)):
            rhs = lambda_vector_to_int(
                apply_lambda(comps[k - 1], C.boundary(k).column(j), phi),
                group)
            if not np.count_nonzero(rhs):
                x = np.zeros(F.rank(k) * n, dtype=object)
            else:
                x = integer_solve(solver_matrix, rhs)
            if x is None:
                raise AssertionError(f'{F.name} is not acyclic in degree'
                                     f' {k - 1}: no lift of cell {j}')
            if rng is not None and F.rank(k + 1):
                noise = rng.integers(-2, 3, size=F.rank(k + 1) * n)
                x = x + matmul(F.integer_boundary(k + 1),
                               noise.astype(object).reshape(-1, 1))[:, 0]
            columns.append(int_to_lambda_vector(x, group))
        comps[k] = LambdaMatrix.from_columns(group, columns, F.rank(k))
        logger.debug('Lifted degree %d of %s into %s', k, C.name, F.name)
    lift = ChainMap(C, F, phi, comps)
    assert is_chain_map(lift), 'lift is not a chain map'
    return lift


def _augment(vec: np.ndarray, omega: OrientationChar, rank: int) -> np.ndarray:
    """ℤ^ω ⊗_Λ − on ℤ-coordinates."""
    n = omega.group.order
    signs = np.array([omega.sign(g) for g in range(n)], dtype=object)
    return np.array([int(np.dot(vec[j * n:(j + 1) * n], signs))
                     for j in range(rank)], dtype=object)


@dataclass
class FundamentalTriple:
    formal_dim: int
    omega: OrientationChar
    resolution: FreeComplex
    homology: AbelianGroup
    cycle: np.ndarray
    name: str = ''
    pt: Optional[PTComplex] = None
    form: Optional[np.ndarray] = None
    pinned: bool = False
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def group(self) -> FiniteGroup:
        return self.omega.group

    @property
    def t(self) -> Tuple[int, ...]:
        return self.homology.coordinates(self.cycle)

    def to_dict(self) -> Dict[str, Any]:
        result = {'formal_dim': self.formal_dim,
                  'group_order': self.group.order,
                  'orientation': [self.omega(g) for g in self.group.elements],
                  'homology': self.homology.to_dict(),
                  't': list(self.t),
                  'resolution_ranks': list(self.resolution.ranks)}
        if self.formal_dim == 4:
            result['diagonal_pinned'] = self.pinned
            result['pi2'] = self.pt.pi2.to_dict() if self.pt else None
        if self.form is not None:
            result['form'] = [[int(x) for x in row] for row in self.form]
        return result


def triple_pd3(X: PDChainComplex, resolution: str = 'killing',
               max_rank: int = None) -> FundamentalTriple:
    n = X.formal_dim
    if n != 3:
        raise ValueError(f'{X.name} has formal dimension {n}, expected 3')
    C = X.complex
    if resolution == 'killing':
        F = killing_resolution(C, n + 1)
        fixed = {k: LambdaMatrix.identity(X.group, C.rank(k))
                 for k in range(n + 1)}
        lift = lift_to_resolution(C, F, fixed=fixed)
    elif resolution == 'bar':
        F = bar_resolution(X.group, n + 1, max_rank)
        lift = lift_to_resolution(C, F)
    else:
        raise ValueError(f'Unknown resolution kind {resolution!r}')
    cycle = matmul(twisted_matrix(lift.component(n), X.omega),
                   X.fundamental_cycle.reshape(-1, 1))[:, 0]
    H = F.twisted_homology(n, X.omega)
    triple = FundamentalTriple(n, X.omega, F, H, cycle, X.name,
                               meta={'resolution': resolution})
    logger.info('Triple of %s: H_3 = %s, t = %s', X.name, H, triple.t)
    return triple


def _pin_top_cycle(X: PDChainComplex, P: PTComplex, approx, u: np.ndarray)\
        -> Optional[Tuple[np.ndarray, int]]:
    """
    A chain ξ₄(x) + c, c a cycle of C′₄, whose comparison image equals
    ±w in P₄, w the (2,2)-block of Δ(x). Returns it with the sign used.
    """
    group = X.group
    n = group.order
    Cp = approx.complex
    dim = P.collector.dim
    T = X.diagonal.tensor
    w_int = np.zeros(dim * dim, dtype=object)
    for row, x in enumerate(delta_of_cycle(X)):
        if x.is_zero():
            continue
        block, a, b = T.decompose(4, row)
        if block != 2:
            continue
        for pair, c in x.terms:
            g, h = divmod(pair, n)
            w_int[(a * n + g) * dim + b * n + h] += c
    w = np.zeros(dim * dim, dtype=object)
    w[tensor_to_lambda(group, P.module.n_relators)] = w_int
    comparison = lambda_to_int(approx.comparison_matrix(4))
    cycles = integer_kernel(Cp.integer_boundary(4))
    relations = P.complex.module(4).to_integer_presentation()
    system = hstack([matmul(comparison, cycles), relations], dim * dim)
    base = matmul(comparison, u.reshape(-1, 1))[:, 0]
    for sign in (1, -1):
        solution = integer_solve(system, sign * w - base)
        if solution is not None:
            shift = matmul(cycles, solution[:cycles.shape[1]]
                           .reshape(-1, 1))[:, 0]
            return u + shift, sign
    return None


def _read_form(X: PDChainComplex, P: PTComplex, sign: int) -> np.ndarray:
    """Symmetric form of the (2,2)-block of Δ(x) in the basis κ_i ⊗ κ_j of
    K ⊗ K, for simply connected X with B = 0."""
    kappa = P.collector.kappa
    m = kappa.shape[1]
    dim = P.collector.dim
    if m == 0:
        return zeros(0, 0)
    T = X.diagonal.tensor
    w = np.zeros(dim * dim, dtype=object)
    for row, x in enumerate(delta_of_cycle(X)):
        block, a, b = T.decompose(4, row)
        if block == 2:
            w[a * dim + b] += sign * x.coeff(0)
    basis = np.column_stack([tensor_vector(kappa[:, i], kappa[:, j])
                             for i in range(m) for j in range(m)])
    coords = integer_solve(basis, w)
    if coords is None:
        raise UndecidedError(f'The diagonal of {X.name} does not restrict to'
                             ' K (x) K in degree (2, 2)')
    form = as_int_matrix(coords.reshape(m, m))
    if not np.array_equal(form, form.T):
        raise UndecidedError(f'The diagonal of {X.name} gives a non-symmetric'
                             ' intersection form')
    return form


def _b_lattice(d3: LambdaMatrix, dim: int) -> Lattice:
    """Λ-span of the columns of d₃ as a lattice in ℤ^dim."""
    group = d3.group
    spanning = [left_translate(lambda_vector_to_int(d3.column(j), group), g,
                               group)
                for j in range(d3.cols) for g in group.elements]
    return Lattice(np.array(spanning, dtype=object).T if spanning
                   else zeros(dim, 0), dim)


def triple_pd4(X: PDChainComplex, M: PreCrossedModule,
               collector: PeifferCollector = None,
               model: FundamentalTriple = None) -> FundamentalTriple:
    """
    Builds P(∂_f, B) with B = im d₃, a free approximation C′ → P(T) and the
    lift Ĉ(X) → C′ that is the identity in degrees ≤ 2. When H₄ of the
    universal cover of C′ is nonzero its degree-4 part is pinned by the
    diagonal; simply connected inputs with B = 0 also carry the form.
    With a model triple of the same B its P(T) and C′ are reused, so the
    two classes t live in one group.
    """
    n = X.formal_dim
    if n != 4:
        raise ValueError(f'{X.name} has formal dimension {n}, expected 4')
    if model is not None:
        collector = model.pt.collector
    collector = collector or PeifferCollector(M)
    C = X.complex
    if collector.group != X.group:
        raise ValueError(f'Group of the presentation of {M.name or "M"}'
                         f' differs from the group of {X.name}')
    if (C.rank(1), C.rank(2)) != (M.n_gens, M.n_relators)\
            or C.boundary(1) != collector.d1 or C.boundary(2) != collector.d2:
        raise ValueError(f'Fox boundaries of {M.name or "M"} do not match the'
                         f' 2-skeleton of {X.name}')
    if model is None:
        P = build_pt(M, b_from_boundary(C.boundary(3)), collector)
        approx = free_approximation(P.complex, 4)
    else:
        P, approx = model.pt, model.meta['approximation']
        if _b_lattice(C.boundary(3), collector.dim)\
                != Lattice(P.b_basis, collector.dim):
            raise ValueError(f'im d3 of {X.name} differs from B of'
                             f' {model.name}')
    Cp = approx.complex
    fixed = {k: LambdaMatrix.identity(X.group, C.rank(k)) for k in range(3)}
    lift = lift_to_resolution(C, Cp, fixed=fixed)
    group = X.group
    u = np.zeros(Cp.rank(4) * group.order, dtype=object)
    for a, z in enumerate(X.fundamental_cycle):
        if z:
            u += int(z) * lambda_vector_to_int(lift.component(4).column(a),
                                               group)
    pinned, form, sign = False, None, 1
    if not Cp.homology(4).is_trivial():
        if X.diagonal is None:
            raise UndecidedError(f'{X.name} needs a diagonal to fix the'
                                 ' Gamma(pi2) part of its triple')
        result = _pin_top_cycle(X, P, approx, u)
        if result is None:
            raise UndecidedError(f'The diagonal of {X.name} does not meet the'
                                 ' comparison image in degree 4')
        u, sign = result
        pinned = True
    if group.order == 1 and P.b_basis.shape[1] == 0:
        form = _read_form(X, P, sign) if X.diagonal is not None\
            or not P.collector.kappa.shape[1] else None
    cycle = _augment(u, X.omega, Cp.rank(4))
    H = Cp.twisted_homology(4, X.omega)
    triple = FundamentalTriple(n, X.omega, Cp, H, cycle, X.name, P, form,
                               pinned,
                               {'presentation': M, 'complex': X,
                                'approximation': approx})
    logger.info('Triple of %s: pi2 = %s, H_4 = %s, t = %s', X.name, P.pi2, H,
                triple.t)
    return triple


@dataclass
class TripleIsomorphism:
    phi: GroupHom
    form_matrix: Optional[np.ndarray] = None

    def generator_images(self) -> Dict[int, int]:
        return {g: self.phi(g) for g in self.phi.source.generators()}

    def to_dict(self) -> Dict[str, Any]:
        result = {'phi': list(self.phi.images),
                  'generator_images': {str(g): h for g, h
                                       in self.generator_images().items()}}
        if self.form_matrix is not None:
            result['form_matrix'] = [[int(x) for x in row]
                                     for row in self.form_matrix]
        return result


def group_isomorphisms(source: FiniteGroup, target: FiniteGroup,
                       max_candidates: int = None,
                       progress: bool = False) -> Iterator[GroupHom]:
    """Isomorphisms in lexicographic order of the generator images."""
    if source.order != target.order:
        return
    gens = source.generators()
    pools = [[h for h in target.elements
              if target.element_order(h) == source.element_order(g)]
             for g in gens]
    total = int(np.prod([len(p) for p in pools], dtype=object))
    check_bound(total, max_candidates, 'Isomorphism candidates')
    logger.debug('Enumerating %d candidate isomorphisms %s -> %s', total,
                 source.name, target.name)
    for images in tqdm(product(*pools), total=total, desc='isomorphisms',
                       bar_format=BAR_FORMAT, disable=not progress):
        phi = GroupHom.from_generators(source, target, gens, images)
        if phi is not None and phi.is_injective():
            yield phi


def _monomial(group: FiniteGroup, perm: Tuple[int, ...],
              units: Tuple[int, ...]) -> LambdaMatrix:
    zero = GroupRingElement.zero(group)
    entries = [[zero] * len(perm) for _ in perm]
    for j, (i, g) in enumerate(zip(perm, units)):
        entries[i][j] = GroupRingElement.basis(group, g)
    return LambdaMatrix(group, entries, len(perm), len(perm))


def _moved_columns(matrix: LambdaMatrix, cells, image, scale,
                   rows: int) -> LambdaMatrix:
    """Column π(j) is scale(g_j⁻¹)·image(column j) for cells (π, g)."""
    perm, units = cells
    columns: List[Any] = [None] * matrix.cols
    group = scale(0).group
    for j in range(matrix.cols):
        unit = scale(units[j])
        columns[perm[j]] = [unit * x for x in image(matrix.column(j))]
    return LambdaMatrix.from_columns(group, columns, rows)


def transport_complex(X: PDChainComplex, symmetry: PresentationSymmetry)\
        -> PDChainComplex:
    """
    The complex X^φ on the same cells with an isomorphism θ: X → X^φ over φ
    given by the symmetry in degrees 1 and 2 and the identity elsewhere.
    Its boundaries are θ d θ⁻¹, its orientation ω φ⁻¹ and its diagonal
    (θ ⊗ θ) Δ θ⁻¹; the fundamental cycle keeps its coordinates.
    """
    C, group, phi = X.complex, X.group, symmetry.phi
    cells = {k: symmetry.cells(k, C.rank(k)) for k in range(C.top + 1)}
    theta = {k: _monomial(group, *cells[k]) for k in cells}

    def scale(g: int) -> GroupRingElement:
        return GroupRingElement.basis(group, group.inv(g))

    boundaries = {}
    for k in range(1, C.top + 1):
        boundaries[k] = _moved_columns(
            C.boundary(k), cells[k],
            lambda column, k=k: apply_lambda(theta[k - 1], column, phi),
            scale, C.rank(k - 1))
    moved = ReducedComplex(group, C.ranks, boundaries, name=C.name)
    inverse = [0] * group.order
    for g in group.elements:
        inverse[phi(g)] = g
    omega = OrientationChar(group, [X.omega(inverse[g])
                                    for g in group.elements])
    diagonal = None
    if X.diagonal is not None:
        tensor = tensor_complexes(moved, moved)
        square = tensor_maps(ChainMap(C, moved, phi, theta),
                             ChainMap(C, moved, phi, theta),
                             X.diagonal.tensor, tensor)
        diag = diagonal_hom(group)

        def diagonal_scale(g: int) -> GroupRingElement:
            return GroupRingElement.basis(tensor.group, diag(group.inv(g)))

        components = {
            k: _moved_columns(X.diagonal.component(k), cells[k],
                              lambda column, k=k: square.apply(k, column),
                              diagonal_scale, tensor.rank(k))
            for k in cells}
        diagonal = diagonal_from_components(moved, components, tensor)
    logger.debug('Transported %s along %s', X.name, symmetry)
    return PDChainComplex(moved, omega, X.fundamental_cycle, diagonal)


def induced_class(T: FundamentalTriple, T2: FundamentalTriple,
                  phi: GroupHom) -> Tuple[int, ...]:
    """φ_∗t in H_n(T2) through a lift of T's resolution along φ."""
    n = T.formal_dim
    if n != 3:
        raise ValueError('Induced classes are computed for 3-dimensional'
                         ' triples only')
    if T2.omega.pullback(phi) != T.omega:
        raise ValueError('phi is not compatible with the orientations')
    lift = lift_to_resolution(T.resolution.truncate(n), T2.resolution, phi)
    pushed = matmul(twisted_matrix(lift.component(n), T2.omega),
                    T.cycle.reshape(-1, 1))[:, 0]
    return T2.homology.coordinates(pushed)


def find_isometry(F, G, bound: int = DEFAULT_FORM_BOUND)\
        -> Optional[np.ndarray]:
    """Unimodular P with entries in [−bound, bound] and PᵀFP = G."""
    F, G = as_int_matrix(F), as_int_matrix(G)
    r = F.shape[0]
    if G.shape != F.shape:
        return None
    if r == 0:
        return eye(0)
    vectors = [np.array(v, dtype=object)
               for v in product(range(-bound, bound + 1), repeat=r) if any(v)]
    images = [matmul(F, v.reshape(-1, 1))[:, 0] for v in vectors]
    identity = Lattice(eye(r), r)
    chosen: List[int] = []

    def search() -> Optional[np.ndarray]:
        i = len(chosen)
        if i == r:
            P = np.column_stack([vectors[k] for k in chosen])
            return P if Lattice(P, r) == identity else None
        for k, (v, Fv) in enumerate(zip(vectors, images)):
            if int(np.dot(v, Fv)) != G[i, i]:
                continue
            if any(int(np.dot(vectors[c], Fv)) != G[j, i]
                   for j, c in enumerate(chosen)):
                continue
            chosen.append(k)
            found = search()
            if found is not None:
                return found
            chosen.pop()
        return None

    return search()


def _forms_isomorphic(T: FundamentalTriple, T2: FundamentalTriple,
                      bound: int) -> Optional[TripleIsomorphism]:
    if T.form is None or T2.form is None:
        raise UndecidedError('Simply connected comparison needs the'
                             ' intersection forms of both complexes')
    if quadratic_form_invariants(T.form) != quadratic_form_invariants(T2.form):
        return None
    P = find_isometry(T.form, T2.form, bound)
    if P is None:
        raise UndecidedError(f'Forms of {T.name} and {T2.name} share their'
                             f' invariants but no isometry with entries'
                             f' bounded by {bound} was found')
    return TripleIsomorphism(GroupHom.identity(T.group), P)


def _same_presentation(M: Optional[PreCrossedModule],
                       M2: Optional[PreCrossedModule]) -> bool:
    return M is not None and M2 is not None and M.n_gens == M2.n_gens\
        and tuple(M.relators) == tuple(M2.relators)


def _two_types_isomorphic(T: FundamentalTriple, T2: FundamentalTriple,
                          max_candidates: int = None,
                          progress: bool = False)\
        -> Optional[TripleIsomorphism]:
    """
    Tries the isomorphisms φ induced by symmetries of the common
    pre-crossed data. X is carried along each symmetry and its class is
    recomputed inside the P(T) model of T2 whenever B matches.
    """
    M, X = T.meta.get('presentation'), T.meta.get('complex')
    if X is None or not _same_presentation(M, T2.meta.get('presentation')):
        raise UndecidedError('4-dimensional triples with nontrivial pi are'
                             ' compared only over equal presentations')
    collector = T2.pt.collector
    target = Lattice(T2.pt.b_basis, collector.dim)
    compared = 0
    for phi in group_isomorphisms(T.group, T2.group, max_candidates, progress):
        if T2.omega.pullback(phi) != T.omega:
            continue
        for symmetry in presentation_symmetries(M, collector.presentation,
                                                phi):
            moved = X if symmetry.is_identity()\
                else transport_complex(X, symmetry)
            if _b_lattice(moved.complex.boundary(3), collector.dim)\
                    != target:
                continue
            compared += 1
            if triple_pd4(moved, M, model=T2).t == T2.t:
                logger.info('Triples of %s and %s are isomorphic via %s',
                            T.name, T2.name, phi)
                return TripleIsomorphism(phi)
    if not compared:
        raise UndecidedError(f'No symmetry of the presentation carries B of'
                             f' {T.name} to B of {T2.name}')
    logger.info('Triples of %s and %s differ over all %d matching'
                ' symmetries', T.name, T2.name, compared)
    return None


def triples_isomorphic(T: FundamentalTriple, T2: FundamentalTriple,
                       bound_group_order: int = 24,
                       max_candidates: int = None,
                       form_bound: int = DEFAULT_FORM_BOUND,
                       progress: bool = False)\
        -> Optional[TripleIsomorphism]:
    """
    The first isomorphism φ with ω′φ = ω and φ_∗t = t′, or None. For
    n = 4 simply connected triples are compared through their forms and
    other 4-dimensional triples over a common presentation, through the
    isomorphisms induced by its symmetries.
    """
    if T.formal_dim != T2.formal_dim:
        raise ValueError(f'Formal dimensions {T.formal_dim} and'
                         f' {T2.formal_dim} differ')
    if T.group.order != T2.group.order:
        return None
    check_bound(T.group.order, bound_group_order, 'Group order')
    if T.formal_dim == 4:
        if T.group.order == 1:
            return _forms_isomorphic(T, T2, form_bound)
        return _two_types_isomorphic(T, T2, max_candidates, progress)
    for phi in group_isomorphisms(T.group, T2.group, max_candidates, progress):
        if T2.omega.pullback(phi) != T.omega:
            continue
        if induced_class(T, T2, phi) == T2.t:
            logger.info('Triples of %s and %s are isomorphic via %s', T.name,
                        T2.name, phi)
            return TripleIsomorphism(phi)
    logger.info('Triples of %s and %s are not isomorphic', T.name, T2.name)
    return None


def degree_one_exists(T_Y: FundamentalTriple, T_X: FundamentalTriple,
                      phi: GroupHom) -> bool:
    """φ surjective, ω_Y = ω_X φ and φ_∗t_Y = t_X."""
    if phi.source != T_Y.group or phi.target != T_X.group:
        raise ValueError('phi does not map the group of T_Y to that of T_X')
    if not phi.is_surjective() or T_X.omega.pullback(phi) != T_Y.omega:
        return False
    if T_X.formal_dim == 4:
        if T_X.homology.is_trivial():
            return True
        raise UndecidedError('Maps of 2-types are not constructed; degree one'
                             ' maps into a nontrivial H_4 are undecided')
    return induced_class(T_Y, T_X, phi) == T_X.t


@dataclass
class ObstructionTargets:
    h2: AbelianGroup
    gamma_coinvariants: AbelianGroup
    tensor_coinvariants: AbelianGroup
    exterior_coinvariants: AbelianGroup
    ker_h: AbelianGroup
    two_torsion: AbelianGroup
    odd_order: bool
    cocommutative: Optional[bool] = None

    @property
    def realization_certified(self) -> bool:
        return bool(self.cocommutative) and self.two_torsion.is_trivial()

    def to_dict(self) -> Dict[str, Any]:
        return {'h2': self.h2.to_dict(),
                'gamma_coinvariants': self.gamma_coinvariants.to_dict(),
                'tensor_coinvariants': self.tensor_coinvariants.to_dict(),
                'exterior_coinvariants': self.exterior_coinvariants.to_dict(),
                'ker_h': self.ker_h.to_dict(),
                'two_torsion': self.two_torsion.to_dict(),
                'odd_order': self.odd_order,
                'cocommutative': self.cocommutative,
                'realization_certified': self.realization_certified}


def h2_action(X: PDChainComplex) -> Tuple[AbelianGroup, FGAbelian,
                                          Dict[int, np.ndarray]]:
    """H₂ of the universal cover with the action matrices of the
    generators of π on its invariant-factor coordinates."""
    group = X.group
    H = X.complex.homology(2)
    A = FGAbelian.from_group(H)
    actions = {}
    for g in group.generators():
        matrix = zeros(A.rank, A.rank)
        for i in range(A.rank):
            matrix[:, i] = H.coordinates(
                left_translate(H.generators[:, i], g, group))
        actions[g] = A.check_homomorphism(A, matrix)
    return H, A, actions


def pd4_obstruction_targets(X: PDChainComplex,
                            check_diagonal: bool = True) -> ObstructionTargets:
    """
    H₀(π, Γ(H₂)^ω), H₀(π, (H₂⊗H₂)^ω) and H₀(π, (Λ²H₂)^ω), the kernel of
    the map induced by H on coinvariants (of exponent at most 2) and the
    2-torsion of the Λ² target.
    """
    if X.formal_dim != 4:
        raise ValueError(f'{X.name} has formal dimension {X.formal_dim},'
                         ' expected 4')
    group = X.group
    H, A, actions = h2_action(X)
    odd = group.order % 2 == 1
    cocommutative = None
    if check_diagonal and X.diagonal is not None:
        cocommutative = check_cocommutative(X.complex, X.diagonal) is not None
    if A.rank == 0:
        trivial = AbelianGroup(0)
        return ObstructionTargets(H, trivial, trivial, trivial, trivial,
                                  trivial, odd, cocommutative)
    G = GammaGroup(A)
    T = tensor_square(A)
    signs = [X.omega.sign(g) for g in actions]
    gamma_actions = [gamma_induced(f, A, A) for f in actions.values()]
    tensor_actions = [tensor_induced(f, A, A) for f in actions.values()]
    gamma_rel = hstack([G.group.relation_matrix()]
                       + [m - s * eye(G.dim)
                          for m, s in zip(gamma_actions, signs)], G.dim)
    tensor_rel = hstack([T.relation_matrix()]
                        + [m - s * eye(T.rank)
                           for m, s in zip(tensor_actions, signs)], T.rank)
    H_matrix = whitehead_H_matrix(G)
    gamma_coinv = AbelianGroup.from_relations(gamma_rel)
    tensor_coinv = AbelianGroup.from_relations(tensor_rel)
    exterior = twisted_coinvariants(
        hstack([T.relation_matrix(), H_matrix], T.rank), tensor_actions, signs)
    preimage = integer_kernel(hstack([H_matrix, -tensor_rel], T.rank))
    ker_h = subquotient(Lattice(preimage[:G.dim, :], G.dim), gamma_rel)
    assert ker_h.exponent() in (1, 2),\
        f'kernel of H on coinvariants is {ker_h}, not 2-torsion'
    two_torsion = AbelianGroup(0, [2] * exterior.two_rank())
    targets = ObstructionTargets(H, gamma_coinv, tensor_coinv, exterior, ker_h,
                                 two_torsion, odd, cocommutative)
    logger.info('Obstruction targets of %s: Lambda2 coinvariants %s, ker H %s',
                X.name, exterior, ker_h)
    return targets
