"""
Poincaré duality chain complexes: the dual complex, cap product with the
fundamental class, Wall's criterion, weakly standard structure and the
chain-level degree-one construction.

The dual complex D_j = Hom_Λ(C_{n−j}, Λ) is made a free left Λ-module
through the coordinates c_a = bar(ψ(e_a)). Its differential out of
Hom(C_k) is (−1)^{k+1} times the bar-transpose of d_{k+1}; with this sign
the cap product ψ ↦ Σ bar(ψ(x′))·x″ over Δ(x) = Σ x′ ⊗ x″ is a chain map.
"""
from dataclasses import dataclass, field
from logging import getLogger
from typing import Any, Dict, List, Optional, Sequence
import numpy as np
from pdcomplex.core.chain import (ChainMap, Diagonal, FreeComplex,
                                  ReducedComplex, is_chain_map, kill_homology)
from pdcomplex.core.groupring import (GroupHom, GroupRingElement,
                                      OrientationChar, bar)
from pdcomplex.core.linalg import (AbelianGroup, IntegerSolver, LambdaMatrix,
                                   Lattice, apply_lambda, as_int_vector,
                                   compose_lambda, eye, generates_ideal,
                                   hstack, homology_at, int_to_lambda_vector,
                                   integer_solve, lambda_to_int,
                                   lambda_vector_to_int, left_translate,
                                   matmul, solve_lambda, twisted_matrix, zeros)
from pdcomplex.core.pipeline import Check, CheckPipeline, CheckReport


logger = getLogger(__name__)


@dataclass
class PDChainComplex:
    complex: ReducedComplex
    omega: OrientationChar
    fundamental_cycle: np.ndarray
    diagonal: Optional[Diagonal] = None

    def __post_init__(self):
        self.fundamental_cycle = as_int_vector(self.fundamental_cycle)
        if len(self.fundamental_cycle) != self.complex.rank(self.formal_dim):
            raise ValueError(
                f'Fundamental cycle has {len(self.fundamental_cycle)}'
                f' coordinates, C_{self.formal_dim} has rank'
                f' {self.complex.rank(self.formal_dim)}')
        if self.omega.group != self.complex.group:
            raise ValueError('Orientation character lives over another group')

    @property
    def formal_dim(self) -> int:
        return self.complex.top

    @property
    def group(self):
        return self.complex.group

    @property
    def name(self) -> str:
        return self.complex.name

    def is_twisted_cycle(self) -> bool:
        d = self.complex.twisted_boundary(self.formal_dim, self.omega)
        return not np.count_nonzero(matmul(d, self.fundamental_cycle
                                           .reshape(-1, 1)))


@dataclass
class WeaklyStandardData:
    """
    C_n = C′_n ⊕ Λ[e] with e the basis element top_cell_index. For n = 3
    splitting lists Λ-generators of S in C₂ = S ⊕ d₃(C₃′).
    """
    top_cell_index: int
    subcomplex_ranks: List[int]
    splitting: Optional[List[List[GroupRingElement]]] = None

    @classmethod
    def standard(cls, C: FreeComplex, top_cell_index: int = 0,
                 splitting=None) -> 'WeaklyStandardData':
        ranks = list(C.ranks)
        ranks[-1] -= 1
        return cls(top_cell_index, ranks, splitting)


class DualComplex(FreeComplex):
    """C* regraded by j ↦ n − j; signs[j] multiplies the bar-transpose."""
    def __init__(self, X: PDChainComplex):
        C, n = X.complex, X.formal_dim
        group = C.group
        self.source = X
        self.signs: Dict[int, int] = {}
        boundaries = {}
        for j in range(1, n + 1):
            k = n - j
            d = C.boundary(k + 1)
            self.signs[j] = -1 if (k + 1) % 2 else 1
            entries = [[bar(d[a, b], X.omega) * self.signs[j]
                        for a in range(d.rows)] for b in range(d.cols)]
            boundaries[j] = LambdaMatrix(group, entries, d.cols, d.rows)
        super().__init__(group, [C.rank(n - j) for j in range(n + 1)],
                         boundaries, name=f'{C.name}*')


def dual_complex(X: PDChainComplex) -> DualComplex:
    return DualComplex(X)


def delta_of_cycle(X: PDChainComplex) -> List[GroupRingElement]:
    """Δ(x) for x = Σ z_a e_a, as a Λ[π×π]-vector on the tensor basis."""
    n = X.formal_dim
    component = X.diagonal.component(n)
    T = X.diagonal.tensor
    result = [GroupRingElement.zero(T.group)] * component.rows
    for a, z in enumerate(X.fundamental_cycle):
        if z:
            column = component.column(a)
            result = [acc + x * int(z) for acc, x in zip(result, column)]
    return result


def _cap_components(X: PDChainComplex) -> Dict[int, LambdaMatrix]:
    C, n, group = X.complex, X.formal_dim, X.group
    order = group.order
    T = X.diagonal.tensor
    entries = {j: [[GroupRingElement.zero(group)] * C.rank(n - j)
                   for _ in range(C.rank(j))] for j in range(n + 1)}
    for row, x in enumerate(delta_of_cycle(X)):
        if x.is_zero():
            continue
        k, a, b = T.decompose(n, row)
        j = n - k
        for pair, c in x.terms:
            g, h = divmod(pair, order)
            coeff = X.omega.sign(g) * c
            entries[j][b][a] = entries[j][b][a] + GroupRingElement(
                group, {group.mul(group.inv(g), h): coeff})
    return {j: LambdaMatrix(group, entries[j], C.rank(j), C.rank(n - j))
            for j in range(n + 1)}


def cap_chain_map(X: PDChainComplex, dual: DualComplex = None) -> ChainMap:
    """
    ∩ [C]: C* → C. Raises ValueError without a diagonal or a twisted
    fundamental cycle, and when the cap fails the chain-map equation.
    """
    if X.diagonal is None:
        raise ValueError(f'{X.name}: diagonal missing')
    if not X.is_twisted_cycle():
        raise ValueError(f'{X.name}: fundamental cycle is not a twisted cycle')
    dual = dual or dual_complex(X)
    C = X.complex
    components = _cap_components(X)
    for j in range(1, X.formal_dim + 1):
        lhs = compose_lambda(C.boundary(j), components[j])
        rhs = compose_lambda(components[j - 1], dual.boundary(j))
        if lhs == rhs:
            continue
        if lhs == -rhs:
            raise AssertionError(f'cap commutes with the dual differential'
                                 f' of degree {j} only up to the sign'
                                 f' {-dual.signs[j]}')
        raise ValueError(f'{X.name}: cap product is not a chain map in'
                         f' degree {j}')
    return ChainMap(dual, C, GroupHom.identity(X.group), components)


def _cone_boundary(dual: FreeComplex, C: FreeComplex, cap: ChainMap,
                   k: int) -> np.ndarray:
    n = C.group.order
    rows_d, rows_c = dual.rank(k - 2) * n, C.rank(k - 1) * n
    cols_d, cols_c = dual.rank(k - 1) * n, C.rank(k) * n
    block = zeros(rows_d + rows_c, cols_d + cols_c)
    if k >= 2 and rows_d and cols_d:
        block[:rows_d, :cols_d] = -dual.integer_boundary(k - 1)
    if k >= 1 and rows_c and cols_d:
        block[rows_d:, :cols_d] = lambda_to_int(cap.component(k - 1))
    if k >= 1 and rows_c and cols_c:
        block[rows_d:, cols_d:] = C.integer_boundary(k)
    return block


def cone_homology(cap: ChainMap) -> Dict[int, AbelianGroup]:
    """Homology of the mapping cone of cap over ℤ, degrees 0..n+1."""
    dual, C = cap.source, cap.target
    top = C.top + 1
    return {k: homology_at(_cone_boundary(dual, C, cap, k + 1),
                           _cone_boundary(dual, C, cap, k))
            for k in range(top + 1)}


def fundamental_class_candidates(C: FreeComplex, omega: OrientationChar,
                                 n: int = None) -> List[np.ndarray]:
    n = C.top if n is None else n
    H = C.twisted_homology(n, omega)
    if not H.is_infinite_cyclic():
        return []
    generator = H.generators[:, -1]
    return [generator, -generator]


def _fundamental_check(X: PDChainComplex) -> Check:
    n = X.formal_dim
    if not X.is_twisted_cycle():
        return Check('fundamental_cycle', False,
                     f'1⊗x is not a cycle in degree {n}', degree=n)
    H = X.complex.twisted_homology(n, X.omega)
    if not H.is_infinite_cyclic():
        return Check('fundamental_cycle', False,
                     f'H_{n}(C, Z^w) = {H} is not infinite cyclic', degree=n)
    coords = H.coordinates(X.fundamental_cycle)
    if abs(coords[-1]) != 1:
        return Check('fundamental_cycle', False,
                     f'1⊗x is {coords[-1]} times a generator', degree=n)
    return Check('fundamental_cycle', True, degree=n)


def verify_pd(X: PDChainComplex) -> CheckReport:
    """
    Wall's criterion on the chain level: H₁ = 0, a generating twisted
    fundamental cycle and a cap product whose mapping cone is acyclic.
    """
    cap, reason = None, ''
    try:
        cap = cap_chain_map(X)
    except ValueError as err:
        reason = str(err)

    def h1(subject: PDChainComplex) -> Check:
        H = subject.complex.homology(1)
        return Check('h1', H.is_trivial(), f'H_1 = {H}', degree=1)

    def cap_step(subject: PDChainComplex) -> Check:
        if cap is None:
            return Check('cap_chain_map', False, reason)
        return Check('cap_chain_map', True,
                     data={'signs': {str(j): s for j, s in
                                     cap.source.signs.items()}})

    def cone(subject: PDChainComplex) -> Check:
        if cap is None:
            return Check('cone', False, 'cap product unavailable')
        for k, H in cone_homology(cap).items():
            if not H.is_trivial():
                return Check('cone', False, f'cone homology {H}', degree=k)
        return Check('cone', True)

    pipeline = CheckPipeline(('h1', h1),
                             ('fundamental_cycle', _fundamental_check),
                             ('cap_chain_map', cap_step),
                             ('cone', cone))
    report = pipeline.run(X, X.name or 'complex')
    logger.info('PD verification of %s: %s', X.name,
                'pass' if report.passed else report.first_failure().name)
    return report


def poincare_duality_table(X: PDChainComplex) -> List[Dict[str, Any]]:
    """H^r(C, Λ) next to H_{n−r}(C, Λ^ω) for every r."""
    n = X.formal_dim
    dual = dual_complex(X)
    rows = []
    for r in range(n + 1):
        cohomology = dual.homology(n - r)
        homology = X.complex.homology(n - r)
        rows.append({'r': r, 'cohomology': cohomology, 'homology': homology,
                     'match': cohomology == homology})
    return rows


def check_weakly_standard(X: PDChainComplex,
                          W: WeaklyStandardData) -> CheckReport:
    C, n = X.complex, X.formal_dim
    if not 0 <= W.top_cell_index < C.rank(n):
        raise ValueError(f'Top cell index {W.top_cell_index} outside C_{n}')
    d_top = C.boundary(n).column(W.top_cell_index)

    def ranks(subject: PDChainComplex) -> Check:
        expected = list(C.ranks)
        expected[-1] -= 1
        return Check('subcomplex', list(W.subcomplex_ranks) == expected,
                     f'{list(W.subcomplex_ranks)} vs {expected}')

    def top_cell(subject: PDChainComplex) -> Check:
        unit = np.zeros(C.rank(n), dtype=object)
        unit[W.top_cell_index] = 1
        d = C.twisted_boundary(n, X.omega)
        if np.count_nonzero(matmul(d, unit.reshape(-1, 1))):
            return Check('top_cell', False, '1⊗[e] is not a cycle', degree=n)
        H = C.twisted_homology(n, X.omega)
        try:
            same = H.coordinates(unit) == H.coordinates(X.fundamental_cycle)
        except ValueError as err:
            return Check('top_cell', False, str(err), degree=n)
        return Check('top_cell', same, '' if same else
                     '1⊗[e] does not represent [C]', degree=n)

    def ideal(subject: PDChainComplex) -> Check:
        ok = generates_ideal(d_top, X.omega)
        return Check('generates_ideal', ok, '' if ok else
                     'coefficients of d[e] generate a proper submodule',
                     degree=n)

    steps = [('subcomplex', ranks), ('top_cell', top_cell),
             ('generates_ideal', ideal)]
    if n == 3 and W.splitting is not None:
        def splitting(subject: PDChainComplex) -> Check:
            try:
                projection = build_weakly_standard_splitting(X, W)
            except ValueError as err:
                return Check('splitting', False, str(err), degree=2)
            vec = lambda_vector_to_int(d_top, X.group)
            projected = matmul(projection, vec.reshape(-1, 1))[:, 0]
            inside = not np.count_nonzero(projected - vec)
            return Check('splitting', inside, '' if inside else
                         'd3[e] does not lie in S', degree=2)
        steps.append(('splitting', splitting))
    return CheckPipeline(*steps).run(X, X.name or 'complex')


def _translates(vectors: Sequence[np.ndarray], group, dim: int) -> Lattice:
    spanning = [left_translate(v, g, group).reshape(-1, 1)
                for v in vectors for g in group.elements]
    return Lattice(hstack(spanning, dim) if spanning else zeros(dim, 0), dim)


def build_weakly_standard_splitting(X: PDChainComplex,
                                    W: WeaklyStandardData) -> np.ndarray:
    """
    Integer matrix of the projection of C₂ onto S along d₃(C₃′). Raises
    ValueError when S and d₃(C₃′) do not split C₂.
    """
    C, group = X.complex, X.group
    dim = C.rank(2) * group.order
    S = _translates([lambda_vector_to_int(v, group)
                     for v in (W.splitting or [])], group, dim)
    d3 = C.boundary(3)
    others = [lambda_vector_to_int(d3.column(j), group)
              for j in range(d3.cols) if j != W.top_cell_index]
    D = _translates(others, group, dim)
    if S.rank + D.rank != dim:
        raise ValueError(f'S has rank {S.rank} and d3(C3\') rank {D.rank}'
                         f' in a lattice of rank {dim}')
    basis = hstack([S.basis, D.basis], dim)
    inverse = IntegerSolver(basis).solve(eye(dim))
    if inverse is None:
        raise ValueError('S + d3(C3\') is a proper sublattice of C2')
    keep = zeros(dim, dim)
    for i in range(S.rank):
        keep[i, i] = 1
    return matmul(matmul(basis, keep), inverse)


def degree_of_map(f: ChainMap, X: PDChainComplex, Y: PDChainComplex) -> int:
    """d with f_∗[X] = d·[Y] in H_n(Y, ℤ^ω)."""
    n = X.formal_dim
    if Y.formal_dim != n:
        raise ValueError(f'Formal dimensions {n} and {Y.formal_dim} differ')
    if Y.omega.pullback(f.phi) != X.omega:
        raise ValueError('Orientation characters are not compatible with the'
                         ' homomorphism')
    H = Y.complex.twisted_homology(n, Y.omega)
    if not H.is_infinite_cyclic():
        raise ValueError(f'H_{n}(Y, Z^w) = {H} is not infinite cyclic')
    image = matmul(twisted_matrix(f.component(n), Y.omega),
                   X.fundamental_cycle.reshape(-1, 1))[:, 0]
    unit = H.coordinates(Y.fundamental_cycle)[-1]
    return int(H.coordinates(image)[-1] * unit)


@dataclass
class DegreeOneResult:
    chain_map: Optional[ChainMap]
    failed_step: Optional[str] = None
    detail: str = ''
    witnesses: Dict[str, Any] = field(default_factory=dict)

    @property
    def succeeded(self) -> bool:
        return self.chain_map is not None


def _satisfies(dX: LambdaMatrix, xi: LambdaMatrix, below: LambdaMatrix,
               dY: LambdaMatrix, phi: GroupHom) -> bool:
    return compose_lambda(dX, xi) == compose_lambda(below, dY, phi)


def _solve_columns(d: LambdaMatrix, below: LambdaMatrix, dY: LambdaMatrix,
                   phi: GroupHom, columns: Sequence[int])\
        -> Optional[List[List[GroupRingElement]]]:
    result = []
    for j in columns:
        rhs = apply_lambda(below, dY.column(j), phi)
        x = solve_lambda(d, rhs)
        if x is None:
            return None
        result.append(x)
    return result


def _without_column(d: LambdaMatrix, skip: int) -> LambdaMatrix:
    return LambdaMatrix.from_columns(
        d.group, [d.column(j) for j in range(d.cols) if j != skip], d.rows)


def construct_degree_one(Y: PDChainComplex, X: PDChainComplex, phi: GroupHom,
                         lower_map: ChainMap,
                         W_Y: WeaklyStandardData = None,
                         W_X: WeaklyStandardData = None,
                         model: FreeComplex = None) -> DegreeOneResult:
    """
    A degree one chain map ξ: Ĉ(Y) → Ĉ(X) over φ extending lower_map in
    degrees ≤ n − 2, with ξ[e′] = [e].

    The pushed top cell g(e′) of Y is compared with [e] in a model P of
    the (n−2)-type (X with H_n of the universal cover killed unless given).
    Their difference is split as dx + y with y ∈ Ī·C_nP, y is written as
    Σ φ(a_m) z_m for the coefficients a_m of d[e′], and ξ_{n−1} is lower
    plus d∘ᾱ with ᾱ(e′_m) = −z_m, precomposed with the projection onto S
    when Y carries a splitting. On failure the result names the step.
    """
    n = X.formal_dim
    C_Y, C_X = Y.complex, X.complex
    if Y.formal_dim != n or n < 3:
        raise ValueError(f'Degree one maps need equal formal dimensions'
                         f' n >= 3, got {Y.formal_dim} and {n}')
    W_Y = W_Y or WeaklyStandardData.standard(C_Y)
    W_X = W_X or WeaklyStandardData.standard(C_X)

    def failure(step: str, detail: str) -> DegreeOneResult:
        logger.info('Degree one construction %s -> %s stops at %s: %s',
                    Y.name, X.name, step, detail)
        return DegreeOneResult(None, step, detail)

    if X.omega.pullback(phi) != Y.omega:
        return failure('orientation', 'w_Y differs from w_X composed with phi')
    if not phi.is_surjective():
        return failure('surjective', 'phi is not surjective')
    for label, Z, W in (('Y', Y, W_Y), ('X', X, W_X)):
        report = check_weakly_standard(Z, W)
        if not report.passed:
            return failure('weakly_standard',
                           f'{label}: {report.first_failure().name}')

    comps: Dict[int, LambdaMatrix] = {}
    for k in range(n - 1):
        comps[k] = lower_map.component(k)
        if k and not _satisfies(C_X.boundary(k), comps[k], comps[k - 1],
                                C_Y.boundary(k), phi):
            return failure('lower_map', f'not a chain map in degree {k}')

    k = n - 1
    candidate = lower_map.component(k)
    if not _satisfies(C_X.boundary(k), candidate, comps[k - 1],
                      C_Y.boundary(k), phi):
        columns = _solve_columns(C_X.boundary(k), comps[k - 1],
                                 C_Y.boundary(k), phi, range(C_Y.rank(k)))
        if columns is None:
            return failure('lower_extension', f'no extension in degree {k}')
        candidate = LambdaMatrix.from_columns(X.group, columns, C_X.rank(k))
    eta = candidate

    e_Y, e_X = W_Y.top_cell_index, W_X.top_cell_index
    others = [j for j in range(C_Y.rank(n)) if j != e_Y]
    dX_prime = _without_column(C_X.boundary(n), e_X)
    top_columns = {}
    if others:
        solved = _solve_columns(dX_prime, eta, C_Y.boundary(n), phi, others)
        if solved is None:
            return failure('lower_extension', f'no extension of C_{n}Y\'')
        zero = GroupRingElement.zero(X.group)
        for j, col in zip(others, solved):
            col = list(col)
            col.insert(e_X, zero)
            top_columns[j] = col
    unit_e = [GroupRingElement.zero(X.group)] * C_X.rank(n)
    unit_e[e_X] = GroupRingElement.one(X.group)
    top_columns[e_Y] = unit_e

    pushed = apply_lambda(eta, C_Y.boundary(n).column(e_Y), phi)
    witnesses: Dict[str, Any] = {}
    if pushed != C_X.boundary(n).column(e_X):
        P = model or kill_homology(C_X, n, n + 1)
        for j in range(1, n + 1):
            if P.boundary(j) != C_X.boundary(j):
                raise ValueError(f'Model differs from X in degree {j}')
        g_top = solve_lambda(P.boundary(n), pushed)
        if g_top is None:
            return failure('push_top_cell', 'g(e\') has no preimage in P')
        group, order = X.group, X.group.order
        dim = P.rank(n) * order
        delta = lambda_vector_to_int(g_top, group)\
            - lambda_vector_to_int(unit_e, group)
        ideal = zeros(dim, P.rank(n) * (order - 1))
        for b in range(P.rank(n)):
            for g in range(1, order):
                col = b * (order - 1) + g - 1
                ideal[b * order + g, col] = 1
                ideal[b * order, col] = -X.omega.sign(g)
        d_next = lambda_to_int(P.boundary(n + 1))
        solution = integer_solve(hstack([d_next, ideal], dim), delta)
        if solution is None:
            return failure('decompose', 'g(e\') - [e] is not dx + y with y in'
                           ' Ibar C_n; the fundamental triples differ')
        x_part = solution[:d_next.shape[1]]
        y = matmul(ideal, solution[d_next.shape[1]:].reshape(-1, 1))[:, 0]
        coefficients = [a.push(phi) for a in C_Y.boundary(n).column(e_Y)]
        row = LambdaMatrix(group, [coefficients], 1, len(coefficients))
        y_vec = int_to_lambda_vector(y, group)
        z = []
        for i in range(P.rank(n)):
            solved = solve_lambda(row, [y_vec[i]], side='right')
            if solved is None:
                return failure('ideal_solve', f'y_{i} is not in the right'
                               ' ideal generated by the phi(a_m)')
            z.append(solved)
        alpha = LambdaMatrix(group, [[-z[i][m] for m in
                                      range(len(coefficients))]
                                     for i in range(P.rank(n))],
                             P.rank(n), len(coefficients))
        effective = alpha
        if n == 3 and W_Y.splitting is not None:
            projection = build_weakly_standard_splitting(Y, W_Y)
            columns = []
            for j in range(C_Y.rank(2)):
                unit = np.zeros(C_Y.rank(2) * Y.group.order, dtype=object)
                unit[j * Y.group.order] = 1
                columns.append(int_to_lambda_vector(
                    matmul(projection, unit.reshape(-1, 1))[:, 0], Y.group))
            pi_S = LambdaMatrix.from_columns(Y.group, columns, C_Y.rank(2))
            effective = compose_lambda(alpha, pi_S, phi)
        eta = eta + compose_lambda(P.boundary(n), effective)
        # the other top cells follow the corrected ξ_{n−1}
        for j in others:
            shift = apply_lambda(effective, C_Y.boundary(n).column(j), phi)
            top_columns[j] = [a + b for a, b in zip(top_columns[j], shift)]
        witnesses = {'x': int_to_lambda_vector(x_part, group), 'y': y_vec,
                     'alpha': alpha}
    comps[n - 1] = eta
    comps[n] = LambdaMatrix.from_columns(
        X.group, [top_columns[j] for j in range(C_Y.rank(n))], C_X.rank(n))
    xi = ChainMap(C_Y, C_X, phi, comps)
    if not is_chain_map(xi):
        return failure('chain_map', 'xi fails the chain map equation')
    degree = degree_of_map(xi, Y, X)
    assert degree == 1, f'constructed map has degree {degree}'
    logger.info('Degree one map %s -> %s constructed', Y.name, X.name)
    return DegreeOneResult(xi, witnesses=witnesses)
