"""
Exact integer linear algebra and its Λ-linear front end.

Integer matrices are numpy arrays of dtype object holding Python integers,
so no intermediate result can overflow. Vectors are column vectors and a
matrix acts by y = A·x.

Λ-matrices follow the convention d(e_j) = Σ_i D[i, j]·e_i with coefficients
on the left of the entries: a coefficient vector c is sent to
(Σ_j c_j·D[i, j])_i. The ℤ-coordinates of a Λ-vector (c_0, .., c_{k-1}) are
indexed j·|π| + g.
"""
from dataclasses import dataclass
from logging import getLogger
from typing import Callable, List, Optional, Sequence, Tuple
import numpy as np
from pdcomplex.core.groupring import (FiniteGroup, GroupHom, GroupRingElement,
                                      OrientationChar, twisted_int)


logger = getLogger(__name__)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def eye(n: int) -> np.ndarray:
    mat = zeros(n, n)
    for i in range(n):
        mat[i, i] = 1
    return mat


def as_int_matrix(data, rows: int = None, cols: int = None) -> np.ndarray:
    """Copies data into an object matrix of Python integers."""
    if isinstance(data, np.ndarray):
        mat = data
    else:
        data = list(data)
        if not data:
            return zeros(rows or 0, cols or 0)
        mat = np.array([[int(x) for x in row] for row in data], dtype=object)
    if mat.ndim == 1:
        mat = mat.reshape(-1, 1)
    result = zeros(*mat.shape)
    for (i, j), x in np.ndenumerate(mat):
        result[i, j] = int(x)
    return result


def as_int_vector(data) -> np.ndarray:
    vec = np.zeros(len(data), dtype=object)
    for i, x in enumerate(data):
        vec[i] = int(x)
    return vec


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f'Shape mismatch {a.shape} @ {b.shape}')
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1] if b.ndim == 2 else 1)\
            if b.ndim == 2 else np.zeros(a.shape[0], dtype=object)
    return a.dot(b)


def is_zero(a: np.ndarray) -> bool:
    return a.size == 0 or np.count_nonzero(a) == 0


def hstack(blocks: Sequence[np.ndarray], rows: int) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return zeros(rows, 0)
    return np.concatenate(blocks, axis=1)


def vstack(blocks: Sequence[np.ndarray], cols: int) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return zeros(0, cols)
    return np.concatenate(blocks, axis=0)


@dataclass(frozen=True)
class SmithForm:
    """U·A·V = D with U, V unimodular; U_inv and V_inv are their inverses."""
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray
    rank: int

    @property
    def diagonal(self) -> List[int]:
        return [self.D[i, i] for i in range(self.rank)]


class _SmithWorkspace:
    def __init__(self, matrix: np.ndarray):
        self.D = as_int_matrix(matrix)
        m, n = self.D.shape
        self.U, self.U_inv = eye(m), eye(m)
        self.V, self.V_inv = eye(n), eye(n)

    def swap_rows(self, a: int, b: int) -> None:
        if a == b:
            return
        for mat in (self.D, self.U):
            mat[[a, b], :] = mat[[b, a], :]
        self.U_inv[:, [a, b]] = self.U_inv[:, [b, a]]

    def swap_cols(self, a: int, b: int) -> None:
        if a == b:
            return
        for mat in (self.D, self.V):
            mat[:, [a, b]] = mat[:, [b, a]]
        self.V_inv[[a, b], :] = self.V_inv[[b, a], :]

    def add_rows(self, rows: np.ndarray, src: int, coeffs: np.ndarray) -> None:
        """row_i += c_i·row_src for each i in rows."""
        for mat in (self.D, self.U):
            mat[rows, :] = mat[rows, :] + np.outer(coeffs, mat[src, :])
        self.U_inv[:, src] = self.U_inv[:, src]\
            - self.U_inv[:, rows].dot(coeffs)

    def add_cols(self, cols: np.ndarray, src: int, coeffs: np.ndarray) -> None:
        """col_j += c_j·col_src for each j in cols."""
        for mat in (self.D, self.V):
            mat[:, cols] = mat[:, cols] + np.outer(mat[:, src], coeffs)
        self.V_inv[src, :] = self.V_inv[src, :]\
            - coeffs.dot(self.V_inv[cols, :])

    def negate_row(self, t: int) -> None:
        self.D[t, :] = -self.D[t, :]
        self.U[t, :] = -self.U[t, :]
        self.U_inv[:, t] = -self.U_inv[:, t]

    def pick_pivot(self, t: int) -> Tuple[int, int]:
        best = None
        for i in t + np.flatnonzero(self.D[t:, t]):
            value = abs(self.D[i, t])
            if best is None or value < best[0]:
                best = (value, i, t)
                if value == 1:
                    return i, t
        for j in t + 1 + np.flatnonzero(self.D[t, t + 1:]):
            value = abs(self.D[t, j])
            if value < best[0]:
                best = (value, t, j)
                if value == 1:
                    return t, j
        return best[1], best[2]

    def reduce(self) -> int:
        D = self.D
        m, n = D.shape
        t = 0
        while t < min(m, n):
            nonzero_cols = np.flatnonzero(np.count_nonzero(D[t:, t:], axis=0))
            if not len(nonzero_cols):
                break
            self.swap_cols(t, t + int(nonzero_cols[0]))
            while True:
                i, j = self.pick_pivot(t)
                self.swap_cols(t, j)
                self.swap_rows(t, i)
                pivot = D[t, t]
                rows = t + 1 + np.flatnonzero(D[t + 1:, t])
                if len(rows):
                    self.add_rows(rows, t, -(D[rows, t] // pivot))
                cols = t + 1 + np.flatnonzero(D[t, t + 1:])
                if len(cols):
                    self.add_cols(cols, t, -(D[t, cols] // pivot))
                if np.count_nonzero(D[t + 1:, t])\
                        or np.count_nonzero(D[t, t + 1:]):
                    continue
                if abs(pivot) != 1 and D[t + 1:, t + 1:].size:
                    bad = np.argwhere((D[t + 1:, t + 1:] % pivot) != 0)
                    if len(bad):
                        row = t + 1 + int(bad[0][0])
                        self.add_rows(np.array([t]), row,
                                      np.array([1], dtype=object))
                        continue
                break
            if D[t, t] < 0:
                self.negate_row(t)
            t += 1
        return t


def smith_decomposition(matrix) -> SmithForm:
    work = _SmithWorkspace(matrix)
    if work.D.size > 10000:
        logger.debug('Smith normal form of a %s matrix', work.D.shape)
    rank = work.reduce()
    return SmithForm(work.U, work.D, work.V, work.U_inv, work.V_inv, rank)


def smith_normal_form(matrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Returns (U, D, V) with U·A·V = D, U and V unimodular and D diagonal
    with d_1 | d_2 | ... . Pivots of minimal absolute value are chosen in
    the active row and column, stopping early at ±1.
    """
    snf = smith_decomposition(matrix)
    return snf.U, snf.D, snf.V


class IntegerSolver:
    """Solves A·x = b over ℤ for many right-hand sides with one SNF."""
    def __init__(self, matrix):
        self._snf = smith_decomposition(matrix)
        self._shape = self._snf.D.shape

    @property
    def shape(self) -> Tuple[int, int]:
        return self._shape

    @property
    def rank(self) -> int:
        return self._snf.rank

    def kernel(self) -> np.ndarray:
        return self._snf.V[:, self._snf.rank:]

    def solve(self, rhs) -> Optional[np.ndarray]:
        rhs = np.asarray(rhs, dtype=object)
        single = rhs.ndim == 1
        if single:
            rhs = rhs.reshape(-1, 1)
        m, n = self._shape
        if rhs.shape[0] != m:
            raise ValueError(f'Right-hand side has {rhs.shape[0]} rows,'
                             f' expected {m}')
        rank = self._snf.rank
        y = matmul(self._snf.U, rhs)
        if not is_zero(y[rank:, :]):
            return None
        z = zeros(n, rhs.shape[1])
        for i, d in enumerate(self._snf.diagonal):
            if np.count_nonzero(y[i, :] % d):
                return None
            z[i, :] = y[i, :] // d
        x = matmul(self._snf.V, z)
        return x[:, 0] if single else x


def integer_solve(matrix, rhs) -> Optional[np.ndarray]:
    return IntegerSolver(matrix).solve(rhs)


def integer_kernel(matrix) -> np.ndarray:
    """Columns form a ℤ-basis of {x : A·x = 0}."""
    return IntegerSolver(matrix).kernel()


class AbelianGroup:
    """
    Finitely generated abelian group ℤ^free_rank ⊕ ⊕ ℤ/d_i with invariant
    factors d_1 | d_2 | ... (each ≥ 2). When the group was computed from an
    ambient lattice it also carries generators (torsion generators first)
    and a coordinate map sending an ambient representative to its class.
    """
    def __init__(self, free_rank: int, torsion: Sequence[int] = (),
                 generators: Optional[np.ndarray] = None,
                 coordinate_map: Optional[Callable] = None):
        torsion = tuple(int(d) for d in torsion)
        if any(d < 2 for d in torsion):
            raise ValueError(f'Torsion coefficients must be at least 2,'
                             f' got {torsion}')
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f'Torsion {torsion} is not a divisibility chain')
        self.free_rank = int(free_rank)
        self.torsion = torsion
        self.generators = generators
        self._coordinate_map = coordinate_map

    @classmethod
    def from_relations(cls, relations: np.ndarray,
                       basis: Optional[np.ndarray] = None,
                       to_local: Optional[Callable] = None)\
            -> 'AbelianGroup':
        """
        ℤ^a / (column span of relations). basis (ambient × a) embeds the
        local lattice into an ambient one, to_local maps ambient vectors
        back to local coordinates.
        """
        relations = as_int_matrix(relations)
        snf = smith_decomposition(relations)
        a = relations.shape[0]
        diag = snf.diagonal
        torsion_idx = [i for i, d in enumerate(diag) if d >= 2]
        selected = torsion_idx + list(range(snf.rank, a))
        moduli = [diag[i] for i in torsion_idx]
        local_gens = snf.U_inv[:, selected]
        generators = matmul(basis, local_gens) if basis is not None\
            else local_gens

        def coordinates(vec) -> Tuple[int, ...]:
            local = to_local(vec) if to_local else as_int_vector(vec)
            y = matmul(snf.U, local.reshape(-1, 1))[:, 0]
            torsion_part = tuple(int(y[i] % d)
                                 for i, d in zip(torsion_idx, moduli))
            return torsion_part + tuple(int(y[i]) for i in range(snf.rank, a))

        return cls(a - snf.rank, moduli, generators, coordinates)

    def coordinates(self, vec) -> Tuple[int, ...]:
        """Class of an ambient representative: torsion residues, then free."""
        if self._coordinate_map is None:
            raise ValueError('Group carries no ambient coordinates')
        return self._coordinate_map(vec)

    def reduce(self, coords: Sequence[int]) -> Tuple[int, ...]:
        k = len(self.torsion)
        return tuple(int(c) % d for c, d in zip(coords[:k], self.torsion))\
            + tuple(int(c) for c in coords[k:])

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_infinite_cyclic(self) -> bool:
        return self.free_rank == 1 and not self.torsion

    def order(self) -> int:
        """0 for infinite groups."""
        if self.free_rank:
            return 0
        return int(np.prod(self.torsion, dtype=object)) if self.torsion else 1

    def exponent(self) -> int:
        """0 for infinite groups, otherwise the largest invariant factor."""
        if self.free_rank:
            return 0
        return self.torsion[-1] if self.torsion else 1

    def two_rank(self) -> int:
        return sum(1 for d in self.torsion if d % 2 == 0)

    def to_dict(self):
        return {'free_rank': self.free_rank, 'torsion': list(self.torsion)}

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianGroup)\
            and self.free_rank == other.free_rank\
            and self.torsion == other.torsion

    def __hash__(self) -> int:
        return hash((self.free_rank, self.torsion))

    def __repr__(self) -> str:
        parts = [f'Z/{d}' for d in self.torsion]
        if self.free_rank:
            parts.append('Z' if self.free_rank == 1 else f'Z^{self.free_rank}')
        return ' + '.join(parts) if parts else '0'


def presented_group(relations) -> AbelianGroup:
    return AbelianGroup.from_relations(relations)


class Lattice:
    """Subgroup of ℤ^dim spanned by the columns of a matrix."""
    def __init__(self, spanning, dim: int = None):
        spanning = as_int_matrix(spanning)
        if spanning.shape[0] == 0 and dim:
            spanning = zeros(dim, 0)
        self.dim = spanning.shape[0]
        snf = smith_decomposition(spanning)
        self._U = snf.U
        self._diag = snf.diagonal
        self.rank = snf.rank
        self.basis = zeros(self.dim, self.rank)
        for i, d in enumerate(self._diag):
            self.basis[:, i] = snf.U_inv[:, i] * d

    def coordinates(self, vec) -> Optional[np.ndarray]:
        """Coordinates in self.basis, or None outside the lattice."""
        y = matmul(self._U, as_int_vector(vec).reshape(-1, 1))[:, 0]
        if np.count_nonzero(y[self.rank:]):
            return None
        coords = np.zeros(self.rank, dtype=object)
        for i, d in enumerate(self._diag):
            if y[i] % d:
                return None
            coords[i] = y[i] // d
        return coords

    def contains(self, vec) -> bool:
        return self.coordinates(vec) is not None

    def contains_lattice(self, other: 'Lattice') -> bool:
        return all(self.contains(other.basis[:, i]) for i in range(other.rank))

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.dim == other.dim\
            and self.rank == other.rank and self.contains_lattice(other)\
            and other.contains_lattice(self)

    def __hash__(self) -> int:
        return hash((self.dim, self.rank))


def subquotient(numerator: Lattice, denominator) -> AbelianGroup:
    """numerator / (span of denominator columns); the span must lie inside."""
    denominator = as_int_matrix(denominator)
    relations = zeros(numerator.rank, denominator.shape[1])
    for j in range(denominator.shape[1]):
        coords = numerator.coordinates(denominator[:, j])
        if coords is None:
            raise ValueError('Denominator is not contained in the numerator')
        relations[:, j] = coords

    def to_local(vec) -> np.ndarray:
        coords = numerator.coordinates(vec)
        if coords is None:
            raise ValueError('Vector does not lie in the numerator lattice')
        return coords

    return AbelianGroup.from_relations(relations, numerator.basis, to_local)


def homology_at(d_in, d_out) -> AbelianGroup:
    """ker(d_out) / im(d_in) with cycle generators and class coordinates."""
    d_in, d_out = as_int_matrix(d_in), as_int_matrix(d_out)
    if d_in.shape[0] != d_out.shape[1]:
        raise ValueError(f'Boundary shapes {d_out.shape} and {d_in.shape}'
                         ' are not composable')
    if not is_zero(matmul(d_out, d_in)):
        raise ValueError('Composition of boundaries is nonzero')
    snf = smith_decomposition(d_out)
    rank = snf.rank
    cycles = snf.V[:, rank:]
    to_cycle_coords = snf.V_inv[rank:, :]
    constraint = snf.V_inv[:rank, :]
    relations = matmul(to_cycle_coords, d_in)

    def to_local(vec) -> np.ndarray:
        vec = as_int_vector(vec).reshape(-1, 1)
        if not is_zero(matmul(constraint, vec)):
            raise ValueError('Vector is not a cycle')
        return matmul(to_cycle_coords, vec)[:, 0]

    return AbelianGroup.from_relations(relations, cycles, to_local)


class LambdaMatrix:
    """Matrix over Λ = ℤ[π]; entry [i, j] is the e_i coefficient of d(e_j)."""
    __slots__ = ('group', 'rows', 'cols', '_entries')

    def __init__(self, group: FiniteGroup,
                 entries: Sequence[Sequence[GroupRingElement]],
                 rows: int = None, cols: int = None):
        entries = [list(row) for row in entries]
        self.group = group
        self.rows = len(entries) if rows is None else rows
        self.cols = (len(entries[0]) if entries else 0) if cols is None\
            else cols
        if len(entries) != self.rows\
                or any(len(row) != self.cols for row in entries):
            raise ValueError(f'Entries do not form a {self.rows}x{self.cols}'
                             ' matrix')
        for row in entries:
            for x in row:
                if x.group is not group and x.group != group:
                    raise ValueError('Matrix entry lives over another group')
        self._entries = tuple(tuple(row) for row in entries)

    @classmethod
    def zeros(cls, group: FiniteGroup, rows: int, cols: int) -> 'LambdaMatrix':
        zero = GroupRingElement.zero(group)
        return cls(group, [[zero] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, group: FiniteGroup, n: int) -> 'LambdaMatrix':
        zero, one = GroupRingElement.zero(group), GroupRingElement.one(group)
        return cls(group, [[one if i == j else zero for j in range(n)]
                           for i in range(n)], n, n)

    @classmethod
    def from_int(cls, group: FiniteGroup, matrix) -> 'LambdaMatrix':
        """Integer matrix with every entry placed at the identity."""
        matrix = as_int_matrix(matrix)
        return cls(group, [[GroupRingElement(group, {0: x}) for x in row]
                           for row in matrix], *matrix.shape)

    @classmethod
    def from_columns(cls, group: FiniteGroup,
                     columns: Sequence[Sequence[GroupRingElement]],
                     rows: int) -> 'LambdaMatrix':
        return cls(group, [[col[i] for col in columns] for i in range(rows)],
                   rows, len(columns))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> GroupRingElement:
        i, j = index
        return self._entries[i][j]

    def row(self, i: int) -> List[GroupRingElement]:
        return list(self._entries[i])

    def column(self, j: int) -> List[GroupRingElement]:
        return [row[j] for row in self._entries]

    def entries(self) -> List[List[GroupRingElement]]:
        return [list(row) for row in self._entries]

    def _zip(self, other: 'LambdaMatrix', op) -> 'LambdaMatrix':
        if self.shape != other.shape:
            raise ValueError(f'Shape mismatch {self.shape} vs {other.shape}')
        return LambdaMatrix(self.group, [[op(a, b) for a, b in zip(r, s)]
                                         for r, s in zip(self._entries,
                                                         other._entries)],
                            self.rows, self.cols)

    def __add__(self, other: 'LambdaMatrix') -> 'LambdaMatrix':
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: 'LambdaMatrix') -> 'LambdaMatrix':
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> 'LambdaMatrix':
        return self.scale(-1)

    def scale(self, k: int) -> 'LambdaMatrix':
        return LambdaMatrix(self.group, [[x * k for x in row]
                                         for row in self._entries],
                            self.rows, self.cols)

    def push(self, phi: GroupHom) -> 'LambdaMatrix':
        return LambdaMatrix(phi.target, [[x.push(phi) for x in row]
                                         for row in self._entries],
                            self.rows, self.cols)

    def __matmul__(self, other: 'LambdaMatrix') -> 'LambdaMatrix':
        """self ∘ other."""
        return compose_lambda(self, other)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self._entries for x in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, LambdaMatrix) and self.shape == other.shape\
            and self.group == other.group and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f'LambdaMatrix({self.rows}x{self.cols} over {self.group.name})'


def compose_lambda(outer: LambdaMatrix, inner: LambdaMatrix,
                   phi: GroupHom = None) -> LambdaMatrix:
    """
    outer ∘ inner where inner lives over the source of φ and outer over its
    target: (outer ∘ inner)[k, j] = Σ_i φ(inner[i, j])·outer[k, i].
    """
    if outer.cols != inner.rows:
        raise ValueError(f'Cannot compose {outer.shape} with {inner.shape}')
    group = outer.group
    if phi is None and inner.group != group:
        raise ValueError('Composing matrices over different groups needs a'
                         ' homomorphism')
    pushed = inner if phi is None else inner.push(phi)
    zero = GroupRingElement.zero(group)
    entries = []
    for k in range(outer.rows):
        row = []
        for j in range(inner.cols):
            acc = zero
            for i in range(inner.rows):
                a, b = pushed[i, j], outer[k, i]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            row.append(acc)
        entries.append(row)
    return LambdaMatrix(group, entries, outer.rows, inner.cols)


def apply_lambda(matrix: LambdaMatrix, vector: Sequence[GroupRingElement],
                 phi: GroupHom = None) -> List[GroupRingElement]:
    """Image of Σ_j v_j e_j: component i is Σ_j φ(v_j)·matrix[i, j]."""
    if len(vector) != matrix.cols:
        raise ValueError(f'Vector of length {len(vector)} for a matrix with'
                         f' {matrix.cols} columns')
    result = []
    for i in range(matrix.rows):
        acc = GroupRingElement.zero(matrix.group)
        for j, v in enumerate(vector):
            if v.is_zero() or matrix[i, j].is_zero():
                continue
            acc = acc + (v if phi is None else v.push(phi)) * matrix[i, j]
        result.append(acc)
    return result


def lambda_to_int(matrix: LambdaMatrix) -> np.ndarray:
    """
    Integer matrix of the map on ℤ-coordinates: each entry x becomes the
    |π|×|π| matrix of right multiplication by x, which makes the passage
    functorial for the coefficient-on-the-left convention.
    """
    group = matrix.group
    n = group.order
    result = zeros(matrix.rows * n, matrix.cols * n)
    table = group.table
    span = np.arange(n)
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            for g, c in matrix[i, j].terms:
                result[i * n + table[:, g], j * n + span] += c
    return result


def lambda_left_int(matrix: LambdaMatrix) -> np.ndarray:
    """Integer matrix of x ↦ (Σ_j matrix[i, j]·x_j)_i, unknowns on the
    right."""
    group = matrix.group
    n = group.order
    result = zeros(matrix.rows * n, matrix.cols * n)
    table = group.table
    span = np.arange(n)
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            for g, c in matrix[i, j].terms:
                result[i * n + table[g, :], j * n + span] += c
    return result


def twisted_matrix(matrix: LambdaMatrix, omega: OrientationChar) -> np.ndarray:
    """Matrix of ℤ^ω ⊗_Λ d."""
    result = zeros(matrix.rows, matrix.cols)
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            result[i, j] = twisted_int(matrix[i, j], omega)
    return result


def lambda_vector_to_int(vector: Sequence[GroupRingElement],
                         group: FiniteGroup) -> np.ndarray:
    n = group.order
    coords = np.zeros(len(vector) * n, dtype=object)
    for j, x in enumerate(vector):
        for g, c in x.terms:
            coords[j * n + g] = c
    return coords


def int_to_lambda_vector(coords, group: FiniteGroup) -> List[GroupRingElement]:
    n = group.order
    if len(coords) % n:
        raise ValueError(f'{len(coords)} coordinates do not split into'
                         f' blocks of {n}')
    return [GroupRingElement.from_vector(group, coords[j * n:(j + 1) * n])
            for j in range(len(coords) // n)]


def left_translate(vec, g: int, group: FiniteGroup) -> np.ndarray:
    """ℤ-coordinates of g·v for a Λ-vector v given by coordinates."""
    n = group.order
    result = np.zeros(len(vec), dtype=object)
    row = group.table[g]
    for block in range(len(vec) // n):
        result[block * n + row] = vec[block * n:(block + 1) * n]
    return result


def solve_lambda(matrix: LambdaMatrix, rhs: Sequence[GroupRingElement],
                 side: str = 'left') -> Optional[List[GroupRingElement]]:
    """
    Some x with matrix applied to x equal to rhs, or None.

    side='left' solves Σ_j x_j·A[i, j] = b_i (the map equation), side='right'
    solves Σ_j A[i, j]·x_j = b_i.
    """
    if len(rhs) != matrix.rows:
        raise ValueError(f'Right-hand side of length {len(rhs)} for a'
                         f' {matrix.rows}-row matrix')
    if side not in ('left', 'right'):
        raise ValueError(f'Unknown side {side!r}')
    group = matrix.group
    if all(x.is_zero() for x in rhs):
        return [GroupRingElement.zero(group)] * matrix.cols
    int_matrix = lambda_to_int(matrix) if side == 'left'\
        else lambda_left_int(matrix)
    solution = integer_solve(int_matrix, lambda_vector_to_int(rhs, group))
    if solution is None:
        return None
    return int_to_lambda_vector(solution, group)


def generates_ideal(gens: Sequence[GroupRingElement],
                    omega: OrientationChar) -> bool:
    """
    True iff the right ideal generated by gens is Ī(π), the kernel of the
    twisted augmentation, spanned over ℤ by the g − (−1)^ω(g)·e.
    """
    group = omega.group
    n = group.order
    generated = []
    for a in gens:
        if a.group != group:
            raise ValueError('Generator lives over another group')
        for g in group.elements:
            product = a * GroupRingElement.basis(group, g)
            generated.append(product.to_vector())
    augmentation = []
    for g in range(1, n):
        vec = np.zeros(n, dtype=object)
        vec[g] += 1
        vec[0] -= omega.sign(g)
        augmentation.append(vec)
    left = Lattice(np.array(generated, dtype=object).T if generated
                   else zeros(n, 0), n)
    right = Lattice(np.array(augmentation, dtype=object).T if augmentation
                    else zeros(n, 0), n)
    return left == right
