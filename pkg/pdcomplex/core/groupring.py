"""
Finite groups given by multiplication tables, their integral group rings
Λ = ℤ[π], orientation characters and group homomorphisms.

Elements of a group of order n are the indices 0..n-1 with 0 the identity.
"""
from itertools import product as cartesian
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import numpy as np


class FiniteGroup:
    """
    Finite group defined by its multiplication table. The table is
    validated on construction (identity, associativity, inverses).
    """
    def __init__(self, mult_table: Sequence[Sequence[int]], name: str = '',
                 validate: bool = True):
        table = np.array(mult_table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]\
                or table.shape[0] == 0:
            raise ValueError('Multiplication table must be a non-empty'
                             ' square matrix')
        order = table.shape[0]
        inverse = np.argmin(table, axis=1)
        if validate:
            self._validate(table, inverse)
        self._table = table
        self._inverse = inverse
        self._name = name or f'G{order}'
        self._table.setflags(write=False)
        self._inverse.setflags(write=False)

    @staticmethod
    def _validate(table: np.ndarray, inverse: np.ndarray) -> None:
        order = table.shape[0]
        for row_num, row in enumerate(table):
            if np.any(row < 0) or np.any(row >= order):
                raise ValueError(f'Row {row_num} of the multiplication table'
                                 f' has entries outside 0..{order - 1}')
            if sorted(row.tolist()) != list(range(order)):
                raise ValueError(f'Row {row_num} of the multiplication table'
                                 ' is not a permutation')
        identity = np.arange(order)
        if not (np.array_equal(table[0], identity)
                and np.array_equal(table[:, 0], identity)):
            raise ValueError('Element 0 must be the identity')
        if not np.array_equal(table[table, :], table[:, table]):
            raise ValueError('Multiplication table is not associative')
        if not np.all(table[inverse, identity] == 0):
            raise ValueError('Multiplication table has no two-sided inverses')

    @property
    def order(self) -> int:
        return self._table.shape[0]

    @property
    def name(self) -> str:
        return self._name

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def inverse_table(self) -> np.ndarray:
        return self._inverse

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        return int(self._table[g, h])

    def inv(self, g: int) -> int:
        return int(self._inverse[g])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        result = 0
        for _ in range(k):
            result = self.mul(result, g)
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._table, self._table.T))

    def generated_subgroup(self, gens: Iterable[int]) -> List[int]:
        gens = list(gens)
        reached, frontier = {0}, [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
        return sorted(reached)

    def generators(self) -> List[int]:
        """Greedy generating set: the smallest element outside the span."""
        gens, span = [], {0}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = set(self.generated_subgroup(gens))
            if len(span) == self.order:
                break
        return gens

    def direct_product(self, other: 'FiniteGroup') -> 'FiniteGroup':
        """π × π′ with the pair (g, h) stored at index g·|π′| + h."""
        m = other.order
        rows = np.repeat(self._table, m, axis=0).repeat(m, axis=1) * m
        cols = np.tile(other.table, (self.order, self.order))
        return FiniteGroup(rows + cols, name=f'{self.name}x{other.name}',
                           validate=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup)\
            and np.array_equal(self._table, other.table)

    def __hash__(self) -> int:
        return hash(self._table.tobytes())

    def __repr__(self) -> str:
        return f'FiniteGroup({self._name}, order={self.order})'


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f'Cyclic group order must be positive, got {n}')
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, name=f'Z{n}')


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


class OrientationChar:
    """Homomorphism ω: π → ℤ/2, stored by its values on all elements."""
    def __init__(self, group: FiniteGroup, values: Sequence[int]):
        values = tuple(int(v) % 2 for v in values)
        if len(values) != group.order:
            raise ValueError(f'Orientation needs {group.order} values,'
                             f' got {len(values)}')
        for g, h in cartesian(group.elements, repeat=2):
            if values[group.mul(g, h)] != (values[g] + values[h]) % 2:
                raise ValueError('Orientation is not a homomorphism at pair'
                                 f' ({g}, {h})')
        self.group = group
        self.values = values

    @classmethod
    def trivial(cls, group: FiniteGroup) -> 'OrientationChar':
        return cls(group, [0] * group.order)

    def __call__(self, g: int) -> int:
        return self.values[g]

    def sign(self, g: int) -> int:
        return -1 if self.values[g] else 1

    def is_trivial(self) -> bool:
        return not any(self.values)

    def pullback(self, phi: 'GroupHom') -> 'OrientationChar':
        if phi.target != self.group:
            raise ValueError('Homomorphism target differs from the group of'
                             ' the orientation character')
        values = [self.values[phi(g)] for g in phi.source.elements]
        return OrientationChar(phi.source, values)

    def __eq__(self, other) -> bool:
        return isinstance(other, OrientationChar)\
            and self.group == other.group and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f'OrientationChar({list(self.values)})'


class GroupRingElement:
    """
    Sparse integer combination of group elements. Coefficients are Python
    integers, zero coefficients are never stored and terms are kept in
    ascending element order.
    """
    __slots__ = ('group', '_terms')

    def __init__(self, group: FiniteGroup,
                 coeffs: Union[Dict[int, int],
                               Iterable[Tuple[int, int]]] = ()):
        self.group = group
        acc: Dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for g, c in items:
            g, c = int(g), int(c)
            if not 0 <= g < group.order:
                raise ValueError(f'Element index {g} outside group of order'
                                 f' {group.order}')
            acc[g] = acc.get(g, 0) + c
        self._terms = tuple(sorted((g, c) for g, c in acc.items() if c))

    @classmethod
    def zero(cls, group: FiniteGroup) -> 'GroupRingElement':
        return cls(group)

    @classmethod
    def one(cls, group: FiniteGroup) -> 'GroupRingElement':
        return cls(group, {0: 1})

    @classmethod
    def basis(cls, group: FiniteGroup, g: int,
              coeff: int = 1) -> 'GroupRingElement':
        return cls(group, {g: coeff})

    @classmethod
    def from_vector(cls, group: FiniteGroup,
                    vec: Sequence[int]) -> 'GroupRingElement':
        return cls(group, {g: c for g, c in enumerate(vec) if c})

    @property
    def terms(self) -> Tuple[Tuple[int, int], ...]:
        return self._terms

    def coeff(self, g: int) -> int:
        for h, c in self._terms:
            if h == g:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def to_vector(self) -> np.ndarray:
        vec = np.zeros(self.group.order, dtype=object)
        for g, c in self._terms:
            vec[g] = c
        return vec

    def _check(self, other: 'GroupRingElement') -> None:
        if other.group is not self.group and other.group != self.group:
            raise ValueError('Group ring elements live over different groups')

    def __add__(self, other: 'GroupRingElement') -> 'GroupRingElement':
        self._check(other)
        return GroupRingElement(self.group, self._terms + other.terms)

    def __neg__(self) -> 'GroupRingElement':
        return GroupRingElement(self.group, [(g, -c) for g, c in self._terms])

    def __sub__(self, other: 'GroupRingElement') -> 'GroupRingElement':
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group,
                                    [(g, c * other) for g, c in self._terms])
        return ring_mul(self, other)

    def __rmul__(self, other: int) -> 'GroupRingElement':
        return self * other

    def push(self, phi: 'GroupHom') -> 'GroupRingElement':
        """Image under the ring homomorphism φ_♯ induced by φ."""
        return GroupRingElement(phi.target,
                                [(phi(g), c) for g, c in self._terms])

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == (((0, other),) if other else ())
        return isinstance(other, GroupRingElement)\
            and self.group == other.group and self._terms == other.terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return '0'
        return ' + '.join(f'{c}*g{g}' for g, c in self._terms)


def aug(x: GroupRingElement) -> int:
    return sum(c for _, c in x.terms)


def ring_mul(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    x._check(y)
    table = x.group.table
    acc: Dict[int, int] = {}
    for g, a in x.terms:
        row = table[g]
        for h, b in y.terms:
            k = int(row[h])
            acc[k] = acc.get(k, 0) + a * b
    return GroupRingElement(x.group, acc)


def bar(x: GroupRingElement, omega: OrientationChar) -> GroupRingElement:
    """Linear extension of g ↦ (−1)^ω(g) g⁻¹."""
    if omega.group != x.group:
        raise ValueError('Orientation character is defined on another group')
    return GroupRingElement(x.group, [(x.group.inv(g), omega.sign(g) * c)
                                      for g, c in x.terms])


def twisted_int(x: GroupRingElement, omega: OrientationChar) -> int:
    return sum(omega.sign(g) * c for g, c in x.terms)


def regular_rep(x: GroupRingElement) -> np.ndarray:
    """Matrix of y ↦ x·y on the basis {g}: entry [k, h] = x_{k h⁻¹}."""
    group = x.group
    n = group.order
    rep = np.zeros((n, n), dtype=object)
    table = group.table
    for g, c in x.terms:
        for h in range(n):
            rep[table[g, h], h] += c
    return rep


def right_rep(x: GroupRingElement) -> np.ndarray:
    """Matrix of y ↦ y·x on the basis {g}: entry [k, h] = x_{h⁻¹ k}."""
    group = x.group
    n = group.order
    rep = np.zeros((n, n), dtype=object)
    table = group.table
    for g, c in x.terms:
        for h in range(n):
            rep[table[h, g], h] += c
    return rep


def norm_element(group: FiniteGroup) -> GroupRingElement:
    return GroupRingElement(group, [(g, 1) for g in group.elements])


class GroupHom:
    """
    Homomorphism between finite groups given by the images of all
    elements. Surjectivity is computed, never assumed.
    """
    def __init__(self, source: FiniteGroup, target: FiniteGroup,
                 images: Sequence[int], validate: bool = True):
        images = tuple(int(i) for i in images)
        if len(images) != source.order:
            raise ValueError(f'Homomorphism needs {source.order} images,'
                             f' got {len(images)}')
        if any(not 0 <= i < target.order for i in images):
            raise ValueError('Homomorphism image outside the target group')
        if validate:
            img = np.array(images)
            lhs = img[source.table]
            rhs = target.table[img[:, None], img[None, :]]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                g, h = (int(x) for x in bad[0])
                raise ValueError(f'Map is not a homomorphism at pair'
                                 f' ({g}, {h})')
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def identity(cls, group: FiniteGroup) -> 'GroupHom':
        return cls(group, group, list(group.elements))

    @classmethod
    def trivial(cls, source: FiniteGroup, target: FiniteGroup) -> 'GroupHom':
        return cls(source, target, [0] * source.order)

    @classmethod
    def from_generators(cls, source: FiniteGroup, target: FiniteGroup,
                        gens: Sequence[int],
                        gen_images: Sequence[int]) -> Optional['GroupHom']:
        """
        Extends generator images to a homomorphism by breadth-first
        search; returns None when the assignment is inconsistent.
        """
        images = {0: 0}
        frontier = [0]
        while frontier:
            x = frontier.pop(0)
            for g, img in zip(gens, gen_images):
                y = source.mul(x, g)
                y_img = target.mul(images[x], img)
                if y in images:
                    if images[y] != y_img:
                        return None
                else:
                    images[y] = y_img
                    frontier.append(y)
        if len(images) != source.order:
            return None
        try:
            return cls(source, target, [images[g] for g in source.elements])
        except ValueError:
            return None

    def __call__(self, g: int) -> int:
        return self.images[g]

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def compose(self, inner: 'GroupHom') -> 'GroupHom':
        """self ∘ inner."""
        if inner.target != self.source:
            raise ValueError('Homomorphisms are not composable')
        return GroupHom(inner.source, self.target,
                        [self.images[i] for i in inner.images])

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupHom) and self.source == other.source\
            and self.target == other.target and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f'GroupHom({self.source.name} -> {self.target.name},' \
               f' {list(self.images)})'


def diagonal_hom(group: FiniteGroup) -> GroupHom:
    n = group.order
    return GroupHom(group, group.direct_product(group),
                    [g * n + g for g in group.elements], validate=False)


def product_hom(phi: GroupHom, psi: GroupHom) -> GroupHom:
    """φ × ψ between direct products."""
    m, m_t = psi.source.order, psi.target.order
    source = phi.source.direct_product(psi.source)
    target = phi.target.direct_product(psi.target)
    images = [phi(g // m) * m_t + psi(g % m) for g in source.elements]
    return GroupHom(source, target, images, validate=False)


def projection_hom(left: FiniteGroup, right: FiniteGroup,
                   factor: int) -> GroupHom:
    m = right.order
    source = left.direct_product(right)
    if factor == 1:
        return GroupHom(source, left, [g // m for g in source.elements],
                        validate=False)
    return GroupHom(source, right, [g % m for g in source.elements],
                    validate=False)


def swap_hom(left: FiniteGroup, right: FiniteGroup) -> GroupHom:
    m, n = right.order, left.order
    source = left.direct_product(right)
    target = right.direct_product(left)
    return GroupHom(source, target,
                    [(g % m) * n + g // m for g in source.elements],
                    validate=False)


def outer_product(x: GroupRingElement, y: GroupRingElement,
                  group: FiniteGroup) -> GroupRingElement:
    """x ⊗ y ∈ ℤ[π × π′] where group is the direct product."""
    m = y.group.order
    return GroupRingElement(group, [(g * m + h, a * b) for g, a in x.terms
                                    for h, b in y.terms])
