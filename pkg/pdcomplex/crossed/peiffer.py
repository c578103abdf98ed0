"""
Peiffer collection in σ₂ = ρ₂/Pei₃ for a totally free pre-crossed module.

The transversal letters τ_g·x (g ∈ π, x ∈ E₂) span a free group Φ whose
image is all of ρ̄₂. Their boundaries are the lassos τ_g f(x) τ_g⁻¹ in
the relation subgroup N, which is free on the Schreier basis S. A
Nielsen reduction of the lassos, tracked as automorphisms of Φ, gives a
new basis of Φ made of words Ŵ_s with ∂Ŵ_s = s and words Û_j with
∂Û_j = 1. The classes κ_j = h(Û_j) form a ℤ-basis of K = ker d₂.

Every element of σ₂ then has the normal form

    Ŵ(ν) + Σ_j c_j Û_j + ω(t),    t ∈ (C₂ ⊗ C₂) / HΓ(K),

obtained from a word with the two rules (mod Pei₃)

    η^{∂ξ} = −ξ + η + ξ + ω(hξ ⊗ hη)
    ξ + η = η + ξ + ω(hξ ⊗ hη)          when ∂ξ = 1.

Tensors are stored as ℤ-vectors of length dim² with index A·dim + B for
the basis element u_A ⊗ u_B, u_{x·|π| + g} = g·e_x.
"""
from itertools import permutations
from logging import getLogger
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import numpy as np
from pdcomplex.core.errors import PeifferCollectionError
from pdcomplex.core.linalg import (AbelianGroup, Lattice, as_int_vector,
                                   hstack, integer_kernel, integer_solve,
                                   lambda_to_int, zeros)
from pdcomplex.crossed.presentation import (Presentation, fox_boundary,
                                            presentation)
from pdcomplex.crossed.words import FreeWord, PreCrossedModule, Rho2Word


logger = getLogger(__name__)

CERTIFIED_ORDER = 8
CERTIFIED_RELATORS = 3

Pair = Tuple[int, int]


def _reduce(word: Iterable[Pair]) -> List[Pair]:
    stack: List[Pair] = []
    for key, e in word:
        if stack and stack[-1] == (key, -e):
            stack.pop()
        else:
            stack.append((key, e))
    return stack


def _invert(word: Sequence[Pair]) -> List[Pair]:
    return [(key, -e) for key, e in reversed(word)]


def tensor_vector(u, v) -> np.ndarray:
    """u ⊗ v as a vector of length len(u)·len(v)."""
    return np.multiply.outer(as_int_vector(u), as_int_vector(v)).reshape(-1)


def gamma_image(basis: np.ndarray) -> np.ndarray:
    """Columns spanning HΓ(L) ⊆ ℤ^dim ⊗ ℤ^dim for L spanned by basis."""
    dim, rank = basis.shape
    columns = []
    for i in range(rank):
        columns.append(tensor_vector(basis[:, i], basis[:, i]))
        for j in range(i + 1, rank):
            columns.append(tensor_vector(basis[:, i], basis[:, j])
                           + tensor_vector(basis[:, j], basis[:, i]))
    if not columns:
        return zeros(dim * dim, 0)
    return np.array(columns, dtype=object).T


class Sigma2Element:
    """
    Normal form Ŵ(ν) + Σ c_j Û_j + ω(t) of an element of σ₂. base_word is
    the reduced word in the Ŵ-positions of the collector, kernel_coeffs
    the c_j and peiffer a representative t of the Pei₂/Pei₃ part.
    """
    def __init__(self, collector: 'PeifferCollector',
                 base_word: Sequence[Pair], kernel_coeffs: Sequence[int],
                 peiffer: np.ndarray):
        self.collector = collector
        self.base_word = tuple(base_word)
        self.kernel_coeffs = tuple(int(c) for c in kernel_coeffs)
        self.peiffer = as_int_vector(peiffer)

    @property
    def abelian_image(self) -> np.ndarray:
        """h of the element in C₂ coordinates."""
        image = self.collector.position_image(self.base_word)
        for k, coeff in enumerate(self.kernel_coeffs):
            image = image + coeff * self.collector.kappa[:, k]
        return image

    def boundary(self) -> FreeWord:
        return self.collector.module.boundary(self.representative())

    def in_kernel(self) -> bool:
        return not self.base_word

    def is_central(self) -> bool:
        return not self.base_word and not any(self.kernel_coeffs)

    def peiffer_class(self) -> Tuple[int, ...]:
        return self.collector.peiffer_group.coordinates(self.peiffer)

    def crossed_image(self) -> 'Sigma2Element':
        """Image in ρ̄₂: the Peiffer part killed."""
        return Sigma2Element(self.collector, self.base_word,
                             self.kernel_coeffs,
                             np.zeros(len(self.peiffer), dtype=object))

    def representative(self) -> Rho2Word:
        """The ρ₂ word Ŵ(ν) + Σ c_j Û_j, without the Peiffer part."""
        c = self.collector
        positions = list(self.base_word)
        for pos, coeff in zip(c.kernel_positions, self.kernel_coeffs):
            positions.extend([(pos, 1 if coeff > 0 else -1)] * abs(coeff))
        return c.expand(positions)

    def __mul__(self, other: 'Sigma2Element') -> 'Sigma2Element':
        return sigma2_product(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Sigma2Element)\
            and other.collector is self.collector\
            and self.base_word == other.base_word\
            and self.kernel_coeffs == other.kernel_coeffs\
            and self.peiffer_class() == other.peiffer_class()

    def __hash__(self) -> int:
        return hash((self.base_word, self.kernel_coeffs, self.peiffer_class()))

    def __repr__(self) -> str:
        return f'Sigma2Element(base={list(self.base_word)},' \
               f' kernel={list(self.kernel_coeffs)},' \
               f' peiffer={self.peiffer_class()})'


class PeifferCollector:
    """
    Normal forms in σ₂ for a pre-crossed module whose fundamental group is
    finite. Construction raises PeifferCollectionError when the lassos
    do not Nielsen-reduce to a basis of N or when the presentation is
    larger than the certified range.
    """
    def __init__(self, M: PreCrossedModule,
                 pres: Optional[Presentation] = None,
                 max_order: int = CERTIFIED_ORDER,
                 max_relators: int = CERTIFIED_RELATORS):
        self.module = M
        self.presentation = pres or presentation(M)
        self.group = self.presentation.group
        n = self.group.order
        if n > max_order or M.n_relators > max_relators:
            raise PeifferCollectionError(
                f'Peiffer collection is certified for |pi| <= {max_order}'
                f' and at most {max_relators} relators, got |pi| = {n} and'
                f' {M.n_relators} relators')
        self.dim = M.n_relators * n
        _, _, self.d2, self.d1 = fox_boundary(M, self.presentation)
        self._units = [self._unit(t) for t in range(self.dim)]
        self._nielsen()
        self._check_kernel()
        self.gamma_relations = gamma_image(self.kappa)
        self.peiffer_group = AbelianGroup.from_relations(
            self.gamma_relations if self.dim else zeros(0, 0))
        logger.info('Peiffer collector for %s: rank K = %d, Pei2/Pei3 = %s',
                    M.name or 'module', len(self.kernel_positions),
                    self.peiffer_group)

    def _unit(self, t: int) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=object)
        vec[t] = 1
        return vec

    def _lasso(self, t: int) -> List[Pair]:
        x, g = divmod(t, self.group.order)
        tau = self.presentation.transversal[g]
        return self.presentation.rewrite(
            tau * self.module.relators[x] * tau.inverse())

    @staticmethod
    def _shorter(u: List[Pair], v: List[Pair])\
            -> Optional[Tuple[str, int, List[Pair]]]:
        for eps in (1, -1):
            w = v if eps > 0 else _invert(v)
            right = _reduce(u + w)
            if len(right) < len(u):
                return 'right', eps, right
            left = _reduce(w + u)
            if len(left) < len(u):
                return 'left', eps, left
        return None

    def _track(self, i: int, j: int, side: str, eps: int) -> None:
        vj = self._forward[j] if eps > 0 else _invert(self._forward[j])
        if side == 'right':
            self._forward[i] = _reduce(self._forward[i] + vj)
            plus, minus = [(i, 1), (j, -eps)], [(j, eps), (i, -1)]
        else:
            self._forward[i] = _reduce(vj + self._forward[i])
            plus, minus = [(j, -eps), (i, 1)], [(i, -1), (j, eps)]
        for t, expr in enumerate(self._backward):
            new: List[Pair] = []
            for pos, e in expr:
                if pos != i:
                    new.append((pos, e))
                else:
                    new.extend(plus if e > 0 else minus)
            self._backward[t] = _reduce(new)

    def _nielsen(self) -> None:
        images = [self._lasso(t) for t in range(self.dim)]
        # positions start as the transversal letters; forward words express
        # positions in letters, backward words express letters in positions
        self._forward = [[(t, 1)] for t in range(self.dim)]
        self._backward = [[(t, 1)] for t in range(self.dim)]
        moves = 0
        moved = True
        while moved:
            moved = False
            for i, j in permutations(range(self.dim), 2):
                if not images[i] or not images[j]:
                    continue
                move = self._shorter(images[i], images[j])
                if move is None:
                    continue
                side, eps, product = move
                images[i] = product
                self._track(i, j, side, eps)
                moves += 1
                moved = True
                break
        n_schreier = len(self.presentation.schreier_generators)
        self._basis_of: Dict[int, Pair] = {}
        self.kernel_positions: List[int] = []
        for pos, image in enumerate(images):
            if not image:
                self.kernel_positions.append(pos)
                continue
            if len(image) != 1 or image[0][0] in self._basis_of:
                raise PeifferCollectionError(
                    'Lassos do not Nielsen-reduce to a basis of the relation'
                    f' subgroup (position {pos} reduces to length'
                    f' {len(image)})')
            s, sign = image[0]
            self._basis_of[s] = (pos, sign)
        if len(self._basis_of) != n_schreier:
            raise PeifferCollectionError(
                f'Lassos reduce to {len(self._basis_of)} basis elements, the'
                f' relation subgroup has rank {n_schreier}')
        self._kernel_index = {pos: k
                              for k, pos in enumerate(self.kernel_positions)}
        self._position_h = [self._word_image(self._forward[pos])
                            for pos in range(self.dim)]
        self.kappa = zeros(self.dim, len(self.kernel_positions))
        for k, pos in enumerate(self.kernel_positions):
            self.kappa[:, k] = self._position_h[pos]
        logger.debug('Nielsen reduction: %d moves, %d identities', moves,
                     len(self.kernel_positions))

    def _word_image(self, word: Sequence[Pair]) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=object)
        for t, e in word:
            vec[t] += e
        return vec

    def _check_kernel(self) -> None:
        kernel = integer_kernel(lambda_to_int(self.d2))
        spanned = Lattice(self.kappa, self.dim)
        if spanned.rank != self.kappa.shape[1]\
                or spanned != Lattice(kernel, self.dim):
            raise PeifferCollectionError(
                'Identities among the lassos do not form a basis of ker d2')

    def position_image(self, word: Sequence[Pair]) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=object)
        for pos, e in word:
            vec = vec + e * self._position_h[pos]
        return vec

    def expand(self, positions: Sequence[Pair]) -> Rho2Word:
        """ρ₂ word of a word in basis positions."""
        n = self.group.order
        letters = []
        for pos, e in positions:
            block = self._forward[pos]
            if e < 0:
                block = _invert(block)
            for t, f in block:
                x, g = divmod(t, n)
                letters.append((x, self.presentation.transversal[g], f))
        return self.module.word(letters)

    def omega(self, t) -> Sigma2Element:
        """ω(t) for t ∈ C₂ ⊗ C₂ given as a vector of length dim²."""
        t = as_int_vector(t)
        if len(t) != self.dim * self.dim:
            raise ValueError(f'Tensor of length {len(t)}, expected'
                             f' {self.dim * self.dim}')
        return Sigma2Element(self, (), [0] * len(self.kernel_positions), t)

    def _lift_kernel_word(self, nu_inverse: FreeWord) -> List[Pair]:
        """Ŵ of an element of N as a word in basis positions."""
        word = []
        for s, e in self.presentation.rewrite(nu_inverse):
            pos, sign = self._basis_of[s]
            word.append((pos, sign * e))
        return word

    def _normalize_letter(self, x: int, alpha: FreeWord, eps: int,
                          central: np.ndarray) -> List[Pair]:
        pres = self.presentation
        g = pres.evaluate(alpha)
        t = x * self.group.order + g
        Y = self._lift_kernel_word(pres.transversal[g] * alpha.inverse())
        core = self._backward[t] if eps > 0 else _invert(self._backward[t])
        if Y:
            central += eps * tensor_vector(self.position_image(Y),
                                           self._units[t])
        return _invert(Y) + core + Y

    def collect(self, word: Rho2Word) -> Sigma2Element:
        """Normal form of a ρ₂ word in σ₂."""
        if word.rank != self.module.n_gens\
                or word.n_relators != self.module.n_relators:
            raise ValueError('Word lives over another pre-crossed module')
        central = np.zeros(self.dim * self.dim, dtype=object)
        positions: List[Pair] = []
        for x, alpha, eps in word.letters:
            positions.extend(self._normalize_letter(x, alpha, eps, central))
        positions = _reduce(positions)
        base: List[Pair] = []
        kernel_letters: List[Pair] = []
        moved = np.zeros(self.dim, dtype=object)
        for pos, e in positions:
            if pos in self._kernel_index:
                kernel_letters.append((pos, e))
                moved = moved + e * self._position_h[pos]
            else:
                central += tensor_vector(moved, e * self._position_h[pos])
                base.append((pos, e))
        base = _reduce(base)
        rank = len(self.kernel_positions)
        coeffs = [0] * rank
        earlier = [np.zeros(self.dim, dtype=object) for _ in range(rank)]
        for pos, e in kernel_letters:
            k = self._kernel_index[pos]
            h = e * self._position_h[pos]
            later = sum(earlier[k + 1:], np.zeros(self.dim, dtype=object))
            central += tensor_vector(later, h)
            earlier[k] = earlier[k] + h
            coeffs[k] += e
        result = Sigma2Element(self, base, coeffs, central)
        assert np.array_equal(result.abelian_image, self.abelian_image(word)),\
            'normal form changed the abelian image'
        return result

    def abelian_image(self, word: Rho2Word) -> np.ndarray:
        """h(α·x) = q(α)·e_x summed over the letters."""
        vec = np.zeros(self.dim, dtype=object)
        for x, alpha, eps in word.letters:
            g = self.presentation.evaluate(alpha)
            vec[x * self.group.order + g] += eps
        return vec

    def kernel_lift(self, k) -> Sigma2Element:
        """The normal form Σ c_j Û_j over an element k of K."""
        coeffs = integer_solve(self.kappa, as_int_vector(k))
        if coeffs is None:
            raise ValueError('Vector does not lie in ker d2')
        return Sigma2Element(self, (), coeffs,
                             np.zeros(self.dim * self.dim, dtype=object))

    def peiffer_quotient(self, extra: np.ndarray) -> AbelianGroup:
        """(C₂ ⊗ C₂) / (HΓ(K) + span of extra)."""
        size = self.dim * self.dim
        return AbelianGroup.from_relations(
            hstack([self.gamma_relations, extra], size))


def sigma2_product(a: Sigma2Element, b: Sigma2Element) -> Sigma2Element:
    if a.collector is not b.collector:
        raise ValueError('Elements belong to different collectors')
    word = a.representative() * b.representative()
    product = a.collector.collect(word)
    return Sigma2Element(a.collector, product.base_word,
                         product.kernel_coeffs,
                         product.peiffer + a.peiffer + b.peiffer)
