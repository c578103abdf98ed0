"""
Finite groups from presentations ⟨E₁ | f(E₂)⟩: coset enumeration,
Schreier transversal, Reidemeister–Schreier rewriting and the left Fox
calculus giving the cellular boundaries of the presentation complex.
"""
from logging import getLogger
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from pdcomplex.core.chain import ReducedComplex
from pdcomplex.core.errors import EnumerationBoundError
from pdcomplex.core.groupring import FiniteGroup, GroupRingElement
from pdcomplex.core.linalg import LambdaMatrix
from pdcomplex.crossed.words import FreeWord, PreCrossedModule


logger = getLogger(__name__)

DEFAULT_MAX_COSETS = 100000


def _columns(word: FreeWord) -> List[int]:
    return [2 * gen + (0 if exp > 0 else 1) for gen, exp in word.letters]


class _CosetTable:
    """HLT coset table for the trivial subgroup, with coincidence handling."""
    def __init__(self, n_gens: int, bound: int):
        self.n_cols = 2 * n_gens
        self.bound = bound
        self.table: List[List[Optional[int]]] = [[None] * self.n_cols]
        self.parent = [0]

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.bound:
            raise EnumerationBoundError(
                f'Coset enumeration exceeded {self.bound} cosets')
        d = len(self.table)
        self.table.append([None] * self.n_cols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def _merge(self, k: int, m: int, queue: List[int]) -> None:
        a, b = self.rep(k), self.rep(m)
        if a != b:
            low, high = min(a, b), max(a, b)
            self.parent[high] = low
            queue.append(high)

    def coincidence(self, a: int, b: int) -> None:
        queue: List[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            dead = queue[i]
            i += 1
            for x in range(self.n_cols):
                target = self.table[dead][x]
                if target is None:
                    continue
                self.table[target][x ^ 1] = None
                mu, nu = self.rep(dead), self.rep(target)
                if self.table[mu][x] is not None:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][x ^ 1] is not None:
                    self._merge(mu, self.table[nu][x ^ 1], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][x ^ 1] = mu

    def scan_and_fill(self, c: int, word: List[int]) -> None:
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and self.table[f][word[i]] is not None:
                f = self.table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][word[j] ^ 1] is not None:
                b = self.table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.table[f][word[i]] = b
                self.table[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def run(self, relators: Sequence[List[int]]) -> None:
        c = 0
        while c < len(self.table):
            if self.live(c):
                for word in relators:
                    self.scan_and_fill(c, word)
                    if not self.live(c):
                        break
            if self.live(c):
                for x in range(self.n_cols):
                    if self.table[c][x] is None:
                        self.define(c, x)
            c += 1


def coset_enumeration(n_gens: int, relators: Sequence[FreeWord],
                      bound: int = DEFAULT_MAX_COSETS)\
        -> Tuple[np.ndarray, List[Tuple[int, int]]]:
    """
    Regular permutation representation of ⟨E₁ | relators⟩. Returns the
    coset table (row c, column 2k for generator k, 2k + 1 for its inverse)
    numbered by breadth-first search along positive generators from the
    identity coset, and the spanning tree edges (c, k) of that search.
    """
    words = [_columns(r) for r in relators if not r.is_identity()]
    cosets = _CosetTable(n_gens, bound)
    cosets.run(words)
    order, index, tree = [0], {0: 0}, []
    pos = 0
    while pos < len(order):
        c = order[pos]
        for k in range(n_gens):
            d = cosets.rep(cosets.table[c][2 * k])
            if d not in index:
                index[d] = len(order)
                order.append(d)
                tree.append((index[c], k))
        pos += 1
    table = np.zeros((len(order), 2 * n_gens), dtype=np.int64)
    for c in order:
        for x in range(2 * n_gens):
            table[index[c], x] = index[cosets.rep(cosets.table[c][x])]
    logger.debug('Coset enumeration: %d cosets defined, index %d',
                 len(cosets.table), len(order))
    return table, tree


class Presentation:
    """
    The finite group π = ⟨E₁ | relators⟩ with its coset table, a Schreier
    transversal τ_g of positive words and the free basis of the relation
    subgroup N given by the nontrivial Schreier generators τ_c a τ_{ca}⁻¹.
    """
    def __init__(self, n_gens: int, relators: Sequence[FreeWord],
                 max_cosets: int = DEFAULT_MAX_COSETS, name: str = ''):
        self.n_gens = n_gens
        self.relators = tuple(relators)
        self.coset_table, tree = coset_enumeration(n_gens, relators,
                                                   max_cosets)
        n = self.coset_table.shape[0]
        self.transversal = [FreeWord.identity(n_gens)]
        tree_edges = set()
        for c, k in tree:
            tree_edges.add((c, k))
            self.transversal.append(
                self.transversal[c] * FreeWord.generator(n_gens, k))
        table = np.zeros((n, n), dtype=np.int64)
        for g in range(n):
            for h in range(n):
                table[g, h] = self._walk(g, self.transversal[h])
        self.group = FiniteGroup(table, name=name or f'pi{n}')
        self.generator_images = [int(self.coset_table[0, 2 * k])
                                 for k in range(n_gens)]
        self.schreier_generators = [(c, k) for c in range(n)
                                    for k in range(n_gens)
                                    if (c, k) not in tree_edges]
        self._schreier_index: Dict[Tuple[int, int], int] = {
            s: i for i, s in enumerate(self.schreier_generators)}
        logger.info('Presentation %s: |pi| = %d, rank N = %d', self.group.name,
                    n, len(self.schreier_generators))

    def _walk(self, coset: int, word: FreeWord) -> int:
        for gen, exp in word.letters:
            column = 2 * gen + (0 if exp > 0 else 1)
            coset = int(self.coset_table[coset, column])
        return coset

    def evaluate(self, word: FreeWord) -> int:
        """q(w) ∈ π."""
        if word.rank != self.n_gens:
            raise ValueError('Word lives over another alphabet')
        return self._walk(0, word)

    def schreier_element(self, index: int) -> FreeWord:
        c, k = self.schreier_generators[index]
        target = int(self.coset_table[c, 2 * k])
        return self.transversal[c] * FreeWord.generator(self.n_gens, k)\
            * self.transversal[target].inverse()

    def rewrite(self, word: FreeWord) -> List[Tuple[int, int]]:
        """Reidemeister–Schreier rewriting of w ∈ N as a reduced word in
        the Schreier basis, letters (index, ±1)."""
        coset = 0
        result: List[Tuple[int, int]] = []
        for gen, exp in word.letters:
            if exp > 0:
                key = (coset, gen)
                coset = int(self.coset_table[coset, 2 * gen])
            else:
                coset = int(self.coset_table[coset, 2 * gen + 1])
                key = (coset, gen)
            index = self._schreier_index.get(key)
            if index is None:
                continue
            if result and result[-1] == (index, -exp):
                result.pop()
            else:
                result.append((index, exp))
        if coset != 0:
            raise ValueError(f'Word {word.format()} does not lie in the'
                             ' relation subgroup')
        return result

    def fox_derivative(self, word: FreeWord, gen: int) -> GroupRingElement:
        """Left Fox derivative ∂w/∂a with w − 1 = Σ_a (∂w/∂a)(a − 1)."""
        coeffs: Dict[int, int] = {}
        coset = 0
        for g, exp in word.letters:
            if exp > 0:
                if g == gen:
                    coeffs[coset] = coeffs.get(coset, 0) + 1
                coset = int(self.coset_table[coset, 2 * g])
            else:
                coset = int(self.coset_table[coset, 2 * g + 1])
                if g == gen:
                    coeffs[coset] = coeffs.get(coset, 0) - 1
        return GroupRingElement(self.group, coeffs)


def presentation(M: PreCrossedModule,
                 max_cosets: int = DEFAULT_MAX_COSETS) -> Presentation:
    return Presentation(M.n_gens, M.relators, max_cosets, M.name)


def fox_boundary(M: PreCrossedModule, pres: Optional[Presentation] = None,
                 max_cosets: int = DEFAULT_MAX_COSETS)\
        -> Tuple[int, int, LambdaMatrix, LambdaMatrix]:
    """
    Ranks of C₂ = Λ^{E₂} and C₁ = Λ^{E₁} with d₂[a, x] = ∂f(x)/∂a and
    d₁(e_a) = (q(a) − 1)·∗.
    """
    pres = pres or presentation(M, max_cosets)
    group = pres.group
    d2 = LambdaMatrix(group, [[pres.fox_derivative(r, a) for r in M.relators]
                              for a in range(M.n_gens)],
                      M.n_gens, M.n_relators)
    one = GroupRingElement.one(group)
    d1 = LambdaMatrix(group, [[GroupRingElement.basis(group, g) - one
                               for g in pres.generator_images]],
                      1, M.n_gens)
    return M.n_relators, M.n_gens, d2, d1


def presentation_complex(M: PreCrossedModule,
                         pres: Optional[Presentation] = None)\
        -> ReducedComplex:
    """Cellular chains of the universal cover of the presentation complex."""
    pres = pres or presentation(M)
    rank2, rank1, d2, d1 = fox_boundary(M, pres)
    return ReducedComplex(pres.group, [1, rank1, rank2], {1: d1, 2: d2},
                          name=M.name)
