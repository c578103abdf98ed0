"""
Symmetries of totally free pre-crossed data over an automorphism of π.

A symmetry over φ permutes the generators, a_i ↦ a_{σ(i)} with
q(a_{σ(i)}) = φ(q(a_i)), and sends each relator letter x_j to α_j·x_{τ(j)}
where σ(f(x_j)) = α_j⁻¹ f(x_{τ(j)}) α_j is a cyclic rotation of the
relator f(x_{τ(j)}). It induces a monomial isomorphism of the cellular
2-skeleton over φ that fixes the Fox boundaries.
"""
from dataclasses import dataclass
from itertools import product
from logging import getLogger
from typing import Iterator, List, Tuple
from pdcomplex.core.groupring import GroupHom
from pdcomplex.crossed.presentation import Presentation
from pdcomplex.crossed.words import FreeWord, PreCrossedModule


logger = getLogger(__name__)


@dataclass(frozen=True)
class PresentationSymmetry:
    phi: GroupHom
    generators: Tuple[int, ...]
    relators: Tuple[int, ...]
    conjugators: Tuple[int, ...]

    def is_identity(self) -> bool:
        return self.phi == GroupHom.identity(self.phi.source)\
            and self.generators == tuple(range(len(self.generators)))\
            and self.relators == tuple(range(len(self.relators)))\
            and not any(self.conjugators)

    def cells(self, k: int, rank: int) -> Tuple[Tuple[int, ...],
                                                 Tuple[int, ...]]:
        """(π, g): cell j of degree k goes to g_j·e_{π(j)}."""
        if k == 1:
            return self.generators, (0,) * rank
        if k == 2:
            return self.relators, self.conjugators
        return tuple(range(rank)), (0,) * rank


def rotations(word: FreeWord, target: FreeWord) -> Iterator[FreeWord]:
    """Prefixes u of target = u·v with v·u = word."""
    w, r = word.signed, target.signed
    if len(w) != len(r):
        return
    for k in range(max(len(r), 1)):
        if r[k:] + r[:k] == w:
            yield FreeWord(target.rank, target.letters[:k])


def substitute(word: FreeWord, sigma: Tuple[int, ...]) -> FreeWord:
    return FreeWord(word.rank, [(sigma[g], e) for g, e in word.letters])


def presentation_symmetries(M: PreCrossedModule, pres: Presentation,
                            phi: GroupHom)\
        -> Iterator[PresentationSymmetry]:
    """Symmetries of M over φ, the identity permutation of E₁ first."""
    group = pres.group
    images = pres.generator_images
    n = M.n_gens
    pools = [[k for k in range(n) if images[k] == phi(images[i])]
             for i in range(n)]
    pools = [sorted(pool, key=lambda k, i=i: k != i)
             for i, pool in enumerate(pools)]
    found = 0
    for sigma in product(*pools):
        if len(set(sigma)) < n:
            continue
        options: List[List[Tuple[int, int]]] = []
        for r in M.relators:
            moved = substitute(r, sigma)
            matches = {}
            for k, target in enumerate(M.relators):
                for u in rotations(moved, target):
                    matches.setdefault((k, group.inv(pres.evaluate(u))), None)
            if not matches:
                break
            options.append(sorted(matches, key=lambda m: (m[1] != 0, m)))
        if len(options) < M.n_relators:
            continue
        for choice in product(*options):
            targets = tuple(k for k, _ in choice)
            if len(set(targets)) < len(targets):
                continue
            found += 1
            yield PresentationSymmetry(phi, tuple(sigma), targets,
                                       tuple(c for _, c in choice))
    logger.debug('%d symmetries of %s over %s', found, M.name or 'M', phi)
