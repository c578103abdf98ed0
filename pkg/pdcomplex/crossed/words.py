"""
Words in free groups and in the free group ρ₂ of a totally free
pre-crossed module.

A FreeWord over an alphabet of `rank` generators is stored as a tuple of
signed integers: generator k with exponent ±1 is ±(k + 1). Words are
freely reduced on construction.

ρ₂ is free on letters α·x (α ∈ ρ₁, x ∈ E₂) with the left action
β·(α·x) = (βα)·x and ∂(α·x) = α f(x) α⁻¹. The right action of the
Peiffer calculus is y^β = β⁻¹·y.
"""
from typing import Iterable, List, Optional, Sequence, Tuple


Letter = Tuple[int, int]


def _reduce(signed: Iterable[int]) -> Tuple[int, ...]:
    stack: List[int] = []
    for s in signed:
        if stack and stack[-1] == -s:
            stack.pop()
        else:
            stack.append(s)
    return tuple(stack)


class FreeWord:
    __slots__ = ('rank', '_signed')

    def __init__(self, rank: int, letters: Iterable[Letter] = ()):
        signed = []
        for gen, exp in letters:
            gen, exp = int(gen), int(exp)
            if not 0 <= gen < rank:
                raise ValueError(f'Generator {gen} outside alphabet of'
                                 f' rank {rank}')
            if exp not in (1, -1):
                raise ValueError(f'Exponent must be +1 or -1, got {exp}')
            signed.append(exp * (gen + 1))
        self.rank = int(rank)
        self._signed = _reduce(signed)

    @classmethod
    def _from_signed(cls, rank: int, signed: Iterable[int]) -> 'FreeWord':
        word = cls.__new__(cls)
        word.rank = rank
        word._signed = _reduce(signed)
        return word

    @classmethod
    def identity(cls, rank: int) -> 'FreeWord':
        return cls(rank)

    @classmethod
    def generator(cls, rank: int, gen: int, exp: int = 1) -> 'FreeWord':
        return cls(rank, [(gen, exp)])

    @classmethod
    def from_powers(cls, rank: int,
                    powers: Sequence[Tuple[int, int]]) -> 'FreeWord':
        """Word g_1^k_1 g_2^k_2 ... from (generator, integer power) pairs."""
        letters = []
        for gen, k in powers:
            letters.extend([(gen, 1 if k > 0 else -1)] * abs(int(k)))
        return cls(rank, letters)

    @property
    def letters(self) -> Tuple[Letter, ...]:
        return tuple((abs(s) - 1, 1 if s > 0 else -1) for s in self._signed)

    @property
    def signed(self) -> Tuple[int, ...]:
        return self._signed

    def is_identity(self) -> bool:
        return not self._signed

    def _check(self, other: 'FreeWord') -> None:
        if not isinstance(other, FreeWord) or other.rank != self.rank:
            raise ValueError('Words live over different alphabets')

    def __mul__(self, other: 'FreeWord') -> 'FreeWord':
        self._check(other)
        return FreeWord._from_signed(self.rank, self._signed + other._signed)

    def inverse(self) -> 'FreeWord':
        return FreeWord._from_signed(self.rank,
                                     [-s for s in reversed(self._signed)])

    def __pow__(self, k: int) -> 'FreeWord':
        base = self if k >= 0 else self.inverse()
        return FreeWord._from_signed(self.rank, base._signed * abs(k))

    def conjugate(self, by: 'FreeWord') -> 'FreeWord':
        """by⁻¹ · self · by."""
        return by.inverse() * self * by

    def __len__(self) -> int:
        return len(self._signed)

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeWord) and self.rank == other.rank\
            and self._signed == other._signed

    def __hash__(self) -> int:
        return hash((self.rank, self._signed))

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self._signed:
            return '1'
        names = names or [f'a{k}' for k in range(self.rank)]
        parts = []
        for gen, exp in self.letters:
            parts.append(names[gen] if exp > 0 else f'{names[gen]}^-1')
        return ' '.join(parts)

    def __repr__(self) -> str:
        return f'FreeWord({self.format()})'


Rho2Letter = Tuple[int, FreeWord, int]


class Rho2Word:
    """
    Element of the free group ρ₂ on letters α·x, written as a sequence of
    (x, α, ε) with ε = ±1.
    """
    __slots__ = ('rank', 'n_relators', '_letters')

    def __init__(self, rank: int, n_relators: int,
                 letters: Iterable[Rho2Letter] = ()):
        self.rank = int(rank)
        self.n_relators = int(n_relators)
        stack: List[Rho2Letter] = []
        for x, alpha, eps in letters:
            if not 0 <= x < n_relators:
                raise ValueError(f'Relator index {x} outside 0..'
                                 f'{n_relators - 1}')
            if alpha.rank != self.rank:
                raise ValueError('Letter coefficient lives over another'
                                 ' alphabet')
            if eps not in (1, -1):
                raise ValueError(f'Exponent must be +1 or -1, got {eps}')
            if stack and stack[-1][0] == x and stack[-1][2] == -eps\
                    and stack[-1][1] == alpha:
                stack.pop()
            else:
                stack.append((x, alpha, eps))
        self._letters = tuple(stack)

    @classmethod
    def identity(cls, rank: int, n_relators: int) -> 'Rho2Word':
        return cls(rank, n_relators)

    @classmethod
    def generator(cls, rank: int, n_relators: int, x: int,
                  alpha: Optional[FreeWord] = None) -> 'Rho2Word':
        alpha = alpha if alpha is not None else FreeWord.identity(rank)
        return cls(rank, n_relators, [(x, alpha, 1)])

    @property
    def letters(self) -> Tuple[Rho2Letter, ...]:
        return self._letters

    def is_identity(self) -> bool:
        return not self._letters

    def _check(self, other: 'Rho2Word') -> None:
        if not isinstance(other, Rho2Word) or other.rank != self.rank\
                or other.n_relators != self.n_relators:
            raise ValueError('Words live over different pre-crossed modules')

    def __mul__(self, other: 'Rho2Word') -> 'Rho2Word':
        self._check(other)
        return Rho2Word(self.rank, self.n_relators,
                        self._letters + other._letters)

    def inverse(self) -> 'Rho2Word':
        return Rho2Word(self.rank, self.n_relators,
                        [(x, alpha, -eps)
                         for x, alpha, eps in reversed(self._letters)])

    def __pow__(self, k: int) -> 'Rho2Word':
        base = self if k >= 0 else self.inverse()
        return Rho2Word(self.rank, self.n_relators, base._letters * abs(k))

    def act(self, beta: FreeWord) -> 'Rho2Word':
        """Right action y ↦ y^β, rewriting every letter α·x to β⁻¹α·x."""
        inv = beta.inverse()
        return self.act_left(inv)

    def act_left(self, beta: FreeWord) -> 'Rho2Word':
        """Left action y ↦ β·y."""
        if beta.rank != self.rank:
            raise ValueError('Acting word lives over another alphabet')
        return Rho2Word(self.rank, self.n_relators,
                        [(x, beta * alpha, eps)
                         for x, alpha, eps in self._letters])

    def __len__(self) -> int:
        return len(self._letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rho2Word) and self.rank == other.rank\
            and self.n_relators == other.n_relators\
            and self._letters == other._letters

    def __hash__(self) -> int:
        return hash((self.rank, self.n_relators, self._letters))

    def format(self, gen_names: Optional[Sequence[str]] = None,
               rel_names: Optional[Sequence[str]] = None) -> str:
        if not self._letters:
            return '0'
        rel_names = rel_names or [f'x{k}' for k in range(self.n_relators)]
        parts = []
        for x, alpha, eps in self._letters:
            term = rel_names[x] if alpha.is_identity()\
                else f'({alpha.format(gen_names)}).{rel_names[x]}'
            parts.append(('+' if eps > 0 else '-') + term)
        return ' '.join(parts)

    def __repr__(self) -> str:
        return f'Rho2Word({self.format()})'


class PreCrossedModule:
    """
    Totally free pre-crossed module ∂_f: ρ₂ → ρ₁ with ρ₁ free on E₁,
    ρ₂ free on E₂ × ρ₁ and ∂(α·x) = α f(x) α⁻¹.
    """
    def __init__(self, n_gens: int, relators: Sequence[FreeWord],
                 gen_names: Optional[Sequence[str]] = None,
                 rel_names: Optional[Sequence[str]] = None, name: str = ''):
        for k, r in enumerate(relators):
            if r.rank != n_gens:
                raise ValueError(f'Relator {k} is a word over {r.rank}'
                                 f' generators, expected {n_gens}')
        self.n_gens = int(n_gens)
        self.relators = tuple(relators)
        self.gen_names = list(gen_names) if gen_names\
            else [f'a{k}' for k in range(n_gens)]
        self.rel_names = list(rel_names) if rel_names\
            else [f'x{k}' for k in range(len(relators))]
        self.name = name

    @property
    def n_relators(self) -> int:
        return len(self.relators)

    def word(self, letters: Iterable[Rho2Letter] = ()) -> Rho2Word:
        return Rho2Word(self.n_gens, self.n_relators, letters)

    def letter(self, x: int, alpha: Optional[FreeWord] = None) -> Rho2Word:
        return Rho2Word.generator(self.n_gens, self.n_relators, x, alpha)

    def free_word(self, letters: Iterable[Letter] = ()) -> FreeWord:
        return FreeWord(self.n_gens, letters)

    def boundary(self, word: Rho2Word) -> FreeWord:
        if word.rank != self.n_gens or word.n_relators != self.n_relators:
            raise ValueError('Word lives over another pre-crossed module')
        result = FreeWord.identity(self.n_gens)
        for x, alpha, eps in word.letters:
            result = result * alpha * (self.relators[x] ** eps) \
                * alpha.inverse()
        return result

    def __repr__(self) -> str:
        rels = ', '.join(f'{n} -> {r.format(self.gen_names)}'
                         for n, r in zip(self.rel_names, self.relators))
        return f'PreCrossedModule({self.name or "?"}: {rels})'


def peiffer_commutator(M: PreCrossedModule, x: Rho2Word,
                       y: Rho2Word) -> Rho2Word:
    """⟨x, y⟩ = −x − y + x + y^{∂x}, read left to right as a group word."""
    return x.inverse() * y.inverse() * x * y.act(M.boundary(x))
