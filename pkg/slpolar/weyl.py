"""Roots, Levi compositions and the Weyl group S_n of sl(n)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
import logging
from math import factorial, prod
from typing import Iterable, NamedTuple

from sympy.combinatorics import Permutation

from .const import MAX_WEYL_RANK
from .exceptions import CompositionMismatchError, WeylRankError

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Root:
    """The root e_i - e_j of sl(n), indices 1-based."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise ValueError(f"({self.i}, {self.j}) is not a root")

    @property
    def is_positive(self) -> bool:
        return self.i < self.j

    @property
    def is_simple(self) -> bool:
        return self.j == self.i + 1

    def __neg__(self) -> Root:
        return Root(self.j, self.i)

    def __str__(self) -> str:
        return f"e{self.i}-e{self.j}"


def all_roots(n: int) -> tuple[Root, ...]:
    return tuple(Root(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def positive_roots(n: int) -> tuple[Root, ...]:
    return tuple(root for root in all_roots(n) if root.is_positive)


def simple_roots(n: int) -> tuple[Root, ...]:
    return tuple(Root(i, i + 1) for i in range(1, n))


@dataclass(frozen=True)
class LeviComposition:
    """A composition (n_1, ..., n_s) of n giving the diagonal blocks of a standard Levi."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts or any(not isinstance(part, int) or part < 1 for part in self.parts):
            raise CompositionMismatchError(f"{self.parts!r} is not a composition")

    @classmethod
    def parse(cls, text: str) -> LeviComposition:
        """Parse a comma separated composition such as ``2,1``."""
        try:
            parts = tuple(int(part) for part in text.split(","))
        except ValueError as err:
            raise CompositionMismatchError(f"cannot parse composition {text!r}") from err
        return cls(parts)

    @classmethod
    def borel(cls, n: int) -> LeviComposition:
        return cls((1,) * n)

    @classmethod
    def whole(cls, n: int) -> LeviComposition:
        return cls((n,))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def is_borel(self) -> bool:
        return all(part == 1 for part in self.parts)

    @property
    def is_whole(self) -> bool:
        return len(self.parts) == 1

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        blocks = []
        start = 1
        for part in self.parts:
            blocks.append(tuple(range(start, start + part)))
            start += part
        return tuple(blocks)

    @cached_property
    def _block_map(self) -> dict[int, int]:
        return {i: b for b, block in enumerate(self.blocks) for i in block}

    def block_of(self, i: int) -> int:
        return self._block_map[i]

    def same_block(self, i: int, j: int) -> bool:
        return self._block_map[i] == self._block_map[j]

    def __str__(self) -> str:
        return ",".join(str(part) for part in self.parts)


def compositions(n: int) -> tuple[LeviComposition, ...]:
    """All 2^(n-1) compositions of n, in lexicographic order."""

    def _parts(total: int) -> Iterable[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in _parts(total - first):
                yield (first, *rest)

    return tuple(LeviComposition(parts) for parts in _parts(n))


@dataclass(frozen=True)
class WeylElement:
    """A permutation of {1..n}, stored as a 0-based sympy Permutation."""

    perm: Permutation

    @classmethod
    def of(cls, one_line: Iterable[int]) -> WeylElement:
        """Build from 1-based one-line notation, ``(w(1), ..., w(n))``."""
        return cls(Permutation([value - 1 for value in one_line]))

    @classmethod
    def identity(cls, n: int) -> WeylElement:
        return cls(Permutation(list(range(n))))

    @cached_property
    def one_line(self) -> tuple[int, ...]:
        return tuple(value + 1 for value in self.perm.array_form)

    @property
    def n(self) -> int:
        return self.perm.size

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1]

    def __mul__(self, other: WeylElement) -> WeylElement:
        """Composition, ``(self * other)(i) == self(other(i))``."""
        # sympy applies the left factor first
        return WeylElement(other.perm * self.perm)

    def inverse(self) -> WeylElement:
        return WeylElement(~self.perm)

    @property
    def length(self) -> int:
        return self.perm.inversions()

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word (k_1, ..., k_l) with w = s_k1 s_k2 ... s_kl."""
        values = list(self.one_line)
        swaps = []
        changed = True
        while changed:
            changed = False
            for k in range(1, len(values)):
                if values[k - 1] > values[k]:
                    values[k - 1], values[k] = values[k], values[k - 1]
                    swaps.append(k)
                    changed = True
        return tuple(reversed(swaps))

    def preserves_blocks(self, levi: LeviComposition) -> bool:
        return all(levi.block_of(self(i)) == levi.block_of(i) for i in range(1, self.n + 1))

    def __str__(self) -> str:
        return "[" + " ".join(str(value) for value in self.one_line) + "]"


def simple_reflection(n: int, k: int) -> WeylElement:
    """The transposition s_k = (k k+1)."""
    if not 1 <= k < n:
        raise ValueError(f"s_{k} is not a simple reflection of S_{n}")
    values = list(range(1, n + 1))
    values[k - 1], values[k] = values[k], values[k - 1]
    return WeylElement.of(values)


def from_word(n: int, word: Iterable[int]) -> WeylElement:
    element = WeylElement.identity(n)
    for k in word:
        element = element * simple_reflection(n, k)
    return element


def act(w: WeylElement, root: Root) -> Root:
    return Root(w(root.i), w(root.j))


def act_on_set(w: WeylElement, roots: Iterable[Root]) -> frozenset[Root]:
    return frozenset(act(w, root) for root in roots)


@lru_cache(maxsize=None)
def enumerate_weyl(n: int) -> tuple[WeylElement, ...]:
    """All n! elements of S_n, sorted by length and then one-line notation."""
    if n > MAX_WEYL_RANK:
        raise WeylRankError(f"S_{n} is too large to enumerate (n <= {MAX_WEYL_RANK})")
    elements = [WeylElement(Permutation(list(values))) for values in permutations(range(n))]
    elements.sort(key=lambda w: (w.length, w.one_line))
    _LOGGER.debug("Enumerated %s elements of S_%s", len(elements), n)
    return tuple(elements)


def weyl_subgroup(levi: LeviComposition) -> tuple[WeylElement, ...]:
    """W_l, the permutations preserving each block."""
    return tuple(w for w in enumerate_weyl(levi.n) if w.preserves_blocks(levi))


class Coset(NamedTuple):
    """A left coset w W_l with its minimal length representative."""

    representative: WeylElement
    elements: frozenset[WeylElement]


def cosets(levi: LeviComposition) -> tuple[Coset, ...]:
    """The left cosets of W_l in W, found by brute force."""
    subgroup = weyl_subgroup(levi)
    seen: set[WeylElement] = set()
    result = []
    for w in enumerate_weyl(levi.n):
        if w in seen:
            continue
        elements = frozenset(w * u for u in subgroup)
        seen.update(elements)
        result.append(Coset(w, elements))
    return tuple(result)


def coset_count(levi: LeviComposition) -> int:
    return len(cosets(levi))


def multinomial(levi: LeviComposition) -> int:
    """n! / (n_1! ... n_s!)."""
    return factorial(levi.n) // prod(factorial(part) for part in levi.parts)


def r_prime_plus(levi: LeviComposition) -> frozenset[Root]:
    """Positive roots whose root vectors lie in the nilradical."""
    return frozenset(root for root in positive_roots(levi.n) if not levi.same_block(root.i, root.j))


def r_levi(levi: LeviComposition) -> frozenset[Root]:
    """Roots of the Levi factor."""
    return frozenset(root for root in all_roots(levi.n) if levi.same_block(root.i, root.j))


def parabolic_roots(levi: LeviComposition) -> frozenset[Root]:
    return r_levi(levi) | r_prime_plus(levi)
