"""The Lie algebra sl(n) with its Chevalley-style basis."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
import logging
from typing import TYPE_CHECKING, Any, Iterable, Sequence

import numpy as np

from .const import GENERICITY_DRAWS, MAX_RANK, MIN_RANK
from .exact import (
    ZERO,
    RatMatrix,
    RatVector,
    Subspace,
    inverse,
    kernel,
    rank,
    span,
    to_rational,
    unit_vector,
    vector,
)
from .exceptions import (
    DimensionMismatchError,
    NotInAlgebraError,
    NotInNilradicalError,
    NotNilpotentError,
    RankOutOfRangeError,
)

if TYPE_CHECKING:
    from .parabolic import ParabolicData

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class GElement:
    """An element of sl(n) given by its coordinates over the standard basis."""

    coords: RatVector

    @classmethod
    def of(cls, values: Iterable[Any]) -> GElement:
        return cls(vector(values))

    def __add__(self, other: GElement) -> GElement:
        self._same_length(other)
        return GElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: GElement) -> GElement:
        self._same_length(other)
        return GElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def _same_length(self, other: GElement) -> None:
        if len(self.coords) != len(other.coords):
            raise DimensionMismatchError(
                f"cannot combine elements with {len(self.coords)} and {len(other.coords)} coordinates"
            )

    def __neg__(self) -> GElement:
        return GElement(tuple(-a for a in self.coords))

    def __mul__(self, factor: Any) -> GElement:
        factor = to_rational(factor)
        return GElement(tuple(factor * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.coords) + ")"


class LieAlgebraA:
    """sl(n) over Q.

    The basis is the root vectors E_ij (i != j, 1-based, lexicographic)
    followed by the Cartan elements h_k = E_kk - E_{k+1,k+1}.
    """

    def __init__(self, n: int) -> None:
        """Initialize the basis tables for sl(n)."""
        if not MIN_RANK <= n <= MAX_RANK:
            raise RankOutOfRangeError(f"n must be between {MIN_RANK} and {MAX_RANK}, got {n}")
        self.n = n
        self.rank = n - 1
        self.root_pairs: tuple[tuple[int, int], ...] = tuple(
            (i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j
        )
        self.root_index: dict[tuple[int, int], int] = {pair: k for k, pair in enumerate(self.root_pairs)}
        self.h_indices: tuple[int, ...] = tuple(range(len(self.root_pairs), n * n - 1))
        self.dim = n * n - 1
        self.labels: tuple[str, ...] = tuple(f"E{i}{j}" for i, j in self.root_pairs) + tuple(
            f"h{k}" for k in range(1, n)
        )
        self.b_indices: tuple[int, ...] = tuple(
            sorted([self.root_index[(i, j)] for i, j in self.root_pairs if i < j] + list(self.h_indices))
        )
        _LOGGER.debug("Built sl(%s) with dimension %s", n, self.dim)

    def __repr__(self) -> str:
        return f"LieAlgebraA(n={self.n})"

    def basis_vector(self, index: int) -> GElement:
        return GElement(unit_vector(self.dim, index))

    def basis_element(self, label: str) -> GElement:
        """Look up a basis element by label, such as ``E12`` or ``h1``."""
        try:
            return self.basis_vector(self.labels.index(label))
        except ValueError as err:
            raise NotInAlgebraError(f"sl({self.n}) has no basis element {label!r}") from err

    def zero(self) -> GElement:
        return GElement((ZERO,) * self.dim)

    def to_matrix(self, x: GElement) -> RatMatrix:
        return RatMatrix(self.n, self.n, tuple(tuple(row) for row in self._matrix_rows(x.coords)))

    def _matrix_rows(self, coords: Sequence[Fraction]) -> list[list[Fraction]]:
        n = self.n
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), c in zip(self.root_pairs, coords):
            if c:
                rows[i - 1][j - 1] = c
        for k, index in enumerate(self.h_indices):
            c = coords[index]
            if c:
                rows[k][k] += c
                rows[k + 1][k + 1] -= c
        return rows

    def from_matrix(self, m: RatMatrix | Sequence[Sequence[Any]]) -> GElement:
        """Coordinates of a traceless n x n matrix."""
        rows = m.entries if isinstance(m, RatMatrix) else tuple(vector(row) for row in m)
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise NotInAlgebraError(f"expected a {self.n}x{self.n} matrix")
        return GElement(self._coords_of(rows))

    def _coords_of(self, rows: Sequence[Sequence[Fraction]]) -> RatVector:
        if sum((rows[k][k] for k in range(self.n)), ZERO) != 0:
            raise NotInAlgebraError("matrix has nonzero trace")
        coords = [rows[i - 1][j - 1] for i, j in self.root_pairs]
        running = ZERO
        for k in range(self.rank):
            running += rows[k][k]
            coords.append(running)
        return tuple(coords)

    def element(self, rows: Sequence[Sequence[Any]]) -> GElement:
        return self.from_matrix(rows)

    def bracket(self, x: GElement, y: GElement) -> GElement:
        a = self._matrix_rows(x.coords)
        b = self._matrix_rows(y.coords)
        n = self.n
        rows = [
            [
                sum((a[i][k] * b[k][j] - b[i][k] * a[k][j] for k in range(n)), ZERO)
                for j in range(n)
            ]
            for i in range(n)
        ]
        return GElement(self._coords_of(rows))

    def _ad_unit(self, a: list[list[Fraction]], p: int, q: int) -> list[list[Fraction]]:
        # [X, E_pq] = X E_pq - E_pq X, 0-based indices
        n = self.n
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            rows[i][q] += a[i][p]
        for j in range(n):
            rows[p][j] -= a[q][j]
        return rows

    def ad_matrix(self, x: GElement) -> RatMatrix:
        """Matrix of ad(x) over the basis; column k is [x, basis_k]."""
        a = self._matrix_rows(x.coords)
        columns = [self._coords_of(self._ad_unit(a, i - 1, j - 1)) for i, j in self.root_pairs]
        for k in range(self.rank):
            upper = self._ad_unit(a, k, k)
            lower = self._ad_unit(a, k + 1, k + 1)
            columns.append(
                self._coords_of([[u - v for u, v in zip(ru, rv)] for ru, rv in zip(upper, lower)])
            )
        return RatMatrix.from_columns(columns, self.dim)

    def invariant_form(self, x: GElement, y: GElement) -> Fraction:
        """The trace form tr(xy)."""
        a = self._matrix_rows(x.coords)
        b = self._matrix_rows(y.coords)
        n = self.n
        return sum((a[i][j] * b[j][i] for i in range(n) for j in range(n) if a[i][j]), ZERO)

    def trace_pairing(self, m: RatMatrix) -> RatVector:
        """tr(m b_k) for every basis element b_k, for any n x n matrix m."""
        entries = m.entries
        values = [entries[j - 1][i - 1] for i, j in self.root_pairs]
        values.extend(entries[k][k] - entries[k + 1][k + 1] for k in range(self.rank))
        return tuple(values)

    @cached_property
    def gram(self) -> RatMatrix:
        return RatMatrix.from_rows(
            (
                [self.invariant_form(self.basis_vector(i), self.basis_vector(j)) for j in range(self.dim)]
                for i in range(self.dim)
            ),
            cols=self.dim,
        )

    @cached_property
    def gram_inverse(self) -> RatMatrix:
        return inverse(self.gram)

    def restricted_gram_inverse(self, indices: Sequence[int]) -> RatMatrix:
        """Inverse of the trace form restricted to the span of some basis vectors."""
        gram = self.gram
        return inverse(RatMatrix.from_rows(([gram[i, j] for j in indices] for i in indices), cols=len(indices)))

    def centralizer(self, x: GElement) -> Subspace:
        return kernel(self.ad_matrix(x))

    def is_regular(self, x: GElement) -> bool:
        return rank(self.ad_matrix(x)) == self.dim - self.rank

    def is_nilpotent(self, x: GElement) -> bool:
        m = self.to_matrix(x)
        power = m
        for _ in range(self.n - 1):
            power = power @ m
        return power.is_zero()

    def is_richardson(self, x: GElement, p: ParabolicData) -> bool:
        """Whether x in the nilradical of p has a dense orbit under the parabolic group."""
        if not p.pu.contains(x):
            raise NotInNilradicalError(f"{x} is not in the nilradical of p_{p.levi}")
        return self.centralizer(x).rank == self.dim - 2 * p.pu.rank

    def conjugate_unipotent(self, x: GElement, root_vector: GElement, t: Any) -> GElement:
        """Return exp(t ad(root_vector)) x for an ad-nilpotent root_vector."""
        if not self.is_nilpotent(root_vector):
            raise NotNilpotentError(f"{root_vector} is not nilpotent")
        t = to_rational(t)
        result = x
        term = x
        for j in range(1, 2 * self.n):
            term = self.bracket(root_vector, term) * (t / j)
            if term.is_zero():
                break
            result = result + term
        return result

    def principal_triple(self) -> tuple[GElement, GElement, GElement]:
        """The principal sl(2) triple (e, h, f) with [h, e] = 2e and [e, f] = h."""
        n = self.n
        e = self.zero()
        f = self.zero()
        for i in range(1, n):
            e = e + self.basis_vector(self.root_index[(i, i + 1)])
            f = f + self.basis_vector(self.root_index[(i + 1, i)]) * (i * (n - i))
        h = self.from_matrix(RatMatrix.diagonal([n - 1 - 2 * k for k in range(n)]))
        return e, h, f

    def in_omega(self, x: GElement, y: GElement, rng: np.random.Generator, bound: int) -> bool:
        """Test whether the plane spanned by x and y is made of regular elements.

        x and y themselves are tested first, then a few random points
        a x + b y, so a True answer is probabilistic.
        """
        if span([x.coords, y.coords], self.dim).rank != 2:
            return False
        if not (self.is_regular(x) and self.is_regular(y)):
            return False
        for _ in range(GENERICITY_DRAWS):
            a, b = nonzero_integers(rng, bound, 2)
            if not self.is_regular(x * a + y * b):
                return False
        return True


def nonzero_integers(rng: np.random.Generator, bound: int, size: int) -> list[int]:
    """Uniform draws from the nonzero integers in [-bound, bound]."""
    draws = rng.integers(0, 2 * bound, size=size)
    return [int(d) - bound if d < bound else int(d) - bound + 1 for d in draws]


@lru_cache(maxsize=None)
def build_sl(n: int) -> LieAlgebraA:
    return LieAlgebraA(n)
