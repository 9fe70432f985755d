"""Exact rational linear algebra.

Everything here works on ``fractions.Fraction`` values and immutable
containers, so results can be shared freely between threads and processes.
Subspaces are kept in reduced row echelon form, which makes equality of
subspaces a plain comparison of their basis matrices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Sequence

from typing_extensions import TypeAlias

from .exceptions import (
    DimensionMismatchError,
    DuplicateNodesError,
    NoSolutionError,
    SingularMatrixError,
)

_LOGGER = logging.getLogger(__name__)

Rational: TypeAlias = Fraction
RatVector: TypeAlias = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: Any) -> Fraction:
    """Convert an int, str or Fraction to a Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def vector(values: Iterable[Any]) -> RatVector:
    """Build a rational vector from anything Fraction accepts."""
    return tuple(to_rational(v) for v in values)


def zero_vector(size: int) -> RatVector:
    return (ZERO,) * size


def unit_vector(size: int, index: int) -> RatVector:
    return tuple(ONE if k == index else ZERO for k in range(size))


def _as_vector(value: Any) -> Sequence[Fraction]:
    # Lie algebra elements carry their coordinates in ``coords``
    return getattr(value, "coords", value)


@dataclass(frozen=True)
class RatMatrix:
    """A dense row-major matrix of rationals."""

    rows: int
    cols: int
    entries: tuple[RatVector, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise DimensionMismatchError(
                f"expected {self.rows}x{self.cols} entries, got {[len(row) for row in self.entries]}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Any]], cols: int | None = None) -> RatMatrix:
        """Build a matrix from its rows; ``cols`` is needed when there are no rows."""
        entries = tuple(vector(row) for row in rows)
        if cols is None:
            if not entries:
                raise DimensionMismatchError("column count needed for a matrix without rows")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Any]], rows: int) -> RatMatrix:
        columns = [vector(column) for column in columns]
        if any(len(column) != rows for column in columns):
            raise DimensionMismatchError(f"every column must have {rows} entries")
        return cls(rows, len(columns), tuple(tuple(column[i] for column in columns) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> RatMatrix:
        return cls(size, size, tuple(unit_vector(size, i) for i in range(size)))

    @classmethod
    def diagonal(cls, values: Sequence[Any]) -> RatMatrix:
        size = len(values)
        return cls.from_rows(
            ([values[i] if i == j else 0 for j in range(size)] for i in range(size)), cols=size
        )

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> RatVector:
        return self.entries[i]

    def column(self, j: int) -> RatVector:
        return tuple(row[j] for row in self.entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def transpose(self) -> RatMatrix:
        return RatMatrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def apply(self, values: Sequence[Any]) -> RatVector:
        """Return the product of this matrix with a column vector."""
        values = _as_vector(values)
        if len(values) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(values)} for {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(row, values) if a and b), ZERO) for row in self.entries)

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = [other.column(j) for j in range(other.cols)]
        return RatMatrix(
            self.rows,
            other.cols,
            tuple(
                tuple(sum((a * b for a, b in zip(row, column) if a and b), ZERO) for column in columns)
                for row in self.entries
            ),
        )

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def scale(self, factor: Any) -> RatMatrix:
        factor = to_rational(factor)
        return RatMatrix(self.rows, self.cols, tuple(tuple(factor * a for a in row) for row in self.entries))

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def _same_shape(self, other: RatMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f"shape {self.rows}x{self.cols} does not match {other.rows}x{other.cols}"
            )

    def __str__(self) -> str:
        return "[" + ", ".join("(" + ", ".join(str(a) for a in row) + ")" for row in self.entries) + "]"


def _row_reduce(rows: list[list[Fraction]], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan elimination on a list of rows.

    Returns the nonzero rows of the reduced row echelon form and the pivot
    column of each of them.
    """
    pivots: list[int] = []
    nrows = len(rows)
    r = 0
    for c in range(cols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c]:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        pivot_row = rows[r]
        lead = pivot_row[c]
        if lead != 1:
            pivot_row = [a / lead for a in pivot_row]
            rows[r] = pivot_row
        # entries left of a pivot are already zero in the pivot row
        tail = pivot_row[c:]
        for k in range(nrows):
            if k == r:
                continue
            row = rows[k]
            factor = row[c]
            if factor:
                rows[k] = row[:c] + [a - factor * b for a, b in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _reduce(m: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    rows, pivots = _row_reduce([list(row) for row in m.entries], m.cols)
    return RatMatrix(len(rows), m.cols, tuple(tuple(row) for row in rows)), tuple(pivots)


def rref(m: RatMatrix) -> tuple[RatMatrix, int]:
    """Return the reduced row echelon form of ``m`` without zero rows, and its rank."""
    reduced, pivots = _reduce(m)
    return reduced, len(pivots)


def rank(m: RatMatrix) -> int:
    return rref(m)[1]


def solve_linear(a: RatMatrix, b: Sequence[Any]) -> RatVector:
    """Return an exact solution of ``a x = b``.

    When ``a`` does not have full column rank the free variables are set to
    zero. Raises NoSolutionError for an inconsistent system.
    """
    b = vector(_as_vector(b))
    if len(b) != a.rows:
        raise DimensionMismatchError(f"right-hand side of length {len(b)} for {a.rows} equations")
    augmented = [list(row) + [value] for row, value in zip(a.entries, b)]
    rows, pivots = _row_reduce(augmented, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        raise NoSolutionError("inconsistent linear system")
    solution = [ZERO] * a.cols
    for row, c in zip(rows, pivots):
        solution[c] = row[-1]
    return tuple(solution)


def inverse(m: RatMatrix) -> RatMatrix:
    """Return the inverse of a square matrix."""
    if not m.is_square:
        raise SingularMatrixError(f"a {m.rows}x{m.cols} matrix has no inverse")
    size = m.rows
    augmented = [list(row) + list(unit_vector(size, i)) for i, row in enumerate(m.entries)]
    rows, pivots = _row_reduce(augmented, 2 * size)
    if pivots[:size] != list(range(size)) or len(rows) < size:
        raise SingularMatrixError("matrix is singular")
    return RatMatrix(size, size, tuple(tuple(row[size:]) for row in rows))


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim with its canonical RREF basis."""

    ambient_dim: int
    basis: RatMatrix
    pivots: tuple[int, ...] = field(compare=False, repr=False)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RatMatrix(0, ambient_dim, ()), ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RatMatrix.identity(ambient_dim), tuple(range(ambient_dim)))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> Subspace:
        """The span of the unit vectors with the given indices."""
        indices = tuple(sorted(set(indices)))
        return cls(
            ambient_dim,
            RatMatrix(len(indices), ambient_dim, tuple(unit_vector(ambient_dim, k) for k in indices)),
            indices,
        )

    @property
    def rank(self) -> int:
        return self.basis.rows

    dim = rank

    def vectors(self) -> tuple[RatVector, ...]:
        return self.basis.entries

    def _residue(self, values: Sequence[Fraction]) -> list[Fraction]:
        residue = list(values)
        for row, c in zip(self.basis.entries, self.pivots):
            factor = residue[c]
            if factor:
                residue = [a - factor * b for a, b in zip(residue, row)]
        return residue

    def contains(self, value: Any) -> bool:
        values = _as_vector(value)
        if len(values) != self.ambient_dim:
            raise DimensionMismatchError(f"vector of length {len(values)} in a space of dimension {self.ambient_dim}")
        return not any(self._residue(values))

    __contains__ = contains

    def coordinates(self, value: Any) -> RatVector:
        """Coefficients of ``value`` over the basis rows."""
        values = _as_vector(value)
        if not self.contains(values):
            raise NoSolutionError("vector is not in the subspace")
        return tuple(to_rational(values[c]) for c in self.pivots)

    def __le__(self, other: Subspace) -> bool:
        self._same_ambient(other)
        return all(other.contains(row) for row in self.basis.entries)

    issubspace = __le__

    def __add__(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        return span(self.basis.entries + other.basis.entries, self.ambient_dim)

    def __and__(self, other: Subspace) -> Subspace:
        """Intersection, from the kernel of [A^T | -B^T]."""
        self._same_ambient(other)
        if not self.rank or not other.rank:
            return Subspace.zero(self.ambient_dim)
        columns = list(self.basis.entries) + [tuple(-a for a in row) for row in other.basis.entries]
        relations = kernel(RatMatrix.from_columns(columns, self.ambient_dim))
        combos = []
        for relation in relations.vectors():
            coefficients = relation[: self.rank]
            combos.append(
                tuple(
                    sum((c * row[k] for c, row in zip(coefficients, self.basis.entries) if c), ZERO)
                    for k in range(self.ambient_dim)
                )
            )
        return span(combos, self.ambient_dim)

    intersection = __and__

    def image(self, func: Callable[[RatVector], Sequence[Any]], target_dim: int | None = None) -> Subspace:
        """The image of this subspace under a linear map given on vectors."""
        images = [vector(_as_vector(func(row))) for row in self.basis.entries]
        if target_dim is None:
            target_dim = len(images[0]) if images else self.ambient_dim
        return span(images, target_dim)

    def _same_ambient(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(
                f"subspaces of Q^{self.ambient_dim} and Q^{other.ambient_dim} cannot be compared"
            )


def span(vectors: Iterable[Any], ambient_dim: int) -> Subspace:
    """The canonical subspace spanned by ``vectors``."""
    rows = [list(vector(_as_vector(v))) for v in vectors]
    for row in rows:
        if len(row) != ambient_dim:
            raise DimensionMismatchError(f"vector of length {len(row)} in a space of dimension {ambient_dim}")
    reduced, pivots = _row_reduce(rows, ambient_dim)
    return Subspace(ambient_dim, RatMatrix(len(reduced), ambient_dim, tuple(tuple(r) for r in reduced)), tuple(pivots))


def kernel(m: RatMatrix) -> Subspace:
    """The subspace of vectors v with m v = 0."""
    reduced, pivots = _reduce(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for row, c in zip(reduced.entries, pivots):
            v[c] = -row[free]
        basis.append(v)
    return span(basis, m.cols)


@lru_cache(maxsize=64)
def _vandermonde_inverse(nodes: tuple[Fraction, ...]) -> RatMatrix:
    size = len(nodes)
    return inverse(RatMatrix.from_rows(([t**k for k in range(size)] for t in nodes), cols=size))


def _check_nodes(nodes: Sequence[Any], values: Sequence[Any]) -> tuple[Fraction, ...]:
    nodes = vector(nodes)
    if len(set(nodes)) != len(nodes):
        raise DuplicateNodesError(f"interpolation nodes must be distinct, got {[str(t) for t in nodes]}")
    if len(nodes) != len(values):
        raise DimensionMismatchError(f"{len(nodes)} nodes for {len(values)} values")
    return nodes


def interpolate(nodes: Sequence[Any], values: Sequence[Any]) -> RatVector:
    """Coefficients c_0..c_d of the scalar polynomial of degree <= d through the data."""
    nodes = _check_nodes(nodes, values)
    if not nodes:
        return ()
    return _vandermonde_inverse(nodes).apply(vector(values))


def vandermonde_solve(nodes: Sequence[Any], values: Sequence[Sequence[Any]]) -> list[RatVector]:
    """Coefficient vectors of the vector-valued polynomial through the data."""
    nodes = _check_nodes(nodes, values)
    if not nodes:
        return []
    values = [vector(_as_vector(v)) for v in values]
    width = len(values[0])
    if any(len(v) != width for v in values):
        raise DimensionMismatchError("interpolated vectors must have the same length")
    weights = _vandermonde_inverse(nodes).entries
    return [
        tuple(sum((w * v[k] for w, v in zip(weight_row, values) if w and v[k]), ZERO) for k in range(width))
        for weight_row in weights
    ]


def evaluate_polynomial(coefficients: Sequence[Any], t: Any) -> Any:
    """Horner evaluation; works for scalar or vector (tuple) coefficients."""
    t = to_rational(t)
    if not coefficients:
        return ZERO
    if isinstance(coefficients[0], tuple):
        result = [ZERO] * len(coefficients[0])
        for c in reversed(coefficients):
            result = [t * a + b for a, b in zip(result, c)]
        return tuple(result)
    result = ZERO
    for c in reversed(coefficients):
        result = t * result + c
    return result
