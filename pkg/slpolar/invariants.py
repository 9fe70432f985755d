"""Invariant polynomials, their differentials and polarizations.

The invariants are coefficients of characteristic polynomials. Their
gradients are the adjugate terms the Faddeev-LeVerrier recursion produces on
the way, so one pass gives every gradient at a point. Polarizations are read
off exact interpolating polynomials taken along a line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
import logging
from math import lcm
from typing import Callable, Sequence

from .algebra import GElement, LieAlgebraA
from .exact import ZERO, RatMatrix, Subspace, interpolate, span, vandermonde_solve
from .exceptions import InvariantIndexError
from .parabolic import LeviElement, ParabolicData
from .weyl import LeviComposition

_LOGGER = logging.getLogger(__name__)


@lru_cache(maxsize=16384)
def _faddeev_leverrier(
    entries: tuple[tuple[Fraction, ...], ...],
) -> tuple[int, tuple[int, ...], tuple[tuple[tuple[int, ...], ...], ...]]:
    """Run the recursion on d * m, with d clearing every denominator.

    Returns d, the integer coefficients of det(lambda - d m) and the integer
    matrices B_0..B_{n-1} with adj(lambda - d m) = sum B_k lambda^(n-1-k).
    """
    size = len(entries)
    denominator = lcm(1, *(a.denominator for row in entries for a in row))
    a = [[int(v * denominator) for v in row] for row in entries]
    coefficients = [1]
    m = [[int(i == j) for j in range(size)] for i in range(size)]
    terms = []
    # each division is exact
    for k in range(1, size + 1):
        terms.append(tuple(tuple(row) for row in m))
        am = [[sum(a[i][t] * m[t][j] for t in range(size)) for j in range(size)] for i in range(size)]
        c = -sum(am[i][i] for i in range(size)) // k
        coefficients.append(c)
        m = am
        for i in range(size):
            m[i][i] += c
    return denominator, tuple(coefficients), tuple(terms)


def _charpoly(entries: tuple[tuple[Fraction, ...], ...]) -> tuple[Fraction, ...]:
    denominator, coefficients, _ = _faddeev_leverrier(entries)
    return tuple(Fraction(c, denominator**k) for k, c in enumerate(coefficients))


def _charpoly_gradient_entries(entries: tuple[tuple[Fraction, ...], ...], k: int) -> tuple[tuple[Fraction, ...], ...]:
    # d c_k(m)(v) = -tr(B_{k-1} v), and B_{k-1} scales by d^(k-1)
    denominator, _, terms = _faddeev_leverrier(entries)
    scale = denominator ** (k - 1)
    return tuple(tuple(Fraction(-v, scale) for v in row) for row in terms[k - 1])


def charpoly_coefficients(m: RatMatrix) -> tuple[Fraction, ...]:
    """Coefficients (c_0, ..., c_n) with det(lambda I - m) = sum c_k lambda^(n-k)."""
    return _charpoly(m.entries)


def _charpoly_coefficient(m: RatMatrix, k: int) -> Fraction:
    return _charpoly(m.entries)[k]


def _charpoly_gradient(m: RatMatrix, k: int) -> RatMatrix:
    """The matrix G with d c_k(m)(v) = tr(G v) for every n x n matrix v."""
    return RatMatrix(m.rows, m.cols, _charpoly_gradient_entries(m.entries, k))


def _block(m: RatMatrix, start: int, size: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(row[start : start + size] for row in m.entries[start : start + size])


def _block_coefficient(m: RatMatrix, start: int, size: int, k: int) -> Fraction:
    return _charpoly(_block(m, start, size))[k]


def _block_gradient(m: RatMatrix, start: int, size: int, k: int) -> RatMatrix:
    rows = [[ZERO] * m.cols for _ in range(m.rows)]
    for i, row in enumerate(_charpoly_gradient_entries(_block(m, start, size), k)):
        rows[start + i][start : start + size] = row
    return RatMatrix(m.rows, m.cols, tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class InvariantPoly:
    """A homogeneous invariant polynomial, evaluated through a matrix function.

    ``gradient`` maps a matrix m to G with d f_m(v) = tr(G v). Without it,
    derivatives are interpolated along lines.
    """

    label: str
    degree: int
    evaluator: Callable[[RatMatrix], Fraction]
    gradient: Callable[[RatMatrix], RatMatrix] | None = None

    def __call__(self, g: LieAlgebraA, x: GElement) -> Fraction:
        return self.evaluator(g.to_matrix(x))


@lru_cache(maxsize=None)
def fundamental_invariants(g: LieAlgebraA) -> tuple[InvariantPoly, ...]:
    """p_1, ..., p_{n-1} of degrees 2, ..., n."""
    return tuple(
        InvariantPoly(
            f"p{i}",
            i + 1,
            partial(_charpoly_coefficient, k=i + 1),
            partial(_charpoly_gradient, k=i + 1),
        )
        for i in range(1, g.n)
    )


@lru_cache(maxsize=None)
def levi_invariants(levi: LeviComposition) -> tuple[InvariantPoly, ...]:
    """Generators of S(l)^L: block coefficients of degrees 1..n_j, minus one trace."""
    generators = []
    last = len(levi.parts) - 1
    for b, block in enumerate(levi.blocks):
        start = block[0] - 1
        size = len(block)
        for k in range(1, size + 1):
            if b == last and k == 1:
                # block traces sum to zero on l
                continue
            generators.append(
                InvariantPoly(
                    f"c{k}[{b + 1}]",
                    k,
                    partial(_block_coefficient, start=start, size=size, k=k),
                    partial(_block_gradient, start=start, size=size, k=k),
                )
            )
    return tuple(generators)


def _invariant(g: LieAlgebraA, i: int) -> InvariantPoly:
    if not 1 <= i <= g.rank:
        raise InvariantIndexError(f"invariant index {i} outside 1..{g.rank}")
    return fundamental_invariants(g)[i - 1]


def eval_invariant(g: LieAlgebraA, i: int, x: GElement) -> Fraction:
    return _invariant(g, i)(g, x)


def _nodes(count: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(t) for t in range(count))


def _derivative(g: LieAlgebraA, poly: InvariantPoly, x: GElement, v: GElement) -> Fraction:
    nodes = _nodes(poly.degree + 1)
    values = [poly(g, x + v * t) for t in nodes]
    return interpolate(nodes, values)[1]


def directional_derivative(g: LieAlgebraA, i: int, x: GElement, v: GElement) -> Fraction:
    """d/dt p_i(x + t v) at t = 0."""
    return _derivative(g, _invariant(g, i), x, v)


def _gradient(
    g: LieAlgebraA,
    poly: InvariantPoly,
    x: GElement,
    directions: Sequence[int],
    gram_inverse: RatMatrix,
) -> GElement:
    """The vector dual to d poly(x) under the trace form on span(directions)."""
    if poly.gradient is None:
        differential = [_derivative(g, poly, x, g.basis_vector(k)) for k in directions]
    else:
        pairing = g.trace_pairing(poly.gradient(g.to_matrix(x)))
        differential = [pairing[k] for k in directions]
    coefficients = gram_inverse.apply(differential)
    coords = [ZERO] * g.dim
    for k, c in zip(directions, coefficients):
        coords[k] = c
    return GElement(tuple(coords))


def epsilon(g: LieAlgebraA, i: int, x: GElement) -> GElement:
    """epsilon_i(x), with (epsilon_i(x), v) = d_x p_i(v) for every v."""
    return _gradient(g, _invariant(g, i), x, range(g.dim), g.gram_inverse)


def gradients(g: LieAlgebraA, x: GElement) -> tuple[GElement, ...]:
    return tuple(_gradient(g, poly, x, range(g.dim), g.gram_inverse) for poly in fundamental_invariants(g))


@dataclass(frozen=True)
class PolarizationTable:
    """Polarizations of one invariant at a pair (x, y).

    ``scalars[m]`` is the coefficient of t^m in F(x + t y) and ``vectors[m]``
    the coefficient of t^m in epsilon(x + t y).
    """

    label: str
    degree: int
    scalars: tuple[Fraction, ...]
    vectors: tuple[GElement, ...]


def _vector_polarizations(
    g: LieAlgebraA,
    poly: InvariantPoly,
    x: GElement,
    y: GElement,
    directions: Sequence[int],
    gram_inverse: RatMatrix,
) -> tuple[GElement, ...]:
    nodes = _nodes(poly.degree)
    samples = [_gradient(g, poly, x + y * t, directions, gram_inverse) for t in nodes]
    return tuple(GElement(coefficients) for coefficients in vandermonde_solve(nodes, samples))


def _polarize(
    g: LieAlgebraA,
    poly: InvariantPoly,
    x: GElement,
    y: GElement,
    directions: Sequence[int],
    gram_inverse: RatMatrix,
) -> PolarizationTable:
    nodes = _nodes(poly.degree + 1)
    scalars = interpolate(nodes, [poly(g, x + y * t) for t in nodes])
    return PolarizationTable(
        poly.label,
        poly.degree,
        scalars,
        _vector_polarizations(g, poly, x, y, directions, gram_inverse),
    )


def polarize(g: LieAlgebraA, i: int, x: GElement, y: GElement) -> PolarizationTable:
    return _polarize(g, _invariant(g, i), x, y, range(g.dim), g.gram_inverse)


def v_space(g: LieAlgebraA, x: GElement, y: GElement) -> Subspace:
    """V_{x,y}, spanned by the vector polarizations of every fundamental invariant."""
    vectors = []
    for poly in fundamental_invariants(g):
        vectors.extend(v.coords for v in _vector_polarizations(g, poly, x, y, range(g.dim), g.gram_inverse))
    space = span(vectors, g.dim)
    _LOGGER.debug("V_{x,y} in sl(%s) has dimension %s", g.n, space.rank)
    return space


def v_space_levi(
    p: ParabolicData,
    x: LeviElement,
    y: LeviElement,
    generators: Sequence[InvariantPoly] | None = None,
) -> Subspace:
    """V^l_{x,y} inside l, built from the Levi invariants and the trace form on l.

    Returned in g coordinates.
    """
    g = p.algebra
    if generators is None:
        generators = levi_invariants(p.levi)
    vectors = []
    for poly in generators:
        vectors.extend(
            v.coords for v in _vector_polarizations(g, poly, x, y, p.l_indices, p.l_gram_inverse)
        )
    return span(vectors, g.dim)

