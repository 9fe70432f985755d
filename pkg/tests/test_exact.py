"""Tests for the exact rational linear algebra kernel."""

from fractions import Fraction

from hypothesis import given, settings
import pytest

from slpolar.exact import (
    RatMatrix,
    Subspace,
    evaluate_polynomial,
    interpolate,
    inverse,
    kernel,
    rank,
    rref,
    solve_linear,
    span,
    vandermonde_solve,
)
from slpolar.exceptions import (
    DimensionMismatchError,
    DuplicateNodesError,
    NoSolutionError,
    SingularMatrixError,
)

from .helpers import rational_matrices

F = Fraction


class TestRref:
    def test_identity(self):
        reduced, r = rref(RatMatrix.identity(3))
        assert reduced == RatMatrix.identity(3)
        assert r == 3

    def test_zero_keeps_no_rows(self):
        reduced, r = rref(RatMatrix.zeros(2, 4))
        assert reduced.rows == 0
        assert reduced.cols == 4
        assert r == 0

    def test_dependent_rows(self):
        reduced, r = rref(RatMatrix.from_rows([[1, 2], [2, 4]]))
        assert reduced == RatMatrix.from_rows([[1, 2]])
        assert r == 1

    def test_fractions_stay_exact(self):
        reduced, _ = rref(RatMatrix.from_rows([[3, 1], [1, 1]]))
        assert reduced == RatMatrix.identity(2)
        reduced, _ = rref(RatMatrix.from_rows([[3, 1]]))
        assert reduced.row(0) == (F(1), F(1, 3))

    @settings(max_examples=60, deadline=None)
    @given(rows=rational_matrices())
    def test_idempotent(self, rows):
        """Reducing a reduced matrix changes nothing."""
        reduced, r = rref(RatMatrix.from_rows(rows))
        again, r2 = rref(reduced)
        assert again == reduced
        assert r2 == r

    @settings(max_examples=60, deadline=None)
    @given(rows=rational_matrices())
    def test_rank_nullity(self, rows):
        m = RatMatrix.from_rows(rows)
        assert rank(m) + kernel(m).rank == m.cols


class TestSolveLinear:
    def test_identity_system(self):
        assert solve_linear(RatMatrix.identity(2), [3, -5]) == (F(3), F(-5))

    def test_vandermonde_system(self):
        a = RatMatrix.from_rows([[1, 0, 0], [1, 1, 1], [1, 2, 4]])
        assert solve_linear(a, [0, 1, 4]) == (F(0), F(0), F(1))

    def test_inconsistent(self):
        with pytest.raises(NoSolutionError):
            solve_linear(RatMatrix.from_rows([[1, 1], [2, 2]]), [1, 3])

    def test_underdetermined_sets_free_variables_to_zero(self):
        assert solve_linear(RatMatrix.from_rows([[1, 1]]), [2]) == (F(2), F(0))

    def test_wrong_length(self):
        with pytest.raises(DimensionMismatchError):
            solve_linear(RatMatrix.identity(2), [1, 2, 3])

    @settings(max_examples=40, deadline=None)
    @given(rows=rational_matrices(max_rows=5, max_cols=5))
    def test_solution_satisfies_system(self, rows):
        a = RatMatrix.from_rows(rows)
        b = a.apply([F(k + 1) for k in range(a.cols)])
        assert a.apply(solve_linear(a, b)) == b


class TestInverse:
    def test_two_by_two(self):
        m = RatMatrix.from_rows([[2, 1], [1, 1]])
        assert inverse(m) == RatMatrix.from_rows([[1, -1], [-1, 2]])
        assert m @ inverse(m) == RatMatrix.identity(2)

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            inverse(RatMatrix.from_rows([[1, 2], [2, 4]]))

    def test_not_square(self):
        with pytest.raises(SingularMatrixError):
            inverse(RatMatrix.zeros(2, 3))


class TestKernel:
    def test_zero_matrix(self):
        assert kernel(RatMatrix.zeros(2, 2)) == Subspace.full(2)

    def test_identity(self):
        assert kernel(RatMatrix.identity(3)).rank == 0

    def test_diagonal_with_a_zero(self):
        # ad(h) on sl(2) in the order (E12, E21, h1)
        assert kernel(RatMatrix.diagonal([2, -2, 0])) == span([[0, 0, 1]], 3)

    @settings(max_examples=40, deadline=None)
    @given(rows=rational_matrices())
    def test_kernel_vectors_are_annihilated(self, rows):
        m = RatMatrix.from_rows(rows)
        for v in kernel(m).vectors():
            assert not any(m.apply(v))


class TestSubspace:
    def test_span_of_standard_basis(self):
        assert span([[1, 0], [0, 1]], 2).rank == 2

    def test_empty_span(self):
        assert span([], 3) == Subspace.zero(3)

    def test_dependent_set(self):
        assert span([[1, 1], [2, 2], [0, 3]], 2) == Subspace.full(2)

    def test_equality_does_not_depend_on_spanning_set(self):
        assert span([[1, 2, 0], [0, 1, 1]], 3) == span([[1, 3, 1], [2, 5, 1]], 3)

    def test_wrong_ambient_dimension(self):
        with pytest.raises(DimensionMismatchError):
            span([[1, 2]], 3)

    def test_containment_and_coordinates(self):
        plane = span([[1, 0, 1], [0, 1, 1]], 3)
        assert plane.contains([2, 3, 5])
        assert not plane.contains([0, 0, 1])
        assert plane.coordinates([2, 3, 5]) == (F(2), F(3))
        with pytest.raises(NoSolutionError):
            plane.coordinates([0, 0, 1])

    def test_sum_and_intersection(self):
        xy = span([[1, 0, 0], [0, 1, 0]], 3)
        yz = span([[0, 1, 0], [0, 0, 1]], 3)
        assert xy + yz == Subspace.full(3)
        assert xy & yz == span([[0, 1, 0]], 3)
        assert (xy & Subspace.zero(3)).rank == 0

    def test_ordering(self):
        line = span([[1, 1, 0]], 3)
        plane = span([[1, 0, 0], [0, 1, 0]], 3)
        assert line <= plane
        assert not plane <= line

    def test_image(self):
        plane = Subspace.coordinate(3, [0, 1])
        assert plane.image(lambda v: (v[0], F(0), v[1])) == Subspace.coordinate(3, [0, 2])

    @settings(max_examples=40, deadline=None)
    @given(a=rational_matrices(max_rows=3, max_cols=4), b=rational_matrices(max_rows=3, max_cols=4))
    def test_dimension_formula(self, a, b):
        """dim(U + V) + dim(U & V) = dim U + dim V."""
        cols = min(len(a[0]), len(b[0]))
        u = span([row[:cols] for row in a], cols)
        v = span([row[:cols] for row in b], cols)
        assert (u + v).rank + (u & v).rank == u.rank + v.rank


class TestInterpolation:
    def test_linear_fit(self):
        assert interpolate([0, 1], [5, 7]) == (F(5), F(2))

    def test_constant(self):
        assert interpolate([0, 1, 2], [1, 1, 1]) == (F(1), F(0), F(0))

    def test_vector_monomials(self):
        nodes = [0, 1, -1]
        values = [(F(t * t), F(t)) for t in nodes]
        assert vandermonde_solve(nodes, values) == [(F(0), F(0)), (F(0), F(1)), (F(1), F(0))]

    def test_duplicate_nodes(self):
        with pytest.raises(DuplicateNodesError):
            interpolate([0, 1, 1], [1, 2, 3])

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            interpolate([0, 1], [1, 2, 3])

    def test_reevaluation_reproduces_values(self):
        nodes = [F(0), F(1), F(2), F(-3)]
        values = [F(7), F(-1, 2), F(4), F(11, 3)]
        coefficients = interpolate(nodes, values)
        assert [evaluate_polynomial(coefficients, t) for t in nodes] == values
