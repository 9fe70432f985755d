"""Tests for standard parabolics, the projection to l and sampling."""

from fractions import Fraction

import numpy as np
import pytest

from slpolar.algebra import GElement, build_sl
from slpolar.const import RESAMPLE_CAP
from slpolar.exact import RatMatrix, Subspace
from slpolar.exceptions import (
    CompositionMismatchError,
    ConfigError,
    DegenerateSamplingError,
    NotInParabolicError,
)
from slpolar.parabolic import (
    build_parabolic,
    in_R_p,
    in_R_prime_p,
    is_levi_regular,
    levi_centralizer,
    project_subspace,
    sample_in,
    sample_regular_diagonal,
    sample_regular_semisimple,
    sample_until,
    translate,
    trial_rng,
    varpi,
)
from slpolar.weyl import LeviComposition, WeylElement, compositions, enumerate_weyl, weyl_subgroup

from .helpers import parabolic, random_in_p


class TestBuild:
    @pytest.mark.parametrize(
        ("n", "levi", "dim_p", "dim_l", "dim_pu", "b_l"),
        [
            (2, "1,1", 2, 1, 1, 1),
            (3, "1,1,1", 5, 2, 3, 2),
            (3, "2,1", 6, 4, 2, 3),
            (3, "3", 8, 8, 0, 5),
            (4, "2,2", 11, 7, 4, 5),
            (4, "1,2,1", 10, 5, 5, 4),
        ],
    )
    def test_dimensions(self, n, levi, dim_p, dim_l, dim_pu, b_l):
        p = parabolic(n, levi)
        assert (p.p.rank, p.l.rank, p.pu.rank, p.b_l) == (dim_p, dim_l, dim_pu, b_l)
        assert p.pminus.rank == dim_p
        assert p.pminus_u.rank == dim_pu

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_decompositions(self, n):
        g = build_sl(n)
        for levi in compositions(n):
            p = build_parabolic(g, levi)
            assert p.l + p.pu == p.p
            assert (p.l & p.pu).rank == 0
            assert p.p & p.pminus == p.l
            assert p.p + p.pminus_u == Subspace.full(g.dim)
            assert p.b_g == n * (n + 1) // 2 - 1

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_b_g_splits_over_the_nilradical(self, n):
        g = build_sl(n)
        assert g.rank + (g.dim - g.rank) // 2 == len(g.b_indices)
        for levi in compositions(n):
            p = build_parabolic(g, levi)
            assert p.b_g == p.b_l + p.pu.rank
            assert p.b_l == sum(part * (part + 1) // 2 for part in levi.parts) - 1

    @pytest.mark.parametrize("levi", [str(levi) for levi in compositions(4)])
    def test_levi_and_nilradical_brackets(self, levi):
        p = parabolic(4, levi)
        g = p.algebra
        levi_basis = [GElement(v) for v in p.l.vectors()]
        for a in levi_basis:
            for b in levi_basis:
                assert p.l.contains(g.bracket(a, b))
        for a in p.p.vectors():
            for b in p.pu.vectors():
                assert p.pu.contains(g.bracket(GElement(a), GElement(b)))

    def test_mismatched_composition(self, sl3):
        with pytest.raises(CompositionMismatchError):
            build_parabolic(sl3, LeviComposition.parse("2,2"))

    def test_parabolic_is_a_subalgebra(self, rng):
        p = parabolic(4, "1,2,1")
        g = p.algebra
        for _ in range(5):
            x, y = random_in_p(p, rng), random_in_p(p, rng)
            assert p.p.contains(g.bracket(x, y))
            assert p.pu.contains(g.bracket(x, sample_in(p.pu, rng, 9)))


class TestVarpi:
    def test_example(self, sl3):
        p = build_parabolic(sl3, LeviComposition.parse("2,1"))
        x = sl3.basis_element("E12") + sl3.basis_element("E13") + sl3.basis_element("h1")
        assert varpi(p, x) == sl3.basis_element("E12") + sl3.basis_element("h1")

    def test_outside_p(self, sl3):
        p = build_parabolic(sl3, LeviComposition.parse("2,1"))
        with pytest.raises(NotInParabolicError):
            varpi(p, sl3.basis_element("E31"))

    @pytest.mark.parametrize(("n", "levi"), [(3, "1,1,1"), (3, "2,1"), (3, "1,2"), (4, "1,2,1"), (4, "2,2")])
    def test_is_a_lie_morphism(self, n, levi, rng):
        p = parabolic(n, levi)
        g = p.algebra
        for _ in range(50):
            x, y = random_in_p(p, rng), random_in_p(p, rng)
            assert varpi(p, g.bracket(x, y)) == g.bracket(varpi(p, x), varpi(p, y))

    def test_project_subspace(self):
        p = parabolic(4, "2,2")
        assert project_subspace(p, p.p) == p.l
        assert project_subspace(p, p.pu).rank == 0


class TestLeviCentralizer:
    def test_regular_diagonal(self, sl3, rng):
        p = build_parabolic(sl3, LeviComposition.parse("2,1"))
        x = sample_regular_diagonal(sl3, rng, 9)
        assert levi_centralizer(p, x) == Subspace.coordinate(sl3.dim, sl3.h_indices)
        assert is_levi_regular(p, x)

    def test_zero(self, sl3):
        assert is_levi_regular(build_parabolic(sl3, LeviComposition.borel(3)), sl3.zero())
        assert not is_levi_regular(build_parabolic(sl3, LeviComposition.parse("2,1")), sl3.zero())

    def test_lies_in_l(self, rng):
        p = parabolic(4, "2,2")
        x = varpi(p, random_in_p(p, rng))
        assert levi_centralizer(p, x) <= p.l


class TestRegularSets:
    def test_principal_nilpotent_in_borel(self, sl3):
        p = build_parabolic(sl3, LeviComposition.borel(3))
        e = sl3.principal_triple()[0]
        assert in_R_p(p, e)
        # its centralizer sits inside the nilradical
        assert not in_R_prime_p(p, e)

    def test_regular_diagonal(self, sl3, rng):
        x = sample_regular_diagonal(sl3, rng, 9)
        for levi in compositions(3):
            assert in_R_prime_p(build_parabolic(sl3, levi), x)

    def test_singular_element(self, sl3):
        p = build_parabolic(sl3, LeviComposition.parse("2,1"))
        assert not in_R_p(p, sl3.basis_element("E13"))

    def test_outside_p(self, sl3):
        p = build_parabolic(sl3, LeviComposition.parse("2,1"))
        regular = sample_regular_diagonal(sl3, np.random.default_rng(3), 9) + sl3.basis_element("E32")
        for x in (sl3.basis_element("E31"), regular):
            with pytest.raises(NotInParabolicError):
                in_R_p(p, x)
            with pytest.raises(NotInParabolicError):
                in_R_prime_p(p, x)


class TestSampling:
    def test_trial_rng_is_reproducible(self):
        first = trial_rng(7, "tag", 3).integers(0, 1000, size=5)
        again = trial_rng(7, "tag", 3).integers(0, 1000, size=5)
        other = trial_rng(7, "tag", 4).integers(0, 1000, size=5)
        assert np.array_equal(first, again)
        assert not np.array_equal(first, other)

    def test_sample_in_space(self, rng):
        p = parabolic(4, "1,3")
        for space in (p.p, p.l, p.pu, p.pminus):
            x = sample_in(space, rng, 3)
            assert space.contains(x)
            assert all(abs(c) <= 3 for c in x.coords)

    def test_coefficients_are_nonzero(self, rng):
        p = parabolic(3, "2,1")
        x = sample_in(p.pu, rng, 1)
        assert {abs(c) for c in x.coords if c} == {1}
        assert sum(1 for c in x.coords if c) == 2

    def test_zero_space(self, rng):
        with pytest.raises(DegenerateSamplingError):
            sample_in(Subspace.zero(3), rng, 9)

    def test_bad_bound(self, rng):
        with pytest.raises(ConfigError):
            sample_in(Subspace.full(3), rng, 0)

    def test_sample_until_counts_rejections(self, sl2):
        draws = iter([sl2.zero(), sl2.zero(), sl2.basis_element("h1")])
        x, rejected = sample_until(lambda: next(draws), sl2.is_regular)
        assert x == sl2.basis_element("h1")
        assert rejected == 2

    def test_sample_until_gives_up(self, sl2):
        with pytest.raises(DegenerateSamplingError):
            sample_until(sl2.zero, sl2.is_regular, "regular element")

    def test_sample_until_draws_at_most_the_cap(self, sl2):
        calls = []

        def draw():
            calls.append(1)
            return sl2.zero()

        with pytest.raises(DegenerateSamplingError):
            sample_until(draw, sl2.is_regular)
        assert len(calls) == RESAMPLE_CAP

    def test_regular_diagonal(self, rng):
        g = build_sl(5)
        x = sample_regular_diagonal(g, rng, 2)
        m = g.to_matrix(x)
        assert g.is_regular(x)
        assert m == RatMatrix.diagonal([m[k, k] for k in range(5)])
        assert sum((m[k, k] for k in range(5)), Fraction(0)) == 0

    @pytest.mark.parametrize("n", [3, 4])
    def test_regular_semisimple(self, n, rng):
        g = build_sl(n)
        for levi in compositions(n):
            p = build_parabolic(g, levi)
            for _ in range(3):
                x = sample_regular_semisimple(p, rng, 9)
                assert p.p.contains(x)
                assert in_R_prime_p(p, x)

    def test_regular_semisimple_leaves_the_borel(self, rng):
        # lower Levi root vectors move the draw out of b
        p = parabolic(4, "4")
        borel = Subspace.coordinate(p.algebra.dim, p.algebra.b_indices)
        assert any(not borel.contains(sample_regular_semisimple(p, rng, 9)) for _ in range(10))


class TestTranslate:
    def test_identity(self):
        p = parabolic(3, "2,1")
        assert translate(p, WeylElement.identity(3)) == p.p

    def test_levi_weyl_group_fixes_p(self):
        p = parabolic(4, "2,2")
        for w in weyl_subgroup(p.levi):
            assert translate(p, w) == p.p

    def test_longest_element_gives_opposite_borel(self):
        p = parabolic(4, "1,1,1,1")
        assert translate(p, enumerate_weyl(4)[-1]) == p.pminus

    def test_dimension_is_preserved(self):
        p = parabolic(3, "1,2")
        for w in enumerate_weyl(3):
            assert translate(p, w).rank == p.p.rank
