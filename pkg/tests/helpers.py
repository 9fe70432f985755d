"""Strategies and builders shared by the tests."""

from fractions import Fraction

from hypothesis import strategies as st
import numpy as np

from slpolar.algebra import GElement, build_sl
from slpolar.parabolic import ParabolicData, build_parabolic, sample_in
from slpolar.weyl import LeviComposition

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=4),
)


@st.composite
def rational_matrices(draw, max_rows: int = 6, max_cols: int = 6):
    """Small matrices of small rationals, biased towards zero entries."""
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    entry = st.one_of(st.just(Fraction(0)), small_rationals)
    return [[draw(entry) for _ in range(cols)] for _ in range(rows)]


def parabolic(n: int, levi: str) -> ParabolicData:
    return build_parabolic(build_sl(n), LeviComposition.parse(levi))


def random_in_p(p: ParabolicData, rng: np.random.Generator, bound: int = 9) -> GElement:
    return sample_in(p.p, rng, bound)
