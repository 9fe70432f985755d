"""Shared fixtures for the slpolar tests."""

import numpy as np
import pytest

from slpolar.algebra import LieAlgebraA, build_sl


@pytest.fixture
def sl2() -> LieAlgebraA:
    return build_sl(2)


@pytest.fixture
def sl3() -> LieAlgebraA:
    return build_sl(3)


@pytest.fixture
def sl4() -> LieAlgebraA:
    return build_sl(4)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
