import numpy as np
import pytest

from kgbench.problem import NkgeParams
from kgbench.spectral import Grid1d


@pytest.fixture
def grid256():
    return Grid1d(-16.0, 16.0, 256)


@pytest.fixture
def grid64():
    return Grid1d(-16.0, 16.0, 64)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def params(eps, lam=1.0):
    return NkgeParams(eps, lam, (-16.0, 16.0))


def single_mode(grid, l):
    """cos(mu_l (x - a)) on the grid."""
    return np.cos(2 * np.pi * l * (grid.x - grid.a) / grid.length)
