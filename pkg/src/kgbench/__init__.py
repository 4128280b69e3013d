"""Solvers and a benchmark harness for the nonlinear Klein-Gordon equation."""

from .kernels import BACKEND
from .problem import NkgeParams, InitialData, sample_data
from .spectral import Grid1d, Grid2d, SpectralField

__version__ = "0.1.0"

__all__ = ["BACKEND", "NkgeParams", "InitialData", "sample_data", "Grid1d", "Grid2d", "SpectralField"]
