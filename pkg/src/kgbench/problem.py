"""Problem definition: parameters, initial-data catalog, energy and the
limiting NLSW / NLSE initial data.

The equation is

    eps^2 u_tt - u_xx + u/eps^2 + lam u^3 = 0,
    u(0) = phi1,  u_t(0) = phi2/eps^2,

on a periodic interval (a, b) (or the tensor-product square in 2D).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionError, NumericError
from .spectral import Grid1d, Grid2d, SpectralField, fwd, fwd2, inv, inv2

DOMAINS = {
    "default": (-16.0, 16.0),
    "wide": (-128.0, 128.0),
}


@dataclass(frozen=True)
class NkgeParams:
    eps: float
    lam: float = 1.0
    domain: tuple[float, float] = (-16.0, 16.0)

    def __post_init__(self):
        if not (0.0 < self.eps <= 1.0):
            raise ValueError(f"eps must lie in (0, 1], got {self.eps}")
        if not (self.domain[1] > self.domain[0]):
            raise ValueError(f"bad domain {self.domain}")


@dataclass(frozen=True)
class InitialData:
    """Sampled initial data; ``phi2`` is eps^2 times the initial velocity."""

    phi1: np.ndarray
    phi2: np.ndarray
    tag: str = ""

    def __post_init__(self):
        if self.phi1.shape != self.phi2.shape:
            raise DimensionError("phi1 and phi2 sampled on different grids")


@dataclass(frozen=True)
class DataCatalogEntry:
    tag: str
    phi1: Callable
    phi2: Callable
    dim: int = 1
    default_domain: tuple[float, float] = (-16.0, 16.0)

    def sample(self, grid) -> InitialData:
        if self.dim == 1:
            if not isinstance(grid, Grid1d):
                raise DimensionError(f"{self.tag} is one-dimensional")
            x = grid.x
            return InitialData(self.phi1(x), self.phi2(x), self.tag)
        if not isinstance(grid, Grid2d):
            raise DimensionError(f"{self.tag} is two-dimensional")
        X, Y = grid.mesh
        return InitialData(self.phi1(X, Y), self.phi2(X, Y), self.tag)


def _init_kg_phi1(x):
    # 3 sin(x) / (e^{x^2/2} + e^{-x^2/2}) = 1.5 sin(x) sech(x^2/2)
    return 1.5 * np.sin(x) / np.cosh(0.5 * x * x)


def _init_kg_phi2(x):
    return 2.0 * np.exp(-x * x) / np.sqrt(np.pi)


def _sech(x):
    # 2 e^{-|x|} / (1 + e^{-2|x|}) avoids overflow in cosh
    e = np.exp(-np.abs(x))
    return 2.0 * e / (1.0 + e * e)


def _smooth_phi2(x):
    return 0.5 * _sech(x * x) * np.sin(x)


def _nonsmooth_phi1(m: int):
    def f(x):
        return x**m * np.abs(x) * np.exp(-x * x) / np.sqrt(np.pi)
    return f


CATALOG: dict[str, DataCatalogEntry] = {
    "initKG": DataCatalogEntry("initKG", _init_kg_phi1, _init_kg_phi2),
    "smooth": DataCatalogEntry(
        "smooth", lambda x: np.exp(-x * x) / np.sqrt(np.pi), _smooth_phi2,
        default_domain=(-128.0, 128.0)),
    "nonsmooth-m1": DataCatalogEntry(
        "nonsmooth-m1", _nonsmooth_phi1(1), _smooth_phi2, default_domain=(-128.0, 128.0)),
    "nonsmooth-m2": DataCatalogEntry(
        "nonsmooth-m2", _nonsmooth_phi1(2), _smooth_phi2, default_domain=(-128.0, 128.0)),
    "gauss2d": DataCatalogEntry(
        "gauss2d",
        lambda x, y: np.exp(-(x + 2) ** 2 - y**2) + np.exp(-(x - 2) ** 2 - y**2),
        lambda x, y: np.exp(-x**2 - y**2),
        dim=2),
}


def catalog_entry(tag: str) -> DataCatalogEntry:
    try:
        return CATALOG[tag]
    except KeyError:
        raise KeyError(f"unknown data id {tag!r}; known: {sorted(CATALOG)}") from None


def sample_data(tag: str, grid) -> InitialData:
    return catalog_entry(tag).sample(grid)


def energy(u: np.ndarray, ut: np.ndarray, p: NkgeParams, grid) -> float:
    """Continuous energy of a real state, spectral gradient and trapezoid
    quadrature (exact for trigonometric polynomials of low degree).

    ``ut`` is the physical time derivative (not eps^2 u_t).
    """
    u = np.asarray(u, dtype=float)
    ut = np.asarray(ut, dtype=float)
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(ut))):
        raise NumericError("energy of a non-finite field")
    e2 = p.eps**2
    if isinstance(grid, Grid1d):
        if u.shape != (grid.N,):
            raise DimensionError("field does not match grid")
        c = fwd(u)
        grad2 = grid.length * np.sum(grid.mu**2 * np.abs(c) ** 2)
        dA = grid.h
    else:
        c = fwd2(u)
        grad2 = grid.area * np.sum(grid.mu2 * np.abs(c) ** 2)
        dA = grid.cell_area
    quad = dA * np.sum(e2 * ut**2 + u**2 / e2 + 0.5 * p.lam * u**4)
    return float(quad + grad2)


def nlse_initial(data: InitialData) -> np.ndarray:
    return 0.5 * (data.phi1 - 1j * data.phi2)


def laplacian(z: np.ndarray, grid) -> np.ndarray:
    if isinstance(grid, Grid1d):
        return inv(-(grid.mu**2) * fwd(z))
    return inv2(-grid.mu2 * fwd2(z))


def nlsw_initial(data: InitialData, p: NkgeParams, grid) -> tuple[np.ndarray, np.ndarray]:
    """Return (z0, z_t(0)) for the wave-operator Schroedinger model."""
    z0 = nlse_initial(data)
    zt0 = 0.5j * (-laplacian(z0, grid) + 3.0 * p.lam * np.abs(z0) ** 2 * z0)
    return z0, zt0
