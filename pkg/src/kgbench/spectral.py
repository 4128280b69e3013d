"""Periodic grids, discrete Fourier transforms and Fourier-symbol operators.

Coefficients follow the convention

    v~_l = (1/N) sum_j v_j exp(-2 i j l pi / N),   l = -N/2, ..., N/2 - 1,

so the forward transform carries the 1/N factor and the inverse none.
Internally coefficient arrays are stored in FFT order (l = 0, 1, ...,
N/2 - 1, -N/2, ..., -1); ``Grid1d.modes`` gives the integer l of each slot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.fft as sfft

from .errors import DimensionError, NumericError

__all__ = [
    "Grid1d",
    "Grid2d",
    "SpectralField",
    "SymbolFn",
    "fwd",
    "inv",
    "fwd2",
    "inv2",
    "to_coeffs",
    "to_values",
    "apply_symbol",
    "h1_norm_coeffs",
    "h1_error",
    "restrict_or_project",
    "pad_coeffs",
    "interp_to",
    "omega_symbol",
    "sqrt_symbol",
    "inv_sqrt_symbol",
    "d_eps_symbol",
    "dxx_symbol",
    "dxxxx_symbol",
    "dx_symbol",
]


def fwd(v: np.ndarray) -> np.ndarray:
    """Forward transform along the last axis, 1/N normalised."""
    return sfft.fft(v, axis=-1, norm="forward")


def inv(c: np.ndarray) -> np.ndarray:
    return sfft.ifft(c, axis=-1, norm="forward")


def fwd2(v: np.ndarray) -> np.ndarray:
    return sfft.fft2(v, norm="forward")


def inv2(c: np.ndarray) -> np.ndarray:
    return sfft.ifft2(c, norm="forward")


@dataclass(frozen=True)
class Grid1d:
    """Uniform periodic grid on (a, b) with N intervals.

    Parameters
    ----------
    a, b : float
        Interval end points, ``b > a``.
    N : int
        Number of intervals; even and at least 4.
    """

    a: float
    b: float
    N: int

    def __post_init__(self):
        if not (self.b > self.a):
            raise DimensionError(f"empty domain ({self.a}, {self.b})")
        if self.N < 4 or self.N % 2:
            raise DimensionError(f"N must be even and >= 4, got {self.N}")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.N

    @property
    def nodes(self) -> np.ndarray:
        """All N+1 nodes x_j = a + j h, end points included."""
        return self.a + self.h * np.arange(self.N + 1)

    @property
    def x(self) -> np.ndarray:
        """The N independent nodes x_0 ... x_{N-1}."""
        return self.a + self.h * np.arange(self.N)

    @property
    def modes(self) -> np.ndarray:
        """Integer mode index l of each FFT-ordered slot."""
        return np.fft.fftfreq(self.N, d=1.0 / self.N).astype(int)

    @property
    def mu(self) -> np.ndarray:
        """Wavenumbers mu_l = 2 pi l / (b - a) in FFT order."""
        return 2.0 * np.pi * self.modes / self.length

    @property
    def mu_natural(self) -> np.ndarray:
        """Wavenumbers ordered l = -N/2 ... N/2 - 1."""
        return np.fft.fftshift(self.mu)

    @property
    def nyquist(self) -> int:
        """FFT slot of the unpaired mode l = -N/2."""
        return self.N // 2

    def mu_odd(self) -> np.ndarray:
        """Wavenumbers with the unpaired mode zeroed, for odd symbols."""
        m = self.mu.copy()
        m[self.nyquist] = 0.0
        return m

    def sample(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        return np.asarray(f(self.x), dtype=float)

    def refine(self, factor: int) -> "Grid1d":
        return Grid1d(self.a, self.b, self.N * factor)

    def same_as(self, other: "Grid1d") -> bool:
        return (self.a, self.b, self.N) == (other.a, other.b, other.N)


@dataclass(frozen=True)
class Grid2d:
    gx: Grid1d
    gy: Grid1d

    @classmethod
    def square(cls, a: float, b: float, N: int) -> "Grid2d":
        g = Grid1d(a, b, N)
        return cls(g, g)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.gx.N, self.gy.N)

    @property
    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.gx.x, self.gy.x, indexing="ij")

    @property
    def mu2(self) -> np.ndarray:
        """|k|^2 = mu_l^2 + nu_m^2 on the FFT-ordered 2D mode array."""
        return self.gx.mu[:, None] ** 2 + self.gy.mu[None, :] ** 2

    @property
    def cell_area(self) -> float:
        return self.gx.h * self.gy.h

    @property
    def area(self) -> float:
        return self.gx.length * self.gy.length


@dataclass
class SpectralField:
    """Nodal samples paired with Fourier coefficients, converted lazily.

    Exactly one of the two representations may be stale at any moment;
    accessing it triggers the transform.
    """

    grid: Grid1d
    _values: np.ndarray | None = field(default=None, repr=False)
    _coeffs: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self._values is None and self._coeffs is None:
            raise DimensionError("SpectralField needs values or coefficients")
        for arr in (self._values, self._coeffs):
            if arr is not None and arr.shape[-1] != self.grid.N:
                raise DimensionError(
                    f"field length {arr.shape[-1]} does not match grid N={self.grid.N}")

    @classmethod
    def from_values(cls, grid: Grid1d, values) -> "SpectralField":
        return cls(grid, _values=np.asarray(values, dtype=complex))

    @classmethod
    def from_coeffs(cls, grid: Grid1d, coeffs) -> "SpectralField":
        return cls(grid, _coeffs=np.asarray(coeffs, dtype=complex))

    @property
    def values_current(self) -> bool:
        return self._values is not None

    @property
    def coeffs_current(self) -> bool:
        return self._coeffs is not None

    @property
    def values(self) -> np.ndarray:
        if self._values is None:
            self._values = inv(self._coeffs)
        return self._values

    @property
    def coeffs(self) -> np.ndarray:
        if self._coeffs is None:
            self._coeffs = fwd(self._values)
        return self._coeffs

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    def coeffs_natural(self) -> np.ndarray:
        """Coefficients ordered l = -N/2 ... N/2 - 1."""
        return np.fft.fftshift(self.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        if not self.grid.same_as(other.grid):
            raise DimensionError("fields live on different grids")
        return SpectralField.from_coeffs(self.grid, self.coeffs - other.coeffs)


def to_coeffs(field: SpectralField, grid: Grid1d) -> SpectralField:
    if field.grid.N != grid.N or (field._values is not None and field._values.shape[-1] != grid.N):
        raise DimensionError(f"field of length {field.grid.N} on grid with N={grid.N}")
    field.coeffs
    return field


def to_values(field: SpectralField) -> SpectralField:
    field.values
    return field


class SymbolFn:
    """A Fourier multiplier mu -> sigma(mu).

    ``odd`` marks symbols odd in mu (e.g. i mu); those are zeroed on the
    unpaired Nyquist mode.
    """

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], name: str = "", odd: bool = False):
        self.fn = fn
        self.name = name
        self.odd = odd

    def __call__(self, mu: np.ndarray) -> np.ndarray:
        return self.fn(mu)

    def on(self, grid: Grid1d) -> np.ndarray:
        with np.errstate(all="ignore"):
            s = np.asarray(self.fn(grid.mu), dtype=complex)
        if self.odd:
            s = s.copy()
            s[grid.nyquist] = 0.0
        bad = ~np.isfinite(s)
        if bad.any():
            l = int(grid.modes[np.argmax(bad)])
            raise NumericError(f"symbol {self.name or '?'} is not finite at mode l={l}", mode=l)
        return s

    def __repr__(self):
        return f"SymbolFn({self.name})"


def apply_symbol(field: SpectralField, sym: SymbolFn, grid: Grid1d) -> SpectralField:
    if field.grid.N != grid.N:
        raise DimensionError("field and grid sizes differ")
    return SpectralField.from_coeffs(grid, sym.on(grid) * field.coeffs)


def d_eps_values(mu: np.ndarray, eps: float) -> np.ndarray:
    """(sqrt(1 + eps^2 mu^2) - 1)/eps^2 without cancellation."""
    mu2 = np.asarray(mu) ** 2
    return mu2 / (np.sqrt(1.0 + eps * eps * mu2) + 1.0)


def omega_symbol(eps: float) -> SymbolFn:
    return SymbolFn(lambda mu: np.sqrt(1.0 + eps**2 * mu**2) / eps**2, f"omega(eps={eps})")


def sqrt_symbol(eps: float) -> SymbolFn:
    return SymbolFn(lambda mu: np.sqrt(1.0 + eps**2 * mu**2), "(1-eps^2 Lap)^(1/2)")


def inv_sqrt_symbol(eps: float) -> SymbolFn:
    return SymbolFn(lambda mu: 1.0 / np.sqrt(1.0 + eps**2 * mu**2), "(1-eps^2 Lap)^(-1/2)")


def d_eps_symbol(eps: float) -> SymbolFn:
    return SymbolFn(lambda mu: d_eps_values(mu, eps), f"D_eps(eps={eps})")


def dx_symbol() -> SymbolFn:
    return SymbolFn(lambda mu: 1j * mu, "d/dx", odd=True)


def dxx_symbol() -> SymbolFn:
    return SymbolFn(lambda mu: -(mu**2), "d2/dx2")


def dxxxx_symbol() -> SymbolFn:
    return SymbolFn(lambda mu: mu**4, "d4/dx4")


def h1_norm_coeffs(c: np.ndarray, grid: Grid1d) -> float:
    """H1 norm from FFT-ordered coefficients (1D or 2D)."""
    if c.ndim == 1:
        w = 1.0 + grid.mu**2
        return float(np.sqrt(grid.length * np.sum(w * np.abs(c) ** 2)))
    raise DimensionError("use h1_norm_coeffs_2d for 2D arrays")


def h1_norm_coeffs_2d(c: np.ndarray, grid: Grid2d) -> float:
    w = 1.0 + grid.mu2
    return float(np.sqrt(grid.area * np.sum(w * np.abs(c) ** 2)))


def h1_error(u: SpectralField, ref: SpectralField, grid: Grid1d) -> float:
    """Spectral H1 distance between two fields on the same grid."""
    if not (u.grid.same_as(grid) and ref.grid.same_as(grid)):
        raise DimensionError("h1_error needs both fields on the given grid")
    return h1_norm_coeffs(u.coeffs - ref.coeffs, grid)


def _check_nested(fine: Grid1d, coarse: Grid1d):
    if (fine.a, fine.b) != (coarse.a, coarse.b):
        raise DimensionError("grids cover different domains")
    if fine.N % coarse.N:
        raise DimensionError(f"coarse N={coarse.N} does not divide fine N={fine.N}")


def project_coeffs(cf: np.ndarray, Nc: int) -> np.ndarray:
    """Keep modes |l| < Nc/2 of an FFT-ordered array; the unpaired slot
    -Nc/2 gets the mean of the fine l = -Nc/2 and l = +Nc/2 coefficients
    (real for real fields)."""
    Nf = cf.shape[-1]
    if Nf == Nc:
        return cf.copy()
    k = Nc // 2
    out = np.zeros(cf.shape[:-1] + (Nc,), dtype=complex)
    out[..., :k] = cf[..., :k]
    out[..., k + 1:] = cf[..., Nf - k + 1:]
    out[..., k] = 0.5 * (cf[..., k] + cf[..., Nf - k])
    return out


def pad_coeffs(cc: np.ndarray, Nf: int) -> np.ndarray:
    """Zero-pad FFT-ordered coefficients to Nf modes; the unpaired coarse
    mode is split evenly onto l = +-Nc/2."""
    Nc = cc.shape[-1]
    if Nf == Nc:
        return cc.copy()
    k = Nc // 2
    out = np.zeros(cc.shape[:-1] + (Nf,), dtype=complex)
    out[..., :k] = cc[..., :k]
    out[..., Nf - k + 1:] = cc[..., k + 1:]
    out[..., k] = 0.5 * cc[..., k]
    out[..., Nf - k] = 0.5 * cc[..., k]
    return out


def restrict_or_project(fine: SpectralField, fine_grid: Grid1d, coarse_grid: Grid1d) -> SpectralField:
    _check_nested(fine_grid, coarse_grid)
    if fine.grid.N != fine_grid.N:
        raise DimensionError("field does not live on fine_grid")
    return SpectralField.from_coeffs(coarse_grid, project_coeffs(fine.coeffs, coarse_grid.N))


def interp_to(c: np.ndarray, N_target: int) -> np.ndarray:
    """Trigonometric interpolation (or projection) to N_target modes."""
    N = c.shape[-1]
    if N_target >= N:
        return pad_coeffs(c, N_target)
    return project_coeffs(c, N_target)
