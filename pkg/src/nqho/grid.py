"""Periodic grid, discrete Fourier transform contract and spectral derivatives.

Transforms follow the numpy convention: unnormalized forward transform,
``1/N`` on the inverse. Wavenumbers are in transform ordering with the
Nyquist mode on the negative branch.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, NumericalError


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on ``[-L/2, L/2)`` with ``N`` nodes."""

    length: float
    node_count: int
    nodes: np.ndarray = field(repr=False, compare=False)
    wavenumbers: np.ndarray = field(repr=False, compare=False)

    @property
    def dx(self) -> float:
        return self.length / self.node_count

    @property
    def k0(self) -> float:
        """Fundamental wavenumber ``2*pi/L``."""
        return 2.0 * np.pi / self.length

    @property
    def k_max(self) -> float:
        return np.pi * self.node_count / self.length

    def is_grid_wavenumber(self, k: float, tol: float = 1e-9) -> bool:
        """True if ``k`` equals one of the resolved modes ``n*k0``, ``|n| < N/2``."""
        n = k / self.k0
        return abs(n - round(n)) <= tol and abs(round(n)) < self.node_count // 2


def make_grid(L: float, N: int) -> GridSpec:
    """Build a periodic grid of length ``L`` with ``N`` (even) nodes."""
    if not np.isfinite(L) or L <= 0:
        raise ConfigurationError(f"domain length must be positive, got L={L}", param="L")
    if int(N) != N or N < 2 or N % 2:
        raise ConfigurationError(f"node count must be an even integer >= 2, got N={N}", param="N")
    N = int(N)
    L = float(L)
    dx = L / N
    x = -L / 2 + np.arange(N) * dx
    # fftfreq gives n/N in transform order with -N/2 for the Nyquist slot
    k = 2.0 * np.pi * np.fft.fftfreq(N, d=dx)
    x.setflags(write=False)
    k.setflags(write=False)
    return GridSpec(L, N, x, k)


@dataclass
class WaveField:
    """Complex samples of psi on ``grid`` at non-dimensional time ``time``."""

    grid: GridSpec
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.grid.node_count,):
            raise ConfigurationError(
                f"field has shape {self.values.shape}, grid expects ({self.grid.node_count},)"
            )

    def norm(self) -> float:
        """Discrete squared L2 norm ``sum |psi|^2 dx``."""
        v = self.values
        return float(np.sum(v.real**2 + v.imag**2) * self.grid.dx)

    def check_finite(self, step=None):
        if not np.all(np.isfinite(self.values)):
            where = "" if step is None else f" at step {step}"
            raise NumericalError(f"non-finite values in wave field{where}", step=step)

    def copy(self) -> "WaveField":
        return WaveField(self.grid, self.values.copy(), self.time)


def forward_transform(field: WaveField) -> np.ndarray:
    """Spectrum ``c_n = sum_j psi_j exp(-2 pi i n j / N)``."""
    return np.fft.fft(field.values)


def inverse_transform(spectrum) -> np.ndarray:
    """Exact inverse of :func:`forward_transform`, including the ``1/N``."""
    return np.fft.ifft(np.asarray(spectrum, dtype=np.complex128))


def spectral_second_derivative(field: WaveField) -> np.ndarray:
    """Return ``F^-1[-k^2 F[psi]]`` sampled on the grid."""
    k = field.grid.wavenumbers
    return np.fft.ifft(-(k**2) * np.fft.fft(field.values))
