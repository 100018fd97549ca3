"""Closed-form solutions used to validate the solvers.

Linear-limit eigenmodes (alpha=1, sigma=gamma=0) are Hermite-Gaussian
functions with frequencies ``1 + 2n``. Hermite polynomials use the
physicists' convention (H1 = 2x, H2 = 4x^2 - 2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .grid import GridSpec, WaveField
from .solvers import NqhoParams

# Largest |U_n| allowed at the domain edge; keeps the periodic wrap invisible
# at the 1e-13 level. Gives n <= 10 on L = 20.
EDGE_TOLERANCE = 5e-14


@dataclass(frozen=True)
class HermiteMode:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ConfigurationError(f"mode index must be a non-negative integer, got {self.n}")

    @property
    def omega(self) -> int:
        return 1 + 2 * self.n


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence."""
    if int(n) != n or n < 0:
        raise ConfigurationError(f"Hermite degree must be a non-negative integer, got {n}")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for j in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * j * h_prev
    return h if h.ndim else float(h)


def _mode_values(n, x):
    norm = (2.0**n * math.factorial(n) * math.sqrt(math.pi)) ** -0.5
    return norm * np.exp(-(x**2) / 2.0) * hermite(n, x)


def lqho_mode(n: int, grid: GridSpec) -> WaveField:
    """Normalised eigenmode U_n sampled on ``grid`` (real-valued, at t=0)."""
    mode = HermiteMode(n)
    edge = abs(_mode_values(mode.n, grid.length / 2.0))
    if edge > EDGE_TOLERANCE:
        raise ConfigurationError(
            f"mode n={n} is not localised on L={grid.length}: |U_n(L/2)| = {edge:.3g}"
        )
    return WaveField(grid, _mode_values(mode.n, grid.nodes).astype(np.complex128), 0.0)


def lqho_solution(n: int, grid: GridSpec, t: float) -> WaveField:
    """Stationary state ``U_n(x) exp(-i (1+2n) t)``."""
    field = lqho_mode(n, grid)
    field.values = field.values * np.exp(-1j * HermiteMode(n).omega * t)
    field.time = t
    return field


def plane_wave_oracle(A: float, k: float, params: NqhoParams, t: float, grid: GridSpec) -> WaveField:
    """Exact plane wave ``A exp(i(k x + (sigma A^2 - k^2) t))`` for the trap-free, lossless model."""
    if params.alpha != 0 or params.gamma != 0:
        raise ConfigurationError("plane-wave solution requires alpha = 0 and gamma = 0")
    if not grid.is_grid_wavenumber(k):
        raise ConfigurationError(f"k={k} is not a resolved grid wavenumber", param="k")
    # snap to the exact grid mode so the oracle and the solver share the same k
    k = round(k / grid.k0) * grid.k0
    phase = k * grid.nodes + (params.sigma * A**2 - k**2) * t
    return WaveField(grid, A * np.exp(1j * phase), t)


def decay_norm_oracle(norm0: float, gamma: float, t: float) -> float:
    """Squared L2 norm under linear damping: ``norm0 * exp(-2 gamma t)``."""
    if norm0 < 0 or gamma < 0:
        raise ConfigurationError("norm0 and gamma must be non-negative")
    return norm0 * math.exp(-2.0 * gamma * t)
