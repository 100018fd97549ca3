"""Time integration of the damped nonlinear Schrodinger equation with a harmonic trap.

The model is::

    i psi_t + psi_xx - alpha x^2 psi + sigma |psi|^2 psi + i gamma psi = 0

Two integrators are provided on the same periodic spectral discretisation:
a first-order split-step Fourier scheme (nonlinear phase first, then the
exact dispersion step in Fourier space) and a classical four-stage
Runge-Kutta scheme on the spectral right-hand side.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConfigurationError, NumericalError
from .grid import GridSpec, WaveField

DEFAULT_DT = 5e-5
# RK4 stability interval on the imaginary axis is |lambda dt| <= 2*sqrt(2) ~ 2.83
RK4_STABILITY_LIMIT = 2.8


@dataclass(frozen=True)
class NqhoParams:
    """Model constants and time step."""

    alpha: float = 1.0
    sigma: float = 1.0
    gamma: float = 0.0
    dt: float = DEFAULT_DT

    def __post_init__(self):
        for name in ("alpha", "sigma", "gamma", "dt"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"{name} must be finite", param=name)
        if self.dt <= 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}", param="dt")
        if self.gamma < 0:
            raise ConfigurationError(f"gamma must be non-negative, got {self.gamma}", param="gamma")
        if self.alpha < 0:
            raise ConfigurationError(f"alpha must be non-negative, got {self.alpha}", param="alpha")


def rk4_stability_number(grid: GridSpec, params: NqhoParams) -> float:
    """``(pi N / L)^2 dt``, the dispersive part of the RK4 stability bound."""
    return grid.k_max**2 * params.dt


def check_rk4_stability(grid: GridSpec, params: NqhoParams):
    number = rk4_stability_number(grid, params)
    if not number < RK4_STABILITY_LIMIT:
        raise ConfigurationError(
            f"RK4 unstable for dt={params.dt}: (pi N/L)^2 dt = {number:.4g} "
            f">= {RK4_STABILITY_LIMIT}",
            param="dt",
        )


class SsfmStepper:
    """Split-step Fourier stepper with factors precomputed for one grid/params pair."""

    name = "ssfm"

    def __init__(self, grid: GridSpec, params: NqhoParams):
        self.grid = grid
        self.params = params
        self._potential = -params.alpha * grid.nodes**2
        self._dispersion = np.exp(-1j * grid.wavenumbers**2 * params.dt)

    def nonlinear(self, psi: np.ndarray) -> np.ndarray:
        p = self.params
        intensity = psi.real**2 + psi.imag**2
        # exp(i(-alpha x^2 + sigma|psi0|^2 + i gamma) dt), |psi0|^2 frozen at step start
        return np.exp((1j * (self._potential + p.sigma * intensity) - p.gamma) * p.dt) * psi

    def linear(self, psi: np.ndarray) -> np.ndarray:
        return np.fft.ifft(self._dispersion * np.fft.fft(psi))

    def __call__(self, psi: np.ndarray) -> np.ndarray:
        return self.linear(self.nonlinear(psi))


class Rk4Stepper:
    """Classical RK4 on the spectral semi-discretisation."""

    name = "rk4"

    def __init__(self, grid: GridSpec, params: NqhoParams, check_stability=True):
        if check_stability:
            check_rk4_stability(grid, params)
        self.grid = grid
        self.params = params
        self._potential = params.alpha * grid.nodes**2
        self._ksq = grid.wavenumbers**2

    def rhs(self, psi: np.ndarray) -> np.ndarray:
        p = self.params
        psi_xx = np.fft.ifft(-self._ksq * np.fft.fft(psi))
        intensity = psi.real**2 + psi.imag**2
        return 1j * (psi_xx - self._potential * psi + p.sigma * intensity * psi) - p.gamma * psi

    def __call__(self, psi: np.ndarray) -> np.ndarray:
        dt = self.params.dt
        k1 = self.rhs(psi)
        k2 = self.rhs(psi + 0.5 * dt * k1)
        k3 = self.rhs(psi + 0.5 * dt * k2)
        k4 = self.rhs(psi + dt * k3)
        return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


STEPPERS = {"ssfm": SsfmStepper, "rk4": Rk4Stepper}


def make_stepper(name: str, grid: GridSpec, params: NqhoParams):
    try:
        cls = STEPPERS[name]
    except KeyError:
        raise ConfigurationError(f"unknown stepper {name!r}; choose from {sorted(STEPPERS)}")
    return cls(grid, params)


def _finite_or_raise(psi, step):
    # one reduction instead of an elementwise isfinite pass
    if not np.isfinite(np.vdot(psi, psi).real):
        raise NumericalError(f"non-finite values in wave field at step {step}", step=step)


def nonlinear_substep(field: WaveField, params: NqhoParams) -> WaveField:
    """Exact solution of the pointwise trap/nonlinear/dissipative part over ``dt``.

    Time is not advanced; the substep is half of one full step.
    """
    out = SsfmStepper(field.grid, params).nonlinear(field.values)
    _finite_or_raise(out, 0)
    return WaveField(field.grid, out, field.time)


def linear_substep(field: WaveField, params: NqhoParams) -> WaveField:
    """Exact dispersion step ``F^-1[exp(-i k^2 dt) F[psi]]``."""
    out = SsfmStepper(field.grid, params).linear(field.values)
    _finite_or_raise(out, 0)
    return WaveField(field.grid, out, field.time)


def ssfm_step(field: WaveField, params: NqhoParams) -> WaveField:
    """One split-step Fourier step: nonlinear substep, then linear substep."""
    out = SsfmStepper(field.grid, params)(field.values)
    _finite_or_raise(out, 1)
    return WaveField(field.grid, out, field.time + params.dt)


def nqho_rhs(field: WaveField, params: NqhoParams) -> np.ndarray:
    """``psi_t = i(psi_xx - alpha x^2 psi + sigma |psi|^2 psi) - gamma psi``."""
    return Rk4Stepper(field.grid, params, check_stability=False).rhs(field.values)


def rk4_step(field: WaveField, params: NqhoParams) -> WaveField:
    """One classical RK4 step of :func:`nqho_rhs`."""
    out = Rk4Stepper(field.grid, params)(field.values)
    _finite_or_raise(out, 1)
    return WaveField(field.grid, out, field.time + params.dt)


def step_count(t_start: float, t_end: float, dt: float) -> int:
    """Number of steps of size ``dt`` spanning ``[t_start, t_end]``, rounded to nearest."""
    if t_end < t_start:
        raise ConfigurationError(f"t_end={t_end} precedes start time {t_start}")
    n = int(round((t_end - t_start) / dt))
    if abs((t_end - t_start) - n * dt) > 1e-12:
        warnings.warn(
            f"interval {t_end - t_start} is not a multiple of dt={dt}; "
            f"taking {n} steps (ends at t={t_start + n * dt})",
            stacklevel=3,
        )
    return n


def integrate(
    field: WaveField,
    params: NqhoParams,
    t_end: float,
    stepper: str = "ssfm",
    observer: Optional[Callable[[WaveField], None]] = None,
    observe_every: int = 1,
) -> WaveField:
    """Advance ``field`` to ``t_end``.

    Parameters
    ----------
    field
        Initial state; not modified.
    params
        Model constants and time step.
    t_end
        Target time. The step count is ``round((t_end - field.time) / dt)``.
    stepper
        ``"ssfm"`` or ``"rk4"``.
    observer
        Called with a snapshot copy at step 0 and every ``observe_every``
        steps thereafter.

    Raises
    ------
    ConfigurationError
        Bad stepper name, RK4 stability guard violated, or ``t_end`` before start.
    NumericalError
        The field became non-finite; ``err.step`` holds the step index.
    """
    if observe_every < 1:
        raise ConfigurationError("observe_every must be >= 1")
    n_steps = step_count(field.time, t_end, params.dt)
    step = make_stepper(stepper, field.grid, params)
    grid, t0, dt = field.grid, field.time, params.dt

    psi = field.values.copy()
    if observer is not None:
        observer(WaveField(grid, psi.copy(), t0))
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(1, n_steps + 1):
            psi = step(psi)
            _finite_or_raise(psi, i)
            if observer is not None and i % observe_every == 0:
                observer(WaveField(grid, psi.copy(), t0 + i * dt))
    return WaveField(grid, psi, t0 + n_steps * dt)
