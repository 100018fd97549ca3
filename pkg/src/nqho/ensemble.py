"""Modulation-instability ensembles.

Each member starts from a plane-wave carrier ``exp(i m k0 x)`` plus real
uniform noise ``beta * a(x)``, ``a ~ U[-1, 1]``, is integrated with the
split-step scheme, and contributes every ``|psi(x_j)|`` of the snapshots
taken after the adjustment time.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np

from .errors import ConfigurationError, NumericalError
from .grid import GridSpec, WaveField, make_grid
from .solvers import NqhoParams, integrate
from .stats import DEFAULT_EDGES, AmplitudeHistogram, histogram

PRNG_ALGORITHM = "numpy.random.Generator(PCG64(seed)).uniform(-1.0, 1.0, N)"


def paper_grid() -> GridSpec:
    return make_grid(20.0, 1024)


@dataclass(frozen=True)
class MiConfig:
    """Initial-condition and sampling settings for one ensemble.

    ``sample_stride`` counts time steps between snapshots, starting at the
    adjustment time.
    """

    m: int = 16
    beta: float = 0.4
    grid: GridSpec = field(default_factory=paper_grid)
    params: NqhoParams = field(default_factory=NqhoParams)
    t_adjust: float = 10.0
    t_end: float = 20.0
    sample_stride: int = 2000
    members: int = 1
    seed_base: int = 0

    def __post_init__(self):
        if int(self.m) != self.m or abs(self.m) >= self.grid.node_count // 2:
            raise ConfigurationError(
                f"carrier index m={self.m} must be an integer with |m| < N/2", param="m"
            )
        if not self.beta >= 0:
            raise ConfigurationError(f"beta must be non-negative, got {self.beta}", param="beta")
        if self.t_adjust < 0:
            raise ConfigurationError("t_adjust must be non-negative", param="t_adjust")
        if self.t_end < self.t_adjust:
            raise ConfigurationError(
                f"t_end={self.t_end} is before t_adjust={self.t_adjust}", param="t_end"
            )
        if int(self.sample_stride) != self.sample_stride or self.sample_stride < 1:
            raise ConfigurationError("sample_stride must be a positive integer", param="sample_stride")
        if int(self.members) != self.members or self.members < 1:
            raise ConfigurationError("members must be a positive integer", param="members")
        if int(self.seed_base) != self.seed_base or self.seed_base < 0:
            raise ConfigurationError("seed_base must be a non-negative integer", param="seed_base")

    @property
    def carrier_wavenumber(self) -> float:
        return self.m * self.grid.k0

    @property
    def adjust_steps(self) -> int:
        return int(round(self.t_adjust / self.params.dt))

    @property
    def total_steps(self) -> int:
        return int(round(self.t_end / self.params.dt))

    @property
    def snapshots_per_member(self) -> int:
        return (self.total_steps - self.adjust_steps) // self.sample_stride + 1

    @property
    def expected_count(self) -> int:
        return self.members * self.snapshots_per_member * self.grid.node_count

    def with_samples_target(self, target: float) -> "MiConfig":
        """Copy with ``t_end`` set so the ensemble collects at least ``target`` samples."""
        if not target > 0:
            raise ConfigurationError("samples target must be positive", param="samples_target")
        per_member = math.ceil(target / (self.members * self.grid.node_count))
        t_end = self.t_adjust + (per_member - 1) * self.sample_stride * self.params.dt
        return replace(self, t_end=t_end)


@dataclass
class SampleSet:
    amplitudes: np.ndarray
    member_seed: int

    @property
    def count(self) -> int:
        return int(self.amplitudes.size)


def make_initial_condition(config: MiConfig, seed: int) -> WaveField:
    """``exp(i m k0 x) + beta a(x)`` with ``a`` drawn from PCG64(seed)."""
    grid = config.grid
    rng = np.random.Generator(np.random.PCG64(seed))
    noise = rng.uniform(-1.0, 1.0, grid.node_count)
    psi = np.exp(1j * config.carrier_wavenumber * grid.nodes) + config.beta * noise
    return WaveField(grid, psi, 0.0)


def run_member(config: MiConfig, member_index: int) -> SampleSet:
    """Integrate one member and collect ``|psi|`` snapshots for ``t >= t_adjust``."""
    seed = config.seed_base + member_index
    params = config.params
    psi0 = make_initial_condition(config, seed)
    snapshots = []
    try:
        adjusted = integrate(psi0, params, config.adjust_steps * params.dt)
        integrate(
            adjusted,
            params,
            config.total_steps * params.dt,
            observer=lambda f: snapshots.append(np.abs(f.values)),
            observe_every=config.sample_stride,
        )
    except NumericalError as err:
        raise NumericalError(
            f"member {member_index} (seed {seed}): {err}", step=err.step, member=member_index
        ) from err
    amplitudes = np.concatenate(snapshots) if snapshots else np.empty(0)
    return SampleSet(amplitudes, seed)


@dataclass
class EnsembleResult:
    config: MiConfig
    members: list
    samples: SampleSet
    histogram: AmplitudeHistogram


def run_ensemble(config: MiConfig, edges=DEFAULT_EDGES, jobs: int = 1) -> EnsembleResult:
    """Run all members, merge samples in member order and build the histogram.

    With ``jobs > 1`` members run in worker processes; the merge order is
    fixed so results do not depend on scheduling.
    """
    indices = range(config.members)
    if jobs > 1 and config.members > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, config.members)) as pool:
            members = list(pool.map(partial(run_member, config), indices))
    else:
        members = [run_member(config, i) for i in indices]
    merged = SampleSet(np.concatenate([s.amplitudes for s in members]), config.seed_base)
    return EnsembleResult(config, members, merged, histogram(merged, edges))
