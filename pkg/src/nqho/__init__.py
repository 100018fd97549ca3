"""Split-step Fourier solver and rogue-oscillation statistics for the
nonlinear quantum harmonic oscillator."""

from .errors import ConfigurationError, NqhoError, NumericalError
from .grid import (
    GridSpec,
    WaveField,
    forward_transform,
    inverse_transform,
    make_grid,
    spectral_second_derivative,
)
from .solvers import (
    NqhoParams,
    integrate,
    linear_substep,
    nonlinear_substep,
    nqho_rhs,
    rk4_step,
    ssfm_step,
)
from .benchmarks import (
    HermiteMode,
    decay_norm_oracle,
    hermite,
    lqho_mode,
    lqho_solution,
    plane_wave_oracle,
)
from .ensemble import MiConfig, SampleSet, make_initial_condition, run_ensemble, run_member
from .stats import (
    AmplitudeHistogram,
    histogram,
    rogue_probability,
    significant_height,
    trend_compare,
)

__version__ = "0.1.0"
