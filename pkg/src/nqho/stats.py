"""Amplitude statistics of chaotic wave fields.

The significant height follows the H_1/3 convention: mean of the largest
third of the collected ``|psi|`` samples. A sample is rogue when it is at
least twice the significant height.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

DEFAULT_EDGES = np.linspace(0.0, 5.0, 51)
ROGUE_FACTOR = 2.0


def _amplitudes(samples) -> np.ndarray:
    # accepts a SampleSet or anything array-like
    return np.asarray(getattr(samples, "amplitudes", samples), dtype=float).ravel()


def significant_height(samples) -> float:
    """Mean of the top ``ceil(n/3)`` amplitudes."""
    a = _amplitudes(samples)
    if a.size == 0:
        raise ConfigurationError("significant height of an empty sample set")
    top = math.ceil(a.size / 3)
    # partition is O(n); the top block is then summed in sorted order for reproducibility
    largest = np.sort(np.partition(a, a.size - top)[a.size - top:])
    return float(largest.mean())


def rogue_probability(samples, significant: float) -> float:
    """Fraction of samples with amplitude ``>= 2 * significant``."""
    if not significant > 0:
        raise ConfigurationError(f"significant height must be positive, got {significant}")
    a = _amplitudes(samples)
    if a.size == 0:
        raise ConfigurationError("rogue probability of an empty sample set")
    return float(np.count_nonzero(a >= ROGUE_FACTOR * significant) / a.size)


@dataclass
class AmplitudeHistogram:
    bin_edges: np.ndarray
    counts: np.ndarray
    total: int
    underflow_count: int
    overflow_count: int
    significant_height: float
    rogue_probability: float

    @property
    def probabilities(self) -> np.ndarray:
        return self.counts / self.total

    @property
    def rogue_threshold(self) -> float:
        return ROGUE_FACTOR * self.significant_height

    @property
    def overflow_fraction(self) -> float:
        return self.overflow_count / self.total

    @property
    def underflow_fraction(self) -> float:
        return self.underflow_count / self.total

    def band_mass(self, lo: float, hi: float) -> float:
        """Probability mass in the bins covering ``[lo, hi)``.

        Band ends must coincide with bin edges.
        """
        edges = self.bin_edges
        tol = 1e-9 * max(1.0, abs(edges[-1]))
        for end in (lo, hi):
            if np.min(np.abs(edges - end)) > tol:
                raise ConfigurationError(f"band end {end} is not a bin edge")
        inside = (edges[:-1] >= lo - tol) & (edges[1:] <= hi + tol)
        return float(self.counts[inside].sum() / self.total)


def histogram(samples, edges=DEFAULT_EDGES) -> AmplitudeHistogram:
    """Bin amplitudes into left-closed, right-open bins.

    Samples at or above the last edge are counted as overflow, samples below
    the first edge as underflow. Significant height and rogue probability are
    computed from the same pooled samples.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise ConfigurationError("histogram needs at least two bin edges")
    if np.any(np.diff(edges) <= 0):
        raise ConfigurationError("bin edges must be strictly ascending")
    a = _amplitudes(samples)
    if a.size == 0:
        raise ConfigurationError("histogram of an empty sample set")

    idx = np.searchsorted(edges, a, side="right") - 1
    nbins = edges.size - 1
    under = int(np.count_nonzero(idx < 0))
    over = int(np.count_nonzero(idx >= nbins))
    inside = idx[(idx >= 0) & (idx < nbins)]
    counts = np.bincount(inside, minlength=nbins).astype(np.int64)

    hs = significant_height(a)
    # an identically zero field has no oscillations, hence no rogue events
    rogue = rogue_probability(a, hs) if hs > 0 else 0.0
    return AmplitudeHistogram(
        bin_edges=edges.copy(),
        counts=counts,
        total=int(a.size),
        underflow_count=under,
        overflow_count=over,
        significant_height=hs,
        rogue_probability=rogue,
    )


@dataclass(frozen=True)
class TrendResult:
    band: tuple
    mass_a: float
    mass_b: float

    @property
    def difference(self) -> float:
        """``mass_b - mass_a``."""
        return self.mass_b - self.mass_a

    @property
    def greater(self) -> str:
        if self.mass_b > self.mass_a:
            return "b"
        if self.mass_a > self.mass_b:
            return "a"
        return "equal"


def trend_compare(hist_a: AmplitudeHistogram, hist_b: AmplitudeHistogram, band) -> TrendResult:
    """Compare probability mass of two histograms inside an amplitude band."""
    if hist_a.bin_edges.shape != hist_b.bin_edges.shape or np.any(
        hist_a.bin_edges != hist_b.bin_edges
    ):
        raise ConfigurationError("histograms have different bin edges")
    lo, hi = band
    return TrendResult((lo, hi), hist_a.band_mass(lo, hi), hist_b.band_mass(lo, hi))
