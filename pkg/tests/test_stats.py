import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from nqho import ConfigurationError, histogram, rogue_probability, significant_height, trend_compare
from nqho.stats import DEFAULT_EDGES

amplitudes = hnp.arrays(
    np.float64, st.integers(1, 300), elements=st.just(0.0) | st.floats(1e-100, 10.0)
)


def top_third_mean_bruteforce(samples):
    ordered = sorted(samples, reverse=True)
    top = ordered[: -(-len(ordered) // 3)]
    return sum(top) / len(top)


def test_significant_height_examples():
    assert significant_height([1, 1, 1]) == 1
    assert significant_height([1, 2, 3, 4, 5, 6]) == 5.5
    with pytest.raises(ConfigurationError):
        significant_height([])


def test_significant_height_uniform():
    samples = np.random.default_rng(11).uniform(0, 1, 100_000)
    assert significant_height(samples) == pytest.approx(top_third_mean_bruteforce(samples.tolist()), rel=1e-12)
    # top third of U[0,1] is U[2/3,1], mean 5/6
    assert significant_height(samples) == pytest.approx(5 / 6, abs=0.01)


@given(amplitudes)
def test_significant_height_matches_bruteforce(a):
    assert significant_height(a) == pytest.approx(top_third_mean_bruteforce(a.tolist()), rel=1e-12, abs=1e-300)


def test_rogue_probability_examples():
    assert rogue_probability([0.1, 0.5, 1.9], 1.0) == 0
    # ceil(4/3) = 2 largest samples -> H_s = 2, threshold 4 exceeds the max 3
    s = [1, 1, 1, 3]
    assert significant_height(s) == 2
    assert rogue_probability(s, significant_height(s)) == 0
    assert rogue_probability(s, 3.0) == 0
    assert rogue_probability([1, 1, 4], 1.0) == pytest.approx(1 / 3)
    assert rogue_probability([2.0], 1.0) == 1.0
    for bad in (0.0, -1.0):
        with pytest.raises(ConfigurationError):
            rogue_probability([1.0], bad)


def test_histogram_examples():
    h = histogram([0.05, 0.15], DEFAULT_EDGES)
    assert h.counts[0] == 1 and h.counts[1] == 1 and h.counts.sum() == 2
    h = histogram([7.3], DEFAULT_EDGES)
    assert h.overflow_count == 1 and h.counts.sum() == 0
    h = histogram([0.1, 5.0], DEFAULT_EDGES)
    assert h.counts[1] == 1 and h.overflow_count == 1


def test_histogram_uniform_bins():
    samples = np.random.default_rng(5).uniform(0, 5, 100_000)
    h = histogram(samples)
    assert len(h.counts) == 50
    assert np.all(np.abs(h.probabilities - 0.02) < 0.005)


@pytest.mark.parametrize("edges", [[0.0, 1.0, 0.5], [1.0], [[0, 1], [2, 3]], [0.0, 0.0, 1.0]])
def test_histogram_bad_edges(edges):
    with pytest.raises(ConfigurationError):
        histogram([0.5], edges)


def test_histogram_fields():
    samples = np.array([0.2, 0.4, 0.4, 1.0, 3.0, 9.0])
    h = histogram(samples)
    assert h.total == 6
    assert h.significant_height == pytest.approx(6.0)
    assert h.rogue_threshold == 2 * h.significant_height
    assert h.rogue_probability == 0.0
    assert histogram(np.zeros(9)).rogue_probability == 0.0


@given(amplitudes, st.floats(0.0, 2.0), st.floats(0.1, 6.0))
def test_histogram_mass_is_one(a, lo, width):
    edges = np.linspace(lo, lo + width, 11)
    h = histogram(a, edges)
    assert h.counts.sum() + h.overflow_count + h.underflow_count == h.total
    assert h.probabilities.sum() + h.overflow_fraction + h.underflow_fraction == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.argsort(h.counts, kind="stable") == np.argsort(h.probabilities, kind="stable"))


@given(amplitudes, st.sampled_from([0.25, 0.5, 2.0, 8.0]))
def test_scale_equivariance_exact(a, c):
    assert significant_height(c * a) == c * significant_height(a)


@given(amplitudes, st.floats(0.01, 100.0))
def test_scale_equivariance(a, c):
    assert significant_height(c * a) == pytest.approx(c * significant_height(a), rel=1e-13, abs=1e-300)


@given(amplitudes, st.sampled_from([0.5, 2.0, 4.0]), st.floats(0.05, 5.0))
def test_rogue_joint_scaling(a, c, hs):
    assert rogue_probability(c * a, c * hs) == rogue_probability(a, hs)


@given(amplitudes)
def test_height_ordering(a):
    hs, mean, low = significant_height(a), float(np.mean(a)), float(np.min(a))
    assert hs >= mean * (1 - 1e-12) and mean >= low * (1 - 1e-12)
    if np.ptp(a) > 0:
        assert hs > mean > low


def test_constant_samples_equalities():
    a = np.full(30, 0.7)
    assert significant_height(a) == pytest.approx(np.mean(a)) and np.mean(a) == pytest.approx(a.min())


def test_band_mass_and_trend():
    r = np.random.default_rng(2)
    ha = histogram(r.uniform(0, 3, 5000))
    hb = histogram(r.uniform(0, 4, 5000))
    same = trend_compare(ha, ha, (2.0, 5.0))
    assert same.difference == 0 and same.greater == "equal"
    res = trend_compare(ha, hb, (2.0, 5.0))
    assert res.greater == "b" and res.difference == pytest.approx(res.mass_b - res.mass_a)
    assert res.mass_a == pytest.approx(np.mean(ha.counts[20:]) * 30 / ha.total)
    assert ha.band_mass(0.0, 5.0) + ha.overflow_fraction == pytest.approx(1.0)
    with pytest.raises(ConfigurationError):
        ha.band_mass(0.45, 1.0)


def test_trend_rejects_mismatched_edges():
    ha = histogram([0.5, 1.5])
    hb = histogram([0.5, 1.5], np.linspace(0, 5, 26))
    with pytest.raises(ConfigurationError):
        trend_compare(ha, hb, (0.0, 1.0))
