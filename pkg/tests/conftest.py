from dataclasses import replace

import numpy as np
import pytest

from nqho import MiConfig, make_grid, run_ensemble

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def paper_grid():
    return make_grid(20.0, 1024)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def report():
    """Record one acceptance line; printed in the terminal summary."""

    def _report(label, passed, detail):
        _ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
        return passed

    return _report


@pytest.fixture(scope="session")
def paper_ensemble():
    """Run (and cache) a paper-scale ensemble: baseline settings, seed 0, >= 1e5 samples."""
    cache = {}

    def _run(**overrides):
        key = tuple(sorted(overrides.items()))
        if key not in cache:
            base = MiConfig(seed_base=0, members=1)
            params = {k: overrides.pop(k) for k in ("alpha", "sigma", "gamma") if k in overrides}
            cfg = replace(base, params=replace(base.params, **params), **overrides)
            cache[key] = run_ensemble(cfg.with_samples_target(1e5))
        return cache[key]

    return _run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
