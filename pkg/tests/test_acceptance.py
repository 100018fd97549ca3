"""Exit criteria, each run at its pinned tolerance.

One PASS/FAIL line per criterion is printed in the terminal summary.
Run alone with ``pytest tests/test_acceptance.py``; the ensemble criteria
take a few minutes.
"""
import math

import numpy as np
import pytest

from nqho import NqhoParams, integrate, lqho_mode, lqho_solution, make_grid, plane_wave_oracle
from nqho.cli import main
from nqho.ensemble import MiConfig, make_initial_condition
from nqho.validation import carrier, l2_distance

pytestmark = pytest.mark.slow

DT = 5e-5


def test_c1_norm_conservation(paper_grid, report):
    p = NqhoParams(alpha=1, sigma=1, gamma=0, dt=DT)
    psi0 = make_initial_condition(MiConfig(), 0)
    out = integrate(psi0, p, 20_000 * DT)
    drift = abs(out.norm() - psi0.norm()) / psi0.norm()
    assert report("C1 norm conservation", drift <= 1e-11, f"relative drift {drift:.3e} <= 1e-11")


def test_c2_dissipation_law(paper_grid, report):
    p = NqhoParams(alpha=0, sigma=0, gamma=0.1, dt=DT)
    psi0 = make_initial_condition(MiConfig(params=p), 0)
    out = integrate(psi0, p, 10.0)
    err = abs(out.norm() / psi0.norm() - math.exp(-2.0))
    assert report("C2 dissipation law", err <= 1e-10, f"|ratio - e^-2| = {err:.3e} <= 1e-10")


def test_c3_plane_wave(paper_grid, report):
    p = NqhoParams(alpha=0, sigma=1, gamma=0, dt=DT)
    out = integrate(carrier(paper_grid, 1), p, 1.0)
    err = np.max(np.abs(out.values - plane_wave_oracle(1.0, paper_grid.k0, p, out.time, paper_grid).values))
    assert report("C3 plane-wave oracle", err <= 1e-9, f"max error {err:.3e} <= 1e-9")


@pytest.mark.parametrize("stepper,l2_tol", [("ssfm", 1e-5), ("rk4", 1e-8)])
def test_c4_eigenmode_stationarity(paper_grid, report, stepper, l2_tol):
    p = NqhoParams(alpha=1, sigma=0, gamma=0, dt=DT)
    details, ok = [], True
    for n in (0, 1, 2):
        out = integrate(lqho_mode(n, paper_grid), p, 1.0, stepper=stepper)
        exact = lqho_solution(n, paper_grid, out.time)
        modulus = np.max(np.abs(np.abs(out.values) - np.abs(exact.values)))
        l2 = l2_distance(out, exact)
        ok &= modulus <= 1e-6 and l2 <= l2_tol
        details.append(f"n={n} mod {modulus:.2e} L2 {l2:.2e}")
    label = f"C4 eigenmode stationarity ({stepper}; mod <= 1e-6, L2 <= {l2_tol:.0e})"
    assert report(label, ok, "; ".join(details))


def test_c5_ssfm_vs_rk4(paper_grid, report):
    p = NqhoParams(alpha=1, sigma=0, gamma=0, dt=DT)
    psi0 = carrier(paper_grid, 16)
    a = integrate(psi0, p, 1.0, stepper="ssfm")
    b = integrate(psi0, p, 1.0, stepper="rk4")
    diff = np.max(np.abs(a.values - b.values))
    assert report("C5 SSFM vs RK4 (noise-free carrier, t=1)", diff <= 1e-3, f"max |diff| {diff:.3e} <= 1e-3")


def test_c6_rogue_existence(paper_ensemble, report):
    res = paper_ensemble()
    h, a = res.histogram, res.samples.amplitudes
    in_band = int(np.count_nonzero((a >= 2) & (a <= 5)))
    ok = h.total >= 1e5 and h.rogue_probability > 0 and in_band > 0
    assert report("C6 rogue events at baseline", ok,
                  f"{h.total} samples, H_s {h.significant_height:.4f}, "
                  f"P(rogue) {h.rogue_probability:.3e}, {in_band} samples in [2,5]")


def _masses(res, *bands):
    return [res.histogram.band_mass(lo, hi) for lo, hi in bands]


def test_c7a_beta_sweep(paper_ensemble, report):
    (lo,), (hi,) = _masses(paper_ensemble(beta=0.1), (2, 5)), _masses(paper_ensemble(beta=0.4), (2, 5))
    assert report("C7a beta 0.1 -> 0.4, [2,5] mass strictly increases", hi > lo, f"{lo:.5f} -> {hi:.5f}")


def test_c7b_alpha_sweep(paper_ensemble, report):
    low1, rogue1 = _masses(paper_ensemble(alpha=1.0), (0, 0.5), (2, 5))
    low4, rogue4 = _masses(paper_ensemble(alpha=4.0), (0, 0.5), (2, 5))
    ok = low4 >= low1 and rogue4 >= rogue1
    assert report("C7b alpha 1 -> 4, [0,0.5] and [2,5] non-decreasing", ok,
                  f"[0,0.5] {low1:.5f} -> {low4:.5f}; [2,5] {rogue1:.5f} -> {rogue4:.5f}")


def test_c7c_sigma_sweep(paper_ensemble, report):
    tail1, mid1 = _masses(paper_ensemble(sigma=1.0), (1.7, 5), (0.7, 1.7))
    tail2, mid2 = _masses(paper_ensemble(sigma=2.0), (1.7, 5), (0.7, 1.7))
    ok = tail2 >= tail1 and mid2 <= mid1
    assert report("C7c sigma 1 -> 2, [1.7,5] up, [0.7,1.7] down", ok,
                  f"[1.7,5] {tail1:.5f} -> {tail2:.5f}; [0.7,1.7] {mid1:.5f} -> {mid2:.5f}")


def test_c7d_gamma_sweep(paper_ensemble, report):
    # sigma = 1 for both points (the gamma figure's sigma = 0 would switch off modulation instability)
    lossless = paper_ensemble(gamma=0.0).histogram
    lossy = paper_ensemble(gamma=0.1).histogram
    ok = lossy.rogue_probability < 1e-4
    assert report("C7d gamma 0.1 suppresses rogue events, P(rogue) < 1e-4", ok,
                  f"P(rogue) {lossless.rogue_probability:.3e} -> {lossy.rogue_probability:.3e} "
                  f"(H_s {lossy.significant_height:.4f}); [2,5] mass "
                  f"{lossless.band_mass(2, 5):.5f} -> {lossy.band_mass(2, 5):.5f}")


def test_c7e_m_sweep(paper_ensemble, report):
    mid8, high8, rogue8 = _masses(paper_ensemble(m=8), (0.4, 1.0), (1.0, 2.0), (2, 5))
    mid16, high16, rogue16 = _masses(paper_ensemble(m=16), (0.4, 1.0), (1.0, 2.0), (2, 5))
    ratio = max(rogue8, rogue16) / min(rogue8, rogue16)
    ok = mid16 >= mid8 and high16 <= high8 and ratio < 2
    assert report("C7e m 8 -> 16, [0.4,1] up, [1,2] down, [2,5] within x2", ok,
                  f"[0.4,1] {mid8:.5f} -> {mid16:.5f}; [1,2] {high8:.5f} -> {high16:.5f}; "
                  f"[2,5] {rogue8:.5f} -> {rogue16:.5f} (x{ratio:.3f})")


def test_c8_order_of_accuracy(report):
    grid = make_grid(20.0, 128)
    psi0 = lqho_mode(0, grid)
    psi0.values = np.exp(-((grid.nodes - 1.0) ** 2) / 2).astype(complex)
    t_end, dts = 1.0, [4e-3, 2e-3, 1e-3]

    def run(dt, stepper):
        return integrate(psi0, NqhoParams(alpha=1, sigma=1, gamma=0, dt=dt), t_end, stepper=stepper)

    reference = run(dts[-1] / 8, "rk4")
    ssfm_err = [l2_distance(run(dt, "ssfm"), reference) for dt in dts]
    ssfm_ratio = [ssfm_err[i] / ssfm_err[i + 1] for i in range(2)]
    # RK4 error at dt estimated by Richardson differences u(dt) - u(dt/2)
    rk4 = [run(dt, "rk4") for dt in dts + [dts[-1] / 2]]
    rk4_err = [l2_distance(rk4[i], rk4[i + 1]) for i in range(3)]
    rk4_ratio = [rk4_err[i] / rk4_err[i + 1] for i in range(2)]
    ok = all(1.7 <= r <= 2.3 for r in ssfm_ratio) and all(16 * 0.7 <= r <= 16 * 1.3 for r in rk4_ratio)
    assert report("C8 order of accuracy", ok,
                  f"SSFM ratios {ssfm_ratio[0]:.3f}, {ssfm_ratio[1]:.3f} in [1.7,2.3]; "
                  f"RK4 ratios {rk4_ratio[0]:.2f}, {rk4_ratio[1]:.2f} in [11.2,20.8]")


def _csv_bytes(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.glob("*.csv"))}


def test_c9_ensemble_determinism(tmp_path, report):
    first = tmp_path / "first"
    args = ["ensemble", "--N", "128", "--dt", "1e-3", "--m", "8", "--t-adjust", "0.5", "--t-end", "1.0",
            "--sample-stride", "100", "--members", "3", "--seed-base", "11", "--sweep", "beta=0.1,0.4"]
    assert main([*args, "--out", str(first)]) == 0
    manifest = str(first / "manifest.json")
    outputs = {}
    for jobs in (1, 3):
        out = tmp_path / f"replay-jobs{jobs}"
        assert main(["ensemble", "--manifest", manifest, "--jobs", str(jobs), "--out", str(out)]) == 0
        outputs[jobs] = _csv_bytes(out)
    reference = _csv_bytes(first)
    ok = len(reference) == 3 and all(o == reference for o in outputs.values())
    assert report("C9 ensemble determinism (replay, --jobs 1 and 3)", ok,
                  f"{len(reference)} CSV files byte-identical across 3 runs")
