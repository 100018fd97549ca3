"""
Linear limit: Hermite-Gaussian eigenmodes
=========================================

With alpha = 1 and sigma = gamma = 0 the model is the linear harmonic
oscillator. Its eigenmodes U_n rotate in phase at frequency 1 + 2n and keep
their modulus. Both integrators should preserve them.
"""

import numpy as np

from nqho import NqhoParams, integrate, lqho_mode, lqho_solution, make_grid

grid = make_grid(20.0, 1024)
print(f"dx = {grid.dx}, k0 = {grid.k0:.8f}, max|k| = {grid.k_max:.2f}")

# modes are orthonormal under the grid quadrature
modes = np.array([lqho_mode(n, grid).values.real for n in range(6)])
gram = modes @ modes.T * grid.dx
print("max |Gram - I| =", np.abs(gram - np.eye(6)).max())

params = NqhoParams(alpha=1.0, sigma=0.0, gamma=0.0)
for stepper in ("ssfm", "rk4"):
    for n in range(3):
        out = integrate(lqho_mode(n, grid), params, 1.0, stepper=stepper)
        exact = lqho_solution(n, grid, out.time)
        err = np.sqrt(np.sum(np.abs(out.values - exact.values) ** 2) * grid.dx)
        print(f"{stepper:>4} n={n}: L2 error at t=1 = {err:.2e}")

# The split-step error is first order in dt: the splitting leaks a small
# U_{n+2} component that beats against U_n. Halving dt halves it.
for dt in (1e-4, 5e-5, 2.5e-5):
    out = integrate(lqho_mode(0, grid), NqhoParams(alpha=1, sigma=0, gamma=0, dt=dt), 1.0)
    err = np.sqrt(np.sum(np.abs(out.values - lqho_solution(0, grid, 1.0).values) ** 2) * grid.dx)
    print(f"ssfm dt={dt:.1e}: L2 error {err:.3e}")
