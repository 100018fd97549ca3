"""
Split-step Fourier vs. fourth-order Runge-Kutta
===============================================

Both solvers integrate a noise-free carrier exp(i m k0 x) in the harmonic
trap (alpha=1, sigma=gamma=0) to t=1. The curves should be visually
indistinguishable; the pointwise gap is the first-order splitting error.
"""

import numpy as np

from nqho import NqhoParams, integrate, make_grid
from nqho.validation import carrier

grid = make_grid(20.0, 1024)
params = NqhoParams(alpha=1.0, sigma=0.0, gamma=0.0)
psi0 = carrier(grid, m=16)

ssfm = integrate(psi0, params, 1.0, stepper="ssfm")
rk4 = integrate(psi0, params, 1.0, stepper="rk4")
diff = np.abs(ssfm.values - rk4.values)
print(f"max |SSFM - RK4| = {diff.max():.3e} at x = {grid.nodes[diff.argmax()]:.3f}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit("matplotlib not installed; skipping the figure")

fig, ax = plt.subplots(figsize=(7, 3.5))
ax.plot(grid.nodes, np.abs(ssfm.values), label="SSFM")
ax.plot(grid.nodes, np.abs(rk4.values), "--", label="RK4")
ax.set_xlabel("x")
ax.set_ylabel("|psi(x, t=1)|")
ax.legend()
fig.tight_layout()
fig.savefig("ssfm_vs_rk4.png", dpi=150)
print("saved ssfm_vs_rk4.png")
