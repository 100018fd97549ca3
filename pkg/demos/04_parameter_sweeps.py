"""
Rogue-oscillation probability under parameter sweeps
====================================================

Generate the data with the CLI, one directory per swept parameter::

    nqho ensemble --sweep beta=0.1,0.4  --samples-target 1e5 --out sweeps/beta
    nqho ensemble --sweep alpha=1,4     --samples-target 1e5 --out sweeps/alpha
    nqho ensemble --sweep sigma=1,2     --samples-target 1e5 --out sweeps/sigma
    nqho ensemble --sweep gamma=0,0.1   --samples-target 1e5 --out sweeps/gamma
    nqho ensemble --sweep m=8,16        --samples-target 1e5 --out sweeps/m

then run ``python 04_parameter_sweeps.py sweeps``. Each directory becomes one
panel of probability vs |psi| on a log scale, plus a table of the band
masses the trend checks use.
"""

import csv
import sys
from pathlib import Path

import numpy as np


def load_histogram(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    lo = np.array([float(r["bin_lo"]) for r in rows])
    hi = np.array([float(r["bin_hi"]) for r in rows])
    prob = np.array([float(r["probability"]) for r in rows])
    return lo, hi, prob


def band(lo, hi, prob, a, b):
    mask = (lo >= a - 1e-9) & (hi <= b + 1e-9)
    return prob[mask].sum()


root = Path(sys.argv[1] if len(sys.argv) > 1 else "sweeps")
panels = sorted(p for p in root.iterdir() if p.is_dir()) if root.exists() else []
if not panels:
    raise SystemExit(f"no sweep directories under {root}; see the module docstring")

for d in panels:
    print(f"== {d.name}")
    for f in sorted(d.glob("histogram_*.csv")):
        lo, hi, prob = load_histogram(f)
        masses = {f"[{a},{b}]": band(lo, hi, prob, a, b) for a, b in [(0, 0.5), (0.4, 1), (1, 2), (2, 5)]}
        print(f"  {f.stem.split('_', 1)[1]:>16}  " + "  ".join(f"{k} {v:.4f}" for k, v in masses.items()))

try:
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit("matplotlib not installed; skipping the figure")

fig, axes = plt.subplots(1, len(panels), figsize=(4 * len(panels), 3.5), squeeze=False)
for ax, d in zip(axes[0], panels):
    for f in sorted(d.glob("histogram_*.csv")):
        lo, hi, prob = load_histogram(f)
        ax.semilogy(0.5 * (lo + hi), np.where(prob > 0, prob, np.nan), marker=".", label=f.stem.split("_", 1)[1])
    ax.set_xlabel("|psi|")
    ax.set_title(d.name)
    ax.legend(fontsize=8)
axes[0][0].set_ylabel("probability")
fig.tight_layout()
fig.savefig(root / "sweeps.png", dpi=150)
print(f"saved {root / 'sweeps.png'}")
