"""Command-line front end.

::

    nqho simulate  [model flags] --t-end --seed --stepper --snapshot-every --out
    nqho ensemble  [model flags] --members --seed-base --t-adjust --t-end
                   --sample-stride --samples-target --sweep PARAM=v1,v2 --jobs --out
    nqho benchmark --L --N --dt --out

Every command writes ``manifest.json`` next to its CSV output. Passing that
file back with ``--manifest`` replays the run with the same resolved settings.
Exit codes: 0 success, 1 benchmark rows failed, 2 configuration error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .ensemble import PRNG_ALGORITHM, MiConfig, make_initial_condition, run_ensemble
from .errors import ConfigurationError, NumericalError
from .grid import make_grid
from .solvers import DEFAULT_DT, NqhoParams, check_rk4_stability, integrate, step_count
from .validation import run_benchmarks

EXIT_OK = 0
EXIT_BENCHMARK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

OUTPUT_ENV = "NQHO_OUTPUT_DIR"
DEFAULT_OUTPUT = "nqho-output"

SWEEPABLE = {"alpha": float, "sigma": float, "gamma": float, "beta": float, "m": int}
MODEL_KEYS = ("alpha", "sigma", "gamma", "m", "beta", "L", "N", "dt")
RUN_KEYS = {
    "simulate": MODEL_KEYS + ("t_end", "seed", "stepper", "snapshot_every"),
    "ensemble": MODEL_KEYS
    + ("members", "seed_base", "t_adjust", "t_end", "sample_stride", "samples_target", "sweep"),
    "benchmark": ("L", "N", "dt"),
}


def fmt(value) -> str:
    """Render a CSV cell; floats get 17 significant digits (round-trip exact)."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def _add_model_flags(p, skip=()):
    flags = [
        ("--alpha", float, 1.0, "trap strength"),
        ("--sigma", float, 1.0, "nonlinearity"),
        ("--gamma", float, 0.0, "dissipation"),
        ("--m", int, 16, "carrier harmonic index (carrier wavenumber m*2*pi/L)"),
        ("--beta", float, 0.4, "noise amplitude"),
        ("--L", float, 20.0, "domain length"),
        ("--N", int, 1024, "number of grid nodes (even)"),
        ("--dt", float, DEFAULT_DT, "time step"),
    ]
    for flag, typ, default, help_ in flags:
        if flag[2:] not in skip:
            p.add_argument(flag, type=typ, default=default, help=f"{help_} (default: {default})")


def _add_io_flags(p):
    p.add_argument("--out", default=None,
                   help=f"output directory (default: ${OUTPUT_ENV} or ./{DEFAULT_OUTPUT})")
    p.add_argument("--manifest", default=None,
                   help="replay the settings stored in a manifest.json from a previous run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nqho", description="Nonlinear quantum harmonic oscillator solver and rogue statistics."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="integrate one trajectory and write snapshots")
    _add_model_flags(sim)
    sim.add_argument("--t-end", type=float, default=20.0)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--stepper", choices=["ssfm", "rk4"], default="ssfm")
    sim.add_argument("--snapshot-every", type=int, default=2000, help="steps between snapshots")
    _add_io_flags(sim)

    ens = sub.add_parser("ensemble", help="run seeded ensembles and write amplitude histograms")
    _add_model_flags(ens)
    ens.add_argument("--members", type=int, default=1)
    ens.add_argument("--seed-base", type=int, default=0)
    ens.add_argument("--t-adjust", type=float, default=10.0)
    ens.add_argument("--t-end", type=float, default=20.0)
    ens.add_argument("--sample-stride", type=int, default=2000, help="steps between snapshots")
    ens.add_argument("--samples-target", type=float, default=None,
                     help="set t-end so at least this many samples are collected")
    ens.add_argument("--sweep", default=None, metavar="PARAM=v1,v2,...",
                     help=f"one ensemble per value; PARAM in {sorted(SWEEPABLE)}")
    ens.add_argument("--jobs", type=int, default=1, help="worker processes for ensemble members")
    _add_io_flags(ens)

    bench = sub.add_parser("benchmark", help="run the solver validation suite")
    _add_model_flags(bench, skip=("alpha", "sigma", "gamma", "m", "beta"))
    _add_io_flags(bench)
    return parser


def _output_dir(args) -> Path:
    out = Path(args.out or os.environ.get(OUTPUT_ENV) or DEFAULT_OUTPUT)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _apply_manifest(args):
    try:
        with open(args.manifest) as fh:
            manifest = json.load(fh)
    except (OSError, ValueError) as err:
        raise ConfigurationError(f"cannot read manifest: {err}", param="manifest")
    if manifest.get("command") != args.command:
        raise ConfigurationError(
            f"manifest is for {manifest.get('command')!r}, not {args.command!r}", param="manifest"
        )
    for key, value in manifest["config"].items():
        if key in RUN_KEYS[args.command]:
            setattr(args, key, value)


def _write_manifest(out, command, config, extra=None):
    manifest = {
        "command": command,
        "config": config,
        "prng": PRNG_ALGORITHM,
        "version": __version__,
        "numpy": np.__version__,
    }
    if extra:
        manifest.update(extra)
    with open(out / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def parse_sweep(spec):
    """``"gamma=0,0.1"`` -> ``("gamma", [0.0, 0.1])``."""
    if spec is None:
        return None, [None]
    name, sep, values = spec.partition("=")
    name = name.strip().replace("-", "_")
    if not sep or name not in SWEEPABLE:
        raise ConfigurationError(f"expected PARAM=v1,v2 with PARAM in {sorted(SWEEPABLE)}", param="sweep")
    try:
        parsed = [SWEEPABLE[name](v) for v in values.split(",") if v.strip()]
    except ValueError:
        raise ConfigurationError(f"cannot parse sweep values {values!r}", param="sweep")
    if not parsed:
        raise ConfigurationError("sweep has no values", param="sweep")
    return name, parsed


def _params(args) -> NqhoParams:
    return NqhoParams(alpha=args.alpha, sigma=args.sigma, gamma=args.gamma, dt=args.dt)


def cmd_simulate(args) -> int:
    grid = make_grid(args.L, args.N)
    params = _params(args)
    if args.t_end < 0:
        raise ConfigurationError("t_end must be non-negative", param="t_end")
    if args.snapshot_every < 1:
        raise ConfigurationError("snapshot_every must be >= 1", param="snapshot_every")
    if args.stepper == "rk4":
        check_rk4_stability(grid, params)
    config = MiConfig(m=args.m, beta=args.beta, grid=grid, params=params,
                      t_adjust=0.0, t_end=args.t_end)
    psi0 = make_initial_condition(config, args.seed)
    n_steps = step_count(0.0, args.t_end, params.dt)

    out = _output_dir(args)
    index = []

    def write(field):
        i = len(index)
        name = f"snapshot_{i:05d}.csv"
        v = field.values
        write_csv(out / name, ["x", "re", "im", "abs"],
                  zip(grid.nodes, v.real, v.imag, np.abs(v)))
        index.append((i, int(round(field.time / params.dt)), field.time, name))

    final = integrate(psi0, params, n_steps * params.dt, stepper=args.stepper,
                      observer=write, observe_every=args.snapshot_every)
    if n_steps % args.snapshot_every:
        write(final)
    write_csv(out / "snapshots.csv", ["index", "step", "time", "file"], index)
    _write_manifest(out, "simulate", {k: getattr(args, k) for k in RUN_KEYS["simulate"]})
    print(f"wrote {len(index)} snapshots to {out}")
    return EXIT_OK


def _ensemble_config(args, name, value) -> MiConfig:
    config = MiConfig(
        m=args.m, beta=args.beta, grid=make_grid(args.L, args.N), params=_params(args),
        t_adjust=args.t_adjust, t_end=args.t_end, sample_stride=args.sample_stride,
        members=args.members, seed_base=args.seed_base,
    )
    if name in ("alpha", "sigma", "gamma"):
        config = replace(config, params=replace(config.params, **{name: value}))
    elif name in ("m", "beta"):
        config = replace(config, **{name: value})
    if args.samples_target is not None:
        config = config.with_samples_target(args.samples_target)
    return config


def cmd_ensemble(args) -> int:
    if args.jobs < 1:
        raise ConfigurationError("jobs must be >= 1", param="jobs")
    name, values = parse_sweep(args.sweep)
    configs = [_ensemble_config(args, name, v) for v in values]
    out = _output_dir(args)

    summary = []
    for value, config in zip(values, configs):
        result = run_ensemble(config, jobs=args.jobs)
        hist = result.histogram
        fname = "histogram.csv" if name is None else f"histogram_{name}={value!r}.csv"
        edges = hist.bin_edges
        write_csv(out / fname, ["bin_lo", "bin_hi", "count", "probability"],
                  zip(edges[:-1], edges[1:], hist.counts, hist.probabilities))
        summary.append((name or "none", "" if value is None else value, hist.significant_height,
                        hist.rogue_threshold, hist.rogue_probability, hist.total))
        print(f"{name or 'baseline'}={value!r}: "
              f"samples={hist.total} H_s={hist.significant_height:.6g} "
              f"rogue_probability={hist.rogue_probability:.6g}")
    write_csv(out / "summary.csv",
              ["parameter", "value", "significant_height", "rogue_threshold",
               "rogue_probability", "total_samples"], summary)
    config = {k: getattr(args, k) for k in RUN_KEYS["ensemble"]}
    _write_manifest(out, "ensemble", config,
                    {"resolved_t_end": [c.t_end for c in configs], "jobs": args.jobs})
    return EXIT_OK


def cmd_benchmark(args) -> int:
    grid = make_grid(args.L, args.N)
    check_rk4_stability(grid, NqhoParams(dt=args.dt))
    out = _output_dir(args)
    rows = run_benchmarks(args.L, args.N, args.dt)
    write_csv(out / "benchmark.csv", ["name", "metric", "threshold", "passed"],
              [(r.name, r.metric, r.threshold, r.passed) for r in rows])
    _write_manifest(out, "benchmark", {k: getattr(args, k) for k in RUN_KEYS["benchmark"]})
    for r in rows:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<32} {r.metric:.3e} <= {r.threshold:.0e}")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_BENCHMARK_FAILED


COMMANDS = {"simulate": cmd_simulate, "ensemble": cmd_ensemble, "benchmark": cmd_benchmark}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.manifest:
            _apply_manifest(args)
        return COMMANDS[args.command](args)
    except ConfigurationError as err:
        flag = f"--{err.param.replace('_', '-')}: " if err.param else ""
        print(f"nqho {args.command}: error: {flag}{err}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as err:
        print(f"nqho {args.command}: numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
