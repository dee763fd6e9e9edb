"""Experiment command line: generate -> learn -> validate -> report.

Every command takes a JSON experiment config, validates it fully before
computing anything, and writes the resolved config next to its outputs so
runs are reproducible.  Exit codes: 0 success, 2 non-convergence of the
fixed-point iteration, 3 input/config errors.
"""

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from .acquisition import (NoiseSpec, ProbeConfig, add_noise, log_grid,
                          make_burgers_system, make_toy_system, sample_direct,
                          sample_probed)
from .errors import QuadromError
from .inference import SolverConfig
from .pipeline import harmonic_errors, learn_quadratic_model, time_domain_comparison
from .serialize import (read_dataset_csv, read_model_json, read_system_json,
                        write_dataset_csv, write_model_json,
                        write_singular_values_csv, write_trace_csv,
                        write_trajectory_csv)
from .simulate import decaying_cosine
from .systems import align_to_reference

EXIT_OK = 0
EXIT_NONCONVERGED = 2
EXIT_INPUT = 3


class ConfigError(ValueError):
    pass


def toy_config():
    """Experiment config reproducing the two-state benchmark study."""
    return {
        "system": {"kind": "toy"},
        "grid": {"start": 10.0 ** -0.5, "stop": 5.0, "count": 40},
        "acquisition": {"mode": "direct"},
        "noise": None,
        "loewner": {"threshold": 1e-10, "partition": "interleave",
                    "align_reference": True},
        # epsilon > 0 keeps the numerically-null directions of the one-step
        # matrix out of the baseline solve; the iteration is insensitive to
        # any value in [1e-12, 1e-2]
        "solver": {"tau": 1e-14, "epsilon": 1e-8, "max_iter": 500},
        # amplitude 1 drives the toy system past its finite escape time
        "validation": {"t_end": 15.0, "dt": 1e-3, "dense_points": 500,
                       "amplitude": 0.05},
    }


def burgers_config():
    """Experiment config for the noisy large-scale benchmark study."""
    return {
        "system": {"kind": "burgers", "n": 100, "viscosity": 0.05,
                   "boundary_gain": 0.15},
        "grid": {"start": 2.0 * math.pi * 1e-2, "stop": 2.0 * math.pi * 1e2,
                 "count": 100},
        "acquisition": {"mode": "direct"},
        "noise": {"snr_db": 60.0, "seed": 0},
        "loewner": {"threshold": 1e-3, "partition": "halves",
                    "align_reference": False},
        "solver": {"tau": 1e-10, "epsilon": 1e-3, "max_iter": 500},
        "validation": {"t_end": 15.0, "dt": 1e-3, "dense_points": 500},
    }


def _require(cond, msg):
    if not cond:
        raise ConfigError(msg)


def validate_config(cfg):
    """Check every field before any computation; returns the config."""
    _require(isinstance(cfg, dict), "config must be a JSON object")
    system = cfg.get("system")
    _require(isinstance(system, dict) and "kind" in system,
             "config.system.kind is required")
    kind = system["kind"]
    _require(kind in ("toy", "burgers", "file"),
             f"unknown system kind {kind!r}")
    if kind == "burgers":
        _require(int(system.get("n", 100)) >= 3, "burgers n must be >= 3")
        _require(float(system.get("viscosity", 0.05)) > 0,
                 "viscosity must be positive")
    if kind == "file":
        _require(isinstance(system.get("path"), str),
                 "config.system.path is required for kind=file")
    grid = cfg.get("grid")
    _require(isinstance(grid, dict), "config.grid is required")
    _require(0 < float(grid["start"]) < float(grid["stop"]),
             "grid must satisfy 0 < start < stop")
    _require(int(grid["count"]) >= 2, "grid.count must be >= 2")
    acq = cfg.get("acquisition", {"mode": "direct"})
    _require(acq.get("mode") in ("direct", "probe"),
             "acquisition.mode must be direct or probe")
    if acq.get("mode") == "probe":
        ProbeConfig(**{k: v for k, v in acq.items() if k != "mode"})
    noise = cfg.get("noise")
    if noise is not None:
        _require(float(noise.get("snr_db", 60.0)) > 0, "snr_db must be positive")
    loewner = cfg.get("loewner", {})
    has_thr = "threshold" in loewner
    has_ord = "order" in loewner
    _require(has_thr != has_ord,
             "config.loewner needs exactly one of threshold and order")
    if has_thr:
        _require(0 < float(loewner["threshold"]) <= 1,
                 "loewner.threshold must lie in (0, 1]")
    else:
        _require(int(loewner["order"]) >= 1, "loewner.order must be >= 1")
    _require(loewner.get("partition", "interleave") in ("interleave", "halves"),
             "loewner.partition must be interleave or halves")
    solver = cfg.get("solver", {})
    SolverConfig(tau=float(solver.get("tau", 1e-10)),
                 epsilon=float(solver.get("epsilon", 0.0)),
                 max_iter=int(solver.get("max_iter", 500)))
    val = cfg.get("validation", {})
    if val:
        _require(float(val.get("t_end", 15.0)) > 0, "t_end must be positive")
        _require(float(val.get("dt", 1e-3)) > 0, "dt must be positive")
        _require(int(val.get("dense_points", 500)) >= 2,
                 "dense_points must be >= 2")
        _require(float(val.get("amplitude", 1.0)) > 0,
                 "amplitude must be positive")
    return cfg


def load_config(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return validate_config(cfg)


def build_system(cfg):
    system = cfg["system"]
    kind = system["kind"]
    if kind == "toy":
        return make_toy_system()
    if kind == "burgers":
        return make_burgers_system(int(system.get("n", 100)),
                                   viscosity=float(system.get("viscosity", 0.05)),
                                   boundary_gain=float(system.get("boundary_gain", 0.15)))
    return read_system_json(system["path"])


def grid_from_config(cfg):
    grid = cfg["grid"]
    return log_grid(float(grid["start"]), float(grid["stop"]),
                    int(grid["count"]))


def solver_from_config(cfg):
    solver = cfg.get("solver", {})
    return SolverConfig(tau=float(solver.get("tau", 1e-10)),
                        epsilon=float(solver.get("epsilon", 0.0)),
                        max_iter=int(solver.get("max_iter", 500)))


def _write_json(path, doc):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _write_resolved(cfg, out_dir):
    _write_json(os.path.join(out_dir, "config.resolved.json"), cfg)


def cmd_generate(cfg, out_dir, seed=None):
    """Sample the configured system on the grid and persist the dataset."""
    os.makedirs(out_dir, exist_ok=True)
    system = build_system(cfg)
    points = grid_from_config(cfg)
    acq = cfg.get("acquisition", {"mode": "direct"})
    if acq.get("mode") == "probe":
        probe = ProbeConfig(**{k: v for k, v in acq.items() if k != "mode"})
        ds = sample_probed(system, points, probe)
    else:
        ds = sample_direct(system, points)
    noise = cfg.get("noise")
    used_seed = None
    if noise is not None:
        used_seed = int(seed if seed is not None else noise.get("seed", 0))
        ds = add_noise(ds, NoiseSpec(snr_db=float(noise.get("snr_db", 60.0)),
                                     seed=used_seed))
        cfg = dict(cfg)
        cfg["noise"] = {"snr_db": float(noise.get("snr_db", 60.0)),
                        "seed": used_seed}
    write_dataset_csv(os.path.join(out_dir, "dataset.csv"), ds)
    _write_json(os.path.join(out_dir, "generate_meta.json"), {
        "mode": acq.get("mode", "direct"),
        "provenance": ds.provenance,
        "snr_db": None if noise is None else float(noise.get("snr_db", 60.0)),
        "seed": used_seed,
        "system": cfg["system"],
        "points": len(points),
    })
    _write_resolved(cfg, out_dir)
    print(f"wrote {len(points)}-point dataset ({ds.provenance}) to {out_dir}")
    return EXIT_OK


def cmd_learn(cfg, data_path, out_dir, one_step=False):
    """Fit the linear surrogate and the quadratic operator; persist artifacts."""
    os.makedirs(out_dir, exist_ok=True)
    ds = read_dataset_csv(data_path)
    loewner = cfg.get("loewner", {})
    reference = None
    if loewner.get("align_reference", True):
        try:
            reference = build_system(cfg)
        except (OSError, ValueError):
            reference = None
    outcome = learn_quadratic_model(
        ds,
        solver=solver_from_config(cfg),
        threshold=(float(loewner["threshold"]) if "threshold" in loewner else None),
        order=(int(loewner["order"]) if "order" in loewner else None),
        partition=loewner.get("partition", "interleave"),
        reference=reference,
        one_step=one_step)
    write_model_json(os.path.join(out_dir, "model.json"), outcome.rom)
    write_singular_values_csv(os.path.join(out_dir, "singular_values.csv"),
                              outcome.singular_values)
    write_trace_csv(os.path.join(out_dir, "deviation_trace.csv"),
                    outcome.fit.deviation_trace)
    summary = {
        "r": outcome.rom.n,
        "one_step": one_step,
        "aligned": outcome.aligned,
        "iterations": outcome.fit.iterations,
        "converged": outcome.fit.converged,
        "final_deviation": (float(outcome.fit.deviation_trace[-1])
                            if len(outcome.fit.deviation_trace) else None),
        "residual_h2": outcome.fit.residual_h2,
        "residual_h3": outcome.fit.residual_h3,
    }
    _write_json(os.path.join(out_dir, "learn_summary.json"), summary)
    _write_resolved(cfg, out_dir)
    state = "converged" if outcome.fit.converged else "NOT converged"
    print(f"learned order-{outcome.rom.n} model in {outcome.fit.iterations} "
          f"iterations ({state}); artifacts in {out_dir}")
    if not outcome.fit.converged:
        return EXIT_NONCONVERGED
    return EXIT_OK


def cmd_validate(cfg, model_path, out_dir):
    """Compare the learned model against the configured reference system."""
    os.makedirs(out_dir, exist_ok=True)
    reference = build_system(cfg)
    rom = read_model_json(model_path)
    grid = cfg["grid"]
    val = cfg.get("validation", {})
    dense = log_grid(float(grid["start"]), float(grid["stop"]),
                     int(val.get("dense_points", 500)))
    errors = harmonic_errors(reference, rom, dense)
    for m, (ref, hat, err) in errors.items():
        with open(os.path.join(out_dir, f"h{m}_dense.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["omega", "abs_reference", "abs_model", "abs_error"])
            for w, a, b, e in zip(dense, np.abs(ref), np.abs(hat), err):
                writer.writerow([repr(float(w)), repr(float(a)),
                                 repr(float(b)), repr(float(e))])
    amp = float(val.get("amplitude", 1.0))
    y_ref, y_quad, y_lin, metrics = time_domain_comparison(
        reference, rom, lambda t: amp * decaying_cosine(t),
        float(val.get("t_end", 15.0)), float(val.get("dt", 1e-3)))
    write_trajectory_csv(os.path.join(out_dir, "trajectory_reference.csv"), y_ref)
    write_trajectory_csv(os.path.join(out_dir, "trajectory_quadratic.csv"), y_quad)
    write_trajectory_csv(os.path.join(out_dir, "trajectory_linear.csv"), y_lin)
    with open(os.path.join(out_dir, "time_errors.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "error_linear", "error_quadratic"])
        for t, el, eq in zip(y_ref.times,
                             np.abs(y_ref.values - y_lin.values),
                             np.abs(y_ref.values - y_quad.values)):
            writer.writerow([repr(float(t)), repr(float(el)), repr(float(eq))])
    summary = {f"h{m}_max_abs_error": float(err.max())
               for m, (_, _, err) in errors.items()}
    summary.update(metrics)
    _write_json(os.path.join(out_dir, "validate_summary.json"), summary)
    _write_resolved(cfg, out_dir)
    print(f"validated model on {len(dense)} dense points; "
          f"L2 errors linear={metrics['l2_linear']:.4e} "
          f"quadratic={metrics['l2_quadratic']:.4e}; artifacts in {out_dir}")
    return EXIT_OK


def cmd_report(run_dir):
    """Summarize a run directory; lists missing artifacts explicitly."""
    required = ["learn_summary.json", "model.json", "deviation_trace.csv",
                "singular_values.csv"]
    missing = [name for name in required
               if not os.path.exists(os.path.join(run_dir, name))]
    if missing:
        print(f"run directory {run_dir} is missing artifacts:")
        for name in missing:
            print(f"  - {name}")
        return EXIT_INPUT
    with open(os.path.join(run_dir, "learn_summary.json")) as fh:
        summary = json.load(fh)
    report = dict(summary)
    q_error = None
    cfg_path = os.path.join(run_dir, "config.resolved.json")
    if os.path.exists(cfg_path):
        try:
            cfg = load_config(cfg_path)
            reference = build_system(cfg)
            rom = read_model_json(os.path.join(run_dir, "model.json"))
            if reference.n == rom.n and np.abs(reference.Q).max() > 0:
                aligned = align_to_reference(rom, reference)
                q_error = float(np.linalg.norm(aligned.Q - reference.Q, 2))
        except (ConfigError, QuadromError, ValueError, OSError):
            q_error = None
    if q_error is not None:
        report["q_error_vs_reference"] = q_error
    val_path = os.path.join(run_dir, "validate_summary.json")
    if os.path.exists(val_path):
        with open(val_path) as fh:
            report["validation"] = json.load(fh)
    print(f"run {run_dir}:")
    print(f"  order r           : {summary['r']}")
    print(f"  iterations        : {summary['iterations']}"
          f" ({'converged' if summary['converged'] else 'not converged'})")
    print(f"  final deviation   : {summary['final_deviation']}")
    print(f"  residual H2       : {summary['residual_h2']:.6e}")
    print(f"  residual H3       : {summary['residual_h3']:.6e}")
    if q_error is not None:
        print(f"  |Q - Q_ref|_2     : {q_error:.6e}")
    if "validation" in report:
        v = report["validation"]
        print(f"  L2 output error   : linear {v['l2_linear']:.6e}, "
              f"quadratic {v['l2_quadratic']:.6e}")
    _write_json(os.path.join(run_dir, "report.json"), report)
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="quadrom",
        description="Learn reduced-order quadratic models from harmonic data")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="sample a dataset from a system")
    p_gen.add_argument("--config", required=True)
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--seed", type=int, default=None)

    p_learn = sub.add_parser("learn", help="fit a reduced quadratic model")
    p_learn.add_argument("--config", required=True)
    p_learn.add_argument("--data", required=True, help="dataset CSV path")
    p_learn.add_argument("--out", required=True)
    p_learn.add_argument("--one-step", action="store_true",
                         help="stop after the one-step second-harmonic fit")

    p_val = sub.add_parser("validate", help="compare a model with the reference")
    p_val.add_argument("--config", required=True)
    p_val.add_argument("--model", required=True, help="model JSON path")
    p_val.add_argument("--out", required=True)

    p_rep = sub.add_parser("report", help="summarize a run directory")
    p_rep.add_argument("--run", required=True)

    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return cmd_generate(load_config(args.config), args.out, seed=args.seed)
        if args.command == "learn":
            return cmd_learn(load_config(args.config), args.data, args.out,
                             one_step=args.one_step)
        if args.command == "validate":
            return cmd_validate(load_config(args.config), args.model, args.out)
        return cmd_report(args.run)
    except (ConfigError, QuadromError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
