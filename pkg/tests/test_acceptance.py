"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.  Every
tolerance below is pinned; nothing is deferred to later calibration.
"""

import math
import time

import numpy as np
import pytest

import quadrom as q
from quadrom import cli

from conftest import random_system

PRINTED_ONE_STEP = np.array([[0.9704, 0.0854, 0.0854, -0.1412],
                             [0.0594, 0.3877, 0.3877, -0.2789]])


def check(num, name, ok, detail):
    print(f"[criterion {num}] {'PASS' if ok else 'FAIL'} - {name}: {detail}")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def fit_decay(trace):
    """Slope and R^2 of the log10 deviation-per-step line."""
    tr = np.asarray(trace[1:], dtype=float)
    keep = tr > 0
    qs = np.arange(1, len(tr) + 1)[keep]
    y = np.log10(tr[keep])
    A = np.column_stack([qs, np.ones(len(qs))])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    r2 = 1.0 - np.sum(resid ** 2) / np.sum((y - y.mean()) ** 2)
    return coef[0], r2


@pytest.fixture(scope="module")
def toy_run(toy_system, toy_grid, toy_dataset):
    solver = q.SolverConfig(tau=1e-14, epsilon=1e-8, max_iter=500)
    t0 = time.perf_counter()
    iterative = q.learn_quadratic_model(toy_dataset, solver=solver,
                                        threshold=1e-10,
                                        partition="interleave",
                                        reference=toy_system)
    elapsed = time.perf_counter() - t0
    one_step = q.learn_quadratic_model(toy_dataset, solver=solver,
                                       threshold=1e-10,
                                       partition="interleave",
                                       reference=toy_system, one_step=True)
    return {"iterative": iterative, "one_step": one_step, "seconds": elapsed}


@pytest.fixture(scope="module")
def burgers_run():
    t0 = time.perf_counter()
    system = q.make_burgers_system(100, viscosity=0.05, boundary_gain=0.15)
    grid = q.log_grid(2 * math.pi * 1e-2, 2 * math.pi * 1e2, 100)
    clean = q.sample_direct(system, grid)
    noisy = q.add_noise(clean, q.NoiseSpec(snr_db=60.0, seed=0))
    pencil = q.pencil_from_dataset(noisy, partition="halves")
    r, sigma = q.select_order(pencil, 1e-3)
    model = q.project_model(pencil, r)
    lin = model.to_system()
    fit = q.fit_quadratic_coupled(
        q.h2_design_matrix(lin, grid), q.h3_form_factors(lin, grid),
        noisy.h2, noisy.h3,
        q.SolverConfig(tau=1e-10, epsilon=1e-3, max_iter=100))
    elapsed = time.perf_counter() - t0
    rom = q.QuadraticSystem(np.eye(r), model.A, fit.Q, model.B, model.C)
    return {"system": system, "grid": grid, "r": r, "sigma": sigma,
            "fit": fit, "rom": rom, "seconds": elapsed}


def test_criterion_1_toy_exact_recovery(toy_run, toy_system):
    out = toy_run["iterative"]
    err = np.linalg.norm(out.rom.Q - toy_system.Q, 2)
    ok = (out.fit.converged and err <= 1e-10
          and 20 <= out.fit.iterations <= 100 and toy_run["seconds"] < 1.0)
    check(1, "toy exact recovery", ok,
          f"|Q-Qo|_2={err:.3e}, iterations={out.fit.iterations}, "
          f"converged={out.fit.converged}, runtime={toy_run['seconds']:.2f}s")


def test_criterion_2_one_step_matches_print(toy_run):
    Q2 = toy_run["one_step"].rom.Q
    dev = np.abs(Q2 - PRINTED_ONE_STEP).max()
    ok = dev <= 1e-3
    check(2, "one-step baseline matches print", ok,
          f"max entrywise deviation={dev:.2e} (tolerance 1e-3)")


def test_criterion_3_one_step_vs_iterative_third_harmonic(toy_run, toy_system,
                                                          toy_grid,
                                                          toy_dataset):
    h3_ref = toy_dataset.h3
    err_one = max(abs(q.eval_h3(toy_run["one_step"].rom, 1j * w) - h)
                  for w, h in zip(toy_grid, h3_ref))
    err_it = max(abs(q.eval_h3(toy_run["iterative"].rom, 1j * w) - h)
                 for w, h in zip(toy_grid, h3_ref))
    ratio = err_one / err_it
    ok = ratio >= 1e3
    check(3, "one-step vs iterative H3 error ordering", ok,
          f"one-step={err_one:.3e}, iterative={err_it:.3e}, "
          f"ratio={ratio:.2e} (required >= 1e3)")


def test_criterion_4_proposition_identities():
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    worst_h2 = worst_h3 = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        sys_ = random_system(rng, n, symmetric=True, descriptor=True)
        lin = q.QuadraticSystem(sys_.E, sys_.A, None, sys_.B, sys_.C)
        v = q.vec_quadratic(sys_.Q)
        omegas = 0.1 + 2.0 * rng.random(3)
        T2 = q.h2_design_matrix(lin, omegas)
        h2 = np.array([q.eval_h2(sys_, 1j * w) for w in omegas])
        rel2 = np.max(np.abs(T2 @ v - h2) / (np.abs(h2) + 1e-300))
        worst_h2 = max(worst_h2, rel2)
        w = float(0.2 + rng.random())
        K = q.h3_quadratic_form(lin, w)
        h3 = q.eval_h3(sys_, 1j * w)
        rel3 = abs(v @ K @ v - h3) / (abs(h3) + 1e-300)
        worst_h3 = max(worst_h3, rel3)
    elapsed = time.perf_counter() - t0
    ok = worst_h2 <= 1e-12 and worst_h3 <= 1e-12 and elapsed < 10.0
    check(4, "vectorization identities on random systems", ok,
          f"worst H2 rel={worst_h2:.2e}, worst H3 rel={worst_h3:.2e}, "
          f"runtime={elapsed:.1f}s (100 systems)")


def test_criterion_5_probing_matches_direct(toy_system, toy_grid):
    freqs = toy_grid[[0, 10, 20, 30, 39]]
    worst = 0.0
    for w in freqs:
        period = 2 * math.pi / w
        cfg = q.ProbeConfig(alpha=0.01,
                            periods_transient=max(2, math.ceil(500.0 / period)),
                            periods_capture=8, steps_per_period=256)
        est = q.probe_harmonics(toy_system, w, cfg)
        for m, ev in ((1, q.eval_h1), (2, q.eval_h2), (3, q.eval_h3)):
            ref = ev(toy_system, 1j * w)
            worst = max(worst, abs(est[m] - ref) / abs(ref))
    ok = worst <= 0.01
    check(5, "harmonic probing matches closed form", ok,
          f"worst relative deviation={worst:.2e} over 5 frequencies x 3 levels")


def test_criterion_6_burgers_desk_scale(burgers_run):
    fit = burgers_run["fit"]
    slope, r2 = fit_decay(fit.deviation_trace)
    ok = (4 <= burgers_run["r"] <= 7 and fit.converged
          and fit.iterations <= 50 and slope < 0 and r2 > 0.95
          and burgers_run["seconds"] < 60.0)
    check(6, "noisy large-scale run", ok,
          f"r={burgers_run['r']}, iterations={fit.iterations}, "
          f"converged={fit.converged}, decay slope={slope:.2f}, R2={r2:.3f}, "
          f"runtime={burgers_run['seconds']:.1f}s")


def test_criterion_7_time_domain_improvement(burgers_run):
    _, _, _, metrics = q.time_domain_comparison(
        burgers_run["system"], burgers_run["rom"], q.decaying_cosine,
        15.0, 1e-3)
    ok = metrics["l2_quadratic"] < metrics["l2_linear"]
    check(7, "quadratic ROM beats linear ROM in time domain", ok,
          f"L2 linear={metrics['l2_linear']:.4e}, "
          f"L2 quadratic={metrics['l2_quadratic']:.4e}")


def test_criterion_8_loewner_unit_suite():
    rng = np.random.default_rng(77)
    sys_ = random_system(rng, 3)
    omegas = q.log_grid(0.1, 8.0, 20)
    pts, vals = [], []
    for w in omegas:
        h = q.eval_h1(sys_, 1j * w)
        pts += [1j * w, -1j * w]
        vals += [h, np.conj(h)]
    data = q.partition_samples(pts, vals)
    pencil = q.build_pencil(data)
    real_pencil = q.realify_pencil(pencil)

    # (a) exact interpolation of rational data of order <= r
    model = q.project_model(real_pencil, 3)
    interp = max(abs(model.transfer(p) - v) / abs(v)
                 for p, v in data.right + data.left)

    # (b) complex and realified pencils give the same transfer function
    cmodel = q.project_model(pencil, 3)
    transfer_gap = max(abs(model.transfer(1j * w) - cmodel.transfer(1j * w))
                       / abs(cmodel.transfer(1j * w))
                       for w in (0.3, 1.0, 4.0))

    # (c) entrywise pencil identities as constructed
    lam = np.array([p for p, _ in data.right])
    wv = np.array([v for _, v in data.right])
    mu = np.array([p for p, _ in data.left])
    vv = np.array([x for _, x in data.left])
    diff = mu[:, None] - lam[None, :]
    id_l = np.abs(diff * pencil.L - (vv[:, None] - wv[None, :])).max()
    id_ls = np.abs(diff * pencil.Ls
                   - (mu[:, None] * vv[:, None] - lam[None, :] * wv[None, :])).max()
    scale = max(np.abs(pencil.Ls).max(), 1.0)
    ok = (interp <= 1e-8 and transfer_gap <= 1e-10
          and id_l <= 1e-13 * scale and id_ls <= 1e-13 * scale)
    check(8, "loewner unit suite", ok,
          f"interpolation={interp:.2e}, real-vs-complex={transfer_gap:.2e}, "
          f"entrywise residuals=({id_l:.2e}, {id_ls:.2e})")


def test_criterion_9_reproducibility(tmp_path):
    cfg = cli.toy_config()
    cfg["grid"]["count"] = 16
    cfg["noise"] = {"snr_db": 60.0, "seed": 11}
    cfg["loewner"] = {"threshold": 1e-3, "partition": "interleave",
                      "align_reference": False}
    cfg["solver"] = {"tau": 1e-8, "epsilon": 1e-3, "max_iter": 200}
    cfg_path = tmp_path / "config.json"
    import json
    cfg_path.write_text(json.dumps(cfg))
    runs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert cli.main(["generate", "--config", str(cfg_path),
                         "--out", str(out)]) == 0
        cli.main(["learn", "--config", str(cfg_path),
                  "--data", str(out / "dataset.csv"), "--out", str(out)])
        runs.append(out)
    identical = all(
        (runs[0] / f).read_bytes() == (runs[1] / f).read_bytes()
        for f in ("dataset.csv", "model.json", "deviation_trace.csv"))
    check(9, "byte-identical reruns", identical,
          "dataset.csv, model.json, deviation_trace.csv compared across "
          "two seeded runs")
