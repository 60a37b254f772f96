"""Acceptance criteria; each test records a PASS/FAIL line shown in the terminal summary."""

import itertools
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from photonsub import (
    IPSParams,
    PhaseSpaceGrid,
    char_ips,
    click_probability,
    conditional_state,
    fidelity,
    nonclassical_depth,
    purity,
    s_bar,
    wigner,
    wigner_grid,
    wigner_positivity_threshold,
)
from photonsub.datasets import (
    TAU_MAX,
    SweepSpec,
    depth_surface_dataset,
    fidelity_sweep_dataset,
    oracle_compare_dataset,
    origin_sweep_dataset,
    purity_surface_dataset,
    wigner_grid_dataset,
    wigner_profiles_dataset,
)
from photonsub.metrics import s_bar_numeric


def record(name, passed, detail):
    ACCEPTANCE_RESULTS.append((name, bool(passed), detail))
    print(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
    assert passed, detail


def test_1_oracle_equivalence():
    start = time.perf_counter()
    ds, ok = oracle_compare_dataset([0.3, 0.5, 1.0], [0.5, 0.75, 0.9, 0.99], [0.25, 0.5, 0.8, 1.0],
                                    tol=1e-6, cfg_kwargs={"cutoff": 40})
    elapsed = time.perf_counter() - start
    worst = {k: float(np.max(ds.column(f"{k}_diff"))) for k in ("p_on", "F", "purity")}
    n_ok = int(np.sum(ds.column("status") == "ok"))
    passed = ok and n_ok == 48 and elapsed < 120
    detail = (f"{n_ok}/48 points converged, max |diff| p_on {worst['p_on']:.1e}, "
              f"F {worst['F']:.1e}, purity {worst['purity']:.1e} (tol 1e-6), "
              f"max cutoff {int(np.max(ds.column('cutoff')))}, {elapsed:.1f} s")
    record("1 oracle equivalence", passed, detail)


def test_2_target_state_limit():
    F = fidelity(IPSParams(0.5, 1 - 1e-6, 1.0), 0.5).value
    record("2 target-state limit", F >= 1 - 1e-5, f"F = {F:.10f} at tau = 1 - 1e-6 (need >= 1 - 1e-5)")


def test_3_expansion_slopes():
    details, passed = [], True
    for r in (0.3, 0.5, 1.0, 2.0):
        eps = 1e-6
        # eta = 1, so 1 - tau_eff = 1 - tau
        slope = click_probability(IPSParams(r, 1 - eps, 1.0)) / eps
        rel = abs(slope / math.sinh(r) ** 2 - 1)
        passed &= rel <= 0.01
        details.append(f"p_on slope r={r:g} rel err {rel:.1e}")
    r, h = 0.5, 1e-5
    f0 = fidelity(IPSParams(r, 1 - 1e-12, 1.0), r).value
    f1 = fidelity(IPSParams(r, 1 - h, 1.0), r).value
    slope = (f0 - f1) / h
    expected = (3 * math.cosh(2 * r) - 1) / 4
    rel = abs(slope / expected - 1)
    passed &= rel <= 0.01
    details.append(f"F slope {slope:.5f} vs {expected:.5f} rel err {rel:.1e}")
    record("3 expansion checks", passed, "; ".join(details))


def test_4_nonclassical_depth():
    start = time.perf_counter()
    worst_scan = 0.0
    for tau, eta in itertools.product((0.3, 0.6, 0.9), (0.25, 0.8, 1.0)):
        state = conditional_state(IPSParams(0.5, tau, eta))
        worst_scan = max(worst_scan, abs(s_bar_numeric(state) - s_bar(tau, eta)))
    worst_identity = worst_half = 0.0
    for tau, eta in itertools.product(np.linspace(0, 1, 41), np.linspace(0, 1, 41)):
        rep = nonclassical_depth(tau, eta)
        worst_identity = max(worst_identity, abs(rep.depth - (1 - rep.s_bar) / 2))
        star = wigner_positivity_threshold(eta)
        worst_half = max(worst_half, abs(nonclassical_depth(star, eta).depth - 0.5))
    crossings = True
    for eta in (0.25, 0.5, 0.8, 1.0):
        star = wigner_positivity_threshold(eta)
        below = wigner(conditional_state(IPSParams(0.5, star - 1e-3, eta)), 0)
        above = wigner(conditional_state(IPSParams(0.5, star + 1e-3, eta)), 0)
        crossings &= below > 0 > above
    elapsed = time.perf_counter() - start
    passed = (worst_scan <= 1e-3 and worst_identity <= 1e-12 and worst_half <= 1e-12
              and crossings and elapsed < 30)
    detail = (f"scan max err {worst_scan:.1e} at 9 points, depth identity {worst_identity:.1e}, "
              f"|depth(tau*) - 1/2| {worst_half:.1e}, origin sign change within 1e-3: {crossings}, "
              f"{elapsed:.1f} s")
    record("4 nonclassical depth", passed, detail)


def test_5_normalization_and_symmetry():
    worst_norm = worst_sym = worst_mu = 0.0
    chi_exact = True
    for params in (IPSParams(0.5, 0.9, 0.8), IPSParams(1.0, 0.6, 0.5), IPSParams(0.3, 0.99, 1.0)):
        state = conditional_state(params)
        chi_exact &= char_ips(state, 0) == 1
        grid = PhaseSpaceGrid.for_state(state)
        W = wigner_grid(state, grid)
        worst_norm = max(worst_norm, abs(grid.integrate(W) - 1))
        worst_sym = max(worst_sym, float(np.abs(W - W[::-1, ::-1]).max()))
        worst_mu = max(worst_mu, abs(purity(params) - math.pi * grid.integrate(W**2)))
    passed = chi_exact and worst_norm <= 1e-3 and worst_sym <= 1e-12 and worst_mu <= 1e-3
    detail = (f"chi(0) == 1: {chi_exact}, |integral W - 1| {worst_norm:.1e}, "
              f"|W(a) - W(-a)| {worst_sym:.1e}, |mu - pi integral W^2| {worst_mu:.1e}")
    record("5 normalization and symmetry", passed, detail)


def test_6_figure_datasets():
    start = time.perf_counter()
    checks = {}

    grid = wigner_grid_dataset(0.5, 0.9, 0.8)
    w = grid.column("w")
    i = int(np.argmin(w))
    checks["fig2 negative at origin"] = w[i] < 0 and math.hypot(grid.column("x")[i], grid.column("y")[i]) < 0.1
    wigner_grid_dataset(target_z=0.5)

    taus = [0.99, 0.9, 0.75, 0.5]
    prof = wigner_profiles_dataset(0.5, 0.8, taus)
    target = prof.column("w_sqfock_z=0.5")
    sup = float(np.abs(prof.column("w_out_tau=0.99") - target).max())
    checks[f"fig3 overlap {sup:.4f}"] = sup <= 0.02

    etas = [1.0, 0.75, 0.5, 0.25]
    sweep = SweepSpec("tau", 0.0, TAU_MAX, 101).values()
    ordered = True
    for r in (0.5, 2.0):
        origin = origin_sweep_dataset(r, etas, sweep)
        cols = [origin.column(f"w00_eta={e:g}") for e in etas]
        t = origin.column("tau")
        for k in np.flatnonzero((t > 0.5) & (t < 1 - 1e-3)):
            ordered &= all(a[k] < b[k] for a, b in zip(cols, cols[1:]))
    checks["fig4 eta ordering"] = ordered

    rs = [0.1, 0.3, 0.5, 0.7, 1.0, 2.0]
    fid = fidelity_sweep_dataset(0.8, rs, sweep)
    k = int(np.argmin(np.abs(fid.column("tau") - 0.9)))
    at = [fid.column(f"F_r={r:g}")[k] for r in rs]
    checks["fig5 r ordering at tau 0.9"] = all(a > b for a, b in zip(at, at[1:]))

    rs_grid = SweepSpec("r", 0.05, 2.0, 40).values()
    tau_grid = SweepSpec("tau", 0.0, TAU_MAX, 51).values()
    mu = purity_surface_dataset(0.8, rs_grid, tau_grid).column("purity").reshape(40, 51)
    edge = float(np.abs(mu[:, -1] - 1).max())
    checks[f"fig6 purity edge {edge:.1e}"] = edge <= 1e-4

    depth = depth_surface_dataset(np.linspace(0, 1, 51), np.linspace(0, 1, 51))
    exact = all(row[3] == nonclassical_depth(row[0], row[1]).depth
                and row[3] == 2 * row[0] / (2 - (1 - row[0]) * row[1]) for row in depth.rows)
    checks["fig7 exact"] = exact

    elapsed = time.perf_counter() - start
    passed = all(checks.values()) and elapsed < 60
    detail = ", ".join(f"{k}: {'ok' if v else 'FAIL'}" for k, v in checks.items()) + f", {elapsed:.1f} s"
    record("6 figure datasets", passed, detail)
