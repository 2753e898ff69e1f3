"""Acceptance gate: one test per headline criterion, each at its stated
tolerance, emitting a single PASS/FAIL line on the terminal.

The growth claims are asymptotic two-sided-constant statements, so the
rate-law criteria are trend checks over calibrated windows rather than
constant-recovery checks.
"""

import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.integrate import quad

import frontier as fr
from frontier import analysis, propcheck
from frontier.discretization import Grid, nonlocal_apply
from frontier.evolution import (InitialData, ModelParams, initial_state, run,
                                stable_dt, step)
from frontier.kernels import evaluate, flux_functional, make_kernel, tail_mass
from frontier.ratelaws import RateLaw
from frontier.reactions import equilibrium, reproduction_number
from frontier.steadystate import solve_steady


def _report(capsys, name, ok, detail):
    with capsys.disabled():
        print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


# ----------------------------------------------------------------------
def test_convolution_oracle(capsys, rng):
    """FFT nonlocal operator vs direct O(n^2) sum, 100 random fields."""
    k = make_kernel("ALGLOG", gamma=1.5)
    worst = 0.0
    for n in (64, 257, 1024, 4097):
        g = Grid(dx=0.25, n=n, capacity=n)
        for _ in range(25):
            w = rng.random(n)
            a = nonlocal_apply(k, w, g, h=n * g.dx, method="fft")
            b = nonlocal_apply(k, w, g, h=n * g.dx, method="direct")
            worst = max(worst, float(np.abs(a - b).max()))
    _report(capsys, "convolution oracle", worst <= 1e-10,
            f"max |fft - direct| = {worst:.3e} <= 1e-10")


# ----------------------------------------------------------------------
def test_kernel_normalization_and_tails(capsys):
    """Unit mass for every family; closed-form tail values."""
    insts = [
        make_kernel("LOGLOG", alpha=1.0, beta=2.0),
        make_kernel("ALGLOG", beta=1.0, gamma=1.5),
        make_kernel("CRITLOG", beta=0.0),
        make_kernel("COMPACT", radius=1.0),
        make_kernel("POWERLAW", gamma=1.5),
    ]
    worst = 0.0
    for k in insts:
        if k.family is fr.Family.LOGLOG:
            # slow double-log tail: finite quadrature + exact antiderivative
            X = 1.0e4
            inner, _ = quad(lambda x: float(evaluate(k, x)), 0.0, X,
                            epsabs=1e-13, epsrel=1e-13, limit=400,
                            points=[1.0, 100.0])
            L = math.log(k.shift + X)
            mass = 2.0 * (inner + k.norm_const * (math.log(L) + 1.0) / L)
        else:
            inner, _ = quad(lambda x: float(evaluate(k, x)), 0.0, 1.0,
                            epsabs=1e-13, epsrel=1e-13)
            outer, _ = quad(lambda x: float(evaluate(k, x)), 1.0, np.inf,
                            epsabs=1e-13, epsrel=1e-13, limit=400)
            mass = 2.0 * (inner + outer)
        worst = max(worst, abs(mass - 1.0))
    tail_pl = tail_mass(make_kernel("POWERLAW", gamma=1.5), 3.0)
    tail_cl = tail_mass(make_kernel("CRITLOG", beta=0.0), 9.0)
    ok = (worst <= 1e-10 and abs(tail_pl - 0.25) <= 1e-10
          and abs(tail_cl - 0.05) <= 1e-10)
    _report(capsys, "kernel normalization/tails", ok,
            f"mass err {worst:.2e}, tails {tail_pl:.12f}/{tail_cl:.12f}")


# ----------------------------------------------------------------------
def test_flux_functional_asymptotics(capsys):
    """I(h) scaling: h^{1/2} doubling ratio and logarithmic growth."""
    kp = make_kernel("POWERLAW", gamma=1.5)
    ratios = [flux_functional(kp, 2.0 * h) / flux_functional(kp, h)
              for h in (1.0e3, 1.0e4)]
    kc = make_kernel("CRITLOG", beta=0.0)
    log_ratio = flux_functional(kc, 1.0e4) / math.log(1.0e4)
    rt2 = math.sqrt(2.0)
    ok = all(0.9 * rt2 <= r <= 1.1 * rt2 for r in ratios) \
        and 0.45 <= log_ratio <= 0.55
    _report(capsys, "flux functional", ok,
            f"doubling ratios {ratios[0]:.4f},{ratios[1]:.4f} ~ sqrt2; "
            f"I/ln h = {log_ratio:.4f}")


# ----------------------------------------------------------------------
def test_equilibrium_and_threshold(capsys):
    """Symmetric equilibrium and R0-threshold consistency on 100 points."""
    eq = equilibrium(fr.ReactionSpec(1, 1, 2, 1, 2, 1))
    sym_ok = (eq is not None and abs(eq.u_star - 1.0) <= 1e-12
              and abs(eq.v_star - 1.0) <= 1e-12 and eq.residual <= 1e-12)
    sweep_ok = True
    for p in np.linspace(0.05, 5.0, 100):
        rx = fr.ReactionSpec(1.0, 1.0, float(p), 1.0, 1.0, 1.0)
        exists = equilibrium(rx) is not None
        sweep_ok &= exists == (reproduction_number(rx) > 1.0)
    detail = "no symmetric equilibrium" if eq is None else \
        f"(u*,v*)=(1,1) residual {eq.residual:.2e}; sweep consistent: {sweep_ok}"
    _report(capsys, "equilibrium", sym_ok and sweep_ok, detail)


# ----------------------------------------------------------------------
def test_ramp_inequality_sweep(capsys):
    """Truncated-kernel ramp inequality over family x rho x eps grid."""
    worst = np.inf
    for fam, kw in (("COMPACT", {"radius": 1.0}),
                    ("POWERLAW", {"gamma": 1.5}),
                    ("CRITLOG", {"beta": 0.0})):
        k = make_kernel(fam, **kw)
        for rho in (1.0, 2.0, 5.0):
            for eps in (0.05, 0.1, 0.2):
                case = propcheck.build_case(k, l=1.0, rho=rho, eps=eps)
                _, margin = propcheck.check_prop21(case, n_samples=40)
                worst = min(worst, margin)
    _report(capsys, "ramp inequality sweep", worst >= -1e-10,
            f"27 cases, min margin {worst:.3e} >= -1e-10")


# ----------------------------------------------------------------------
def test_reference_run_invariants(capsys, ref_run):
    """Monotone front, bounded fields, no NaN, at every step."""
    p, traj = ref_run
    h = traj.h_series[:, 1]
    h_ok = bool((np.diff(h) >= 0).all())
    bound = max(p.init.amp_u, p.reaction.H_sup / p.reaction.a) + 1e-9
    # re-march the same scheme, checking the field bounds step by step
    state = initial_state(p, dx=0.25)
    dt = stable_dt(p)
    fields_ok = True
    for _ in range(int(round(40.0 / dt))):  # bound-critical early phase
        step(state, p, dt)
        m = state.grid.n
        lo = min(state.u[:m].min(), state.v[:m].min())
        hi = max(state.u[:m].max(), state.v[:m].max())
        fields_ok &= lo >= 0.0 and hi <= bound and not np.isnan(hi)
    # late phase via recorded snapshots
    for snap in traj.snapshots:
        fields_ok &= bool((snap.u >= 0).all() and (snap.u <= bound).all()
                          and not np.isnan(snap.u).any())
    ok = h_ok and fields_ok and bool(np.isfinite(h).all())
    _report(capsys, "reference run invariants", ok,
            f"h monotone: {h_ok}, 0 <= fields <= {bound:.3f}: {fields_ok}")


# ----------------------------------------------------------------------
def test_discrete_comparison_pairs(capsys, rng):
    """20 randomized ordered initial-data pairs keep their order."""
    worst = 0.0
    all_ok = True
    for _ in range(20):
        gamma = float(rng.uniform(1.2, 1.8))
        mu = float(rng.uniform(0.3, 1.5))
        k = make_kernel("ALGLOG", gamma=gamma)
        rx = fr.ReactionSpec(1, 1, 2, 1, 2, 1)
        amp_lo = float(rng.uniform(0.05, 0.5))
        amp_hi = amp_lo * float(rng.uniform(1.0, 3.0))
        base = ModelParams(1.0, 1.0, mu, mu, 5.0, k, k, rx,
                           InitialData("cosine_bump", amp_lo, amp_lo))
        hi = replace(base, init=InitialData("cosine_bump", amp_hi, amp_hi))
        rep = propcheck.comparison_harness(base, hi, t_end=20.0, dx=0.25,
                                           output_times=[5.0, 10.0, 20.0])
        all_ok &= rep["ok"]
        worst = max(worst, rep["max_h_gap_violation"], rep["max_field_violation"])
    _report(capsys, "discrete comparison", all_ok and worst <= 1e-10,
            f"20 pairs, worst ordering violation {worst:.3e} <= 1e-10")


# ----------------------------------------------------------------------
def test_vanishing_scenario(capsys, vanishing_run):
    """Subcritical R0 = 0.25: fields die out and the front stalls."""
    traj = vanishing_run
    last = traj.snapshots[-1]
    peak = max(float(last.u.max()), float(last.v.max()))
    hs = traj.h_series
    h100 = float(np.interp(100.0, hs[:, 0], hs[:, 1]))
    dh = float(hs[-1, 1] - h100)
    ok = peak <= 1e-4 and dh <= 1e-3
    _report(capsys, "vanishing scenario", ok,
            f"max(u,v)(200) = {peak:.3e} <= 1e-4, h(200)-h(100) = {dh:.3e} <= 1e-3")


# ----------------------------------------------------------------------
def test_finite_speed(capsys, compact_run):
    """COMPACT kernel: asymptotically constant positive front speed."""
    c0, diag = analysis.speed_estimate(compact_run.h_series)
    ok = c0 > 0 and diag["rel_disagreement"] <= 0.10
    _report(capsys, "finite speed", ok,
            f"c0 = {c0:.5f} > 0, window disagreement "
            f"{diag['rel_disagreement']:.2e} <= 0.10")


# ----------------------------------------------------------------------
def test_quadratic_rate_trend(capsys, alglog_trend_run):
    """ALGLOG gamma=1.5: local exponent in [1.6, 2.4] rising toward 2."""
    hs = alglog_trend_run.h_series
    diag = analysis.local_log_slope(hs)
    d = diag[(diag[:, 0] >= 100.0) & (diag[:, 0] <= 1.0e3)]
    lo, hi = float(d[:, 1].min()), float(d[:, 1].max())
    thirds = np.array_split(d, 3)
    means = [float(w[:, 1].mean()) for w in thirds]
    fit = analysis.fit_rate(hs, [RateLaw.power_log(2.0, 0.0), RateLaw.linear()],
                            window=(100.0, 1.0e3))
    in_band = 1.6 <= lo and hi <= 2.4
    increasing = means[0] < means[1] < means[2]
    selects = fit.law == RateLaw.power_log(2.0, 0.0)
    _report(capsys, "quadratic rate trend", in_band and increasing and selects,
            f"slope in [{lo:.3f}, {hi:.3f}] c [1.6, 2.4]; window means "
            f"{means[0]:.3f} < {means[1]:.3f} < {means[2]:.3f}; fit {fit.law.label()}")


# ----------------------------------------------------------------------
def test_log_corrected_rate_trend(capsys, critlog_trend_run):
    """CRITLOG beta=0: ratio to t ln t flat; Linear visibly misfits."""
    hs = critlog_trend_run.h_series
    win = (100.0, 1.0e3)
    _, maxmin, trend = analysis.ratio_flatness(hs, RateLaw.linear_log_pow(1.0), win)
    _, _, trend_lin = analysis.ratio_flatness(hs, RateLaw.linear(), win)
    ok = maxmin <= 1.5 and abs(trend) <= 0.5 * abs(trend_lin)
    _report(capsys, "log-corrected rate trend", ok,
            f"maxmin {maxmin:.3f} <= 1.5, |trend| {abs(trend):.4f} <= "
            f"0.5*{abs(trend_lin):.4f}")


# ----------------------------------------------------------------------
def test_steady_profile(capsys):
    """Monotone iteration: convergence, shape, far field, defect."""
    k = make_kernel("COMPACT", radius=1.0)
    rx = fr.ReactionSpec(1, 1, 2, 1, 2, 1)
    p = ModelParams(1.0, 1.0, 1.0, 1.0, 5.0, k, k, rx,
                    InitialData("cosine_bump", 0.5, 0.5))
    prof = solve_steady(p, L=400.0, tol=1e-10, dx=0.125)
    monotone = bool((np.diff(prof.U) >= -1e-12).all()
                    and (np.diff(prof.V) >= -1e-12).all())
    ok = (prof.iterations < 100_000 and monotone
          and prof.farfield_gap <= 1e-3 and prof.residual <= 5e-10)
    _report(capsys, "steady profile", ok,
            f"{prof.iterations} iters, monotone {monotone}, far-field gap "
            f"{prof.farfield_gap:.2e} <= 1e-3, residual {prof.residual:.2e} <= 5e-10")


# ----------------------------------------------------------------------
def test_profile_convergence(capsys, ref_run, ref_steady):
    """Bulk-region gap to the steady profile shrinks to a small value."""
    _, traj = ref_run
    gaps = analysis.profile_gap(traj.snapshots, ref_steady)
    tail3 = gaps[-3:, 1]
    non_increasing = bool(tail3[0] >= tail3[1] >= tail3[2])
    limit = 0.05 * (ref_steady.u_star + ref_steady.v_star)
    ok = non_increasing and gaps[-1, 1] <= limit
    _report(capsys, "profile convergence", ok,
            f"last gaps {tail3[0]:.3f} >= {tail3[1]:.3f} >= {tail3[2]:.3f}, "
            f"final {gaps[-1, 1]:.4f} <= {limit:.3f}")


# ----------------------------------------------------------------------
def test_estimator_self_checks(capsys):
    """Synthetic-law recovery for the trend statistics."""
    t = np.geomspace(1.0, 1.0e4, 4000)
    diag = analysis.local_log_slope(np.column_stack([t, 3.0 * t ** 2]))
    slope_ok = float(np.abs(diag[:, 1] - 2.0).max()) <= 1e-6

    t2 = np.geomspace(10.0, 1.0e4, 2000)
    h2 = 5.0 * t2 * np.log(t2)
    c, maxmin, _ = analysis.ratio_flatness(
        np.column_stack([t2, h2]), RateLaw.linear_log_pow(1.0), (1.0e2, 1.0e4))
    flat_ok = abs(maxmin - 1.0) <= 1e-9 and abs(c - 5.0) <= 1e-6

    fit = analysis.fit_rate(np.column_stack([t, 0.7 * t ** 2]),
                            [RateLaw.linear(), RateLaw.power_log(2.0, 0.0)])
    fit_ok = fit.law == RateLaw.power_log(2.0, 0.0)

    c0, sdiag = analysis.speed_estimate(
        np.column_stack([t, 2.0 * t + 10.0]))
    speed_ok = abs(c0 - 2.0) <= 1e-9 and sdiag["rel_disagreement"] <= 1e-12

    ok = slope_ok and flat_ok and fit_ok and speed_ok
    _report(capsys, "estimator self-checks", ok,
            f"slope {slope_ok}, flatness {flat_ok}, selection {fit_ok}, "
            f"speed {speed_ok}")
