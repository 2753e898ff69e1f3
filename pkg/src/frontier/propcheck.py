"""Independent property oracles: the ramp inequality for truncated
kernels, and paired-run ordering checks for the discrete scheme."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import NumericalError
from .evolution import ModelParams, run
from .kernels import KernelSpec, evaluate, tail_mass

_MARGIN_TOL = 1e-10


@dataclass(frozen=True)
class Prop21Case:
    kernel: KernelSpec
    l: float
    rho: float
    eps: float
    k0: float
    k1: float
    k2: float
    l0: float  # half-width capturing 1 - eps/2 of kernel mass

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise ValueError("eps must lie in (0, 1)")
        if self.rho < 1.0:
            raise ValueError("rho must be >= 1")
        if not (self.k2 > self.k1 > self.l):
            raise ValueError("need k2 > k1 > l")
        if not (self.k1 > self.k0 and self.k2 - self.k1 > 2.0 * self.k0):
            raise ValueError("need k1 > k0 and k2 - k1 > 2 k0")


def half_width_for_mass(kernel: KernelSpec, eps: float) -> float:
    """Smallest l0 with mass of [-l0, l0] at least 1 - eps/2, i.e.
    tail_mass(l0) <= eps/4; found by bisection."""
    target = eps / 4.0
    lo, hi = 0.0, 1.0
    while tail_mass(kernel, hi) > target:
        hi *= 2.0
        if hi > 1e12:
            raise NumericalError("kernel mass never concentrates (bad kernel?)")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if tail_mass(kernel, mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def build_case(kernel: KernelSpec, l: float, rho: float, eps: float,
               k1: Optional[float] = None, k2: Optional[float] = None,
               l0: Optional[float] = None) -> Prop21Case:
    """Assemble a case with k0 = 2^(rho+1) rho l0 / eps and default
    geometry k1 = 1.5 k0, k2 = 5 k0 + k1."""
    if l0 is None:
        l0 = half_width_for_mass(kernel, eps)
    k0 = max(2.0 ** (rho + 1.0) * rho * l0 / eps, 2.0 * l0 + 1e-9, l + l0)
    if k1 is None:
        k1 = 1.5 * k0
    if k2 is None:
        k2 = 5.0 * k0 + k1
    return Prop21Case(kernel=kernel, l=l, rho=rho, eps=eps,
                      k0=k0, k1=k1, k2=k2, l0=l0)


def ramp_profile(case: Prop21Case, x):
    """xi(x) = min{1, ((k2 - x)/k1)^rho}, extended by 0 for x >= k2."""
    x = np.asarray(x, dtype=float)
    inside = x < case.k2
    val = np.where(inside, ((case.k2 - np.minimum(x, case.k2)) / case.k1), 0.0)
    out = np.where(inside, np.minimum(1.0, val ** case.rho), 0.0)
    return float(out) if out.ndim == 0 else out


def _lhs_integral(case: Prop21Case, x: float) -> float:
    """int_l^{k2} J(x - y) xi(y) dy via z = x - y, split at the ramp kinks."""
    k = case.kernel
    a, b = x - case.k2, x - case.l
    fn = lambda z: float(evaluate(k, z)) * float(ramp_profile(case, x - z))
    cuts = sorted({a, b, x - case.k2, x - (case.k2 - case.k1),
                   -case.l0, 0.0, case.l0})
    cuts = [a] + [c for c in cuts if a < c < b] + [b]
    total = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        with warnings.catch_warnings():
            # the error estimate is validated below; the warning is noise
            warnings.simplefilter("ignore", IntegrationWarning)
            val, err = quad(fn, lo, hi, epsabs=1e-12, epsrel=1e-10, limit=300)
        if err > 1e-8:
            raise NumericalError(f"ramp quadrature failed on [{lo:g}, {hi:g}]")
        total += val
    return total


def _sample_points(case: Prop21Case, n_samples: int) -> np.ndarray:
    """Samples of x over [k0, k2], clustered at the proof's case
    boundaries k2-k1 -/+ l0 and k2 - l0 where the margin is tightest."""
    base = np.linspace(case.k0, case.k2, max(8, n_samples // 2))
    clusters = []
    for c in (case.k2 - case.k1 - case.l0, case.k2 - case.k1,
              case.k2 - case.k1 + case.l0, case.k2 - case.l0, case.k2):
        clusters.append(c + case.l0 * np.linspace(-1.0, 1.0, max(4, n_samples // 10)))
    xs = np.concatenate([base] + clusters)
    return np.unique(np.clip(xs, case.k0, case.k2))


def check_prop21(case: Prop21Case, n_samples: int = 40):
    """Verify int_l^{k2} J(x-y) xi(y) dy >= (1 - eps) xi(x) on samples of
    [k0, k2]; returns (pass, min_margin)."""
    xs = _sample_points(case, n_samples)
    margin = np.inf
    for x in xs:
        lhs = _lhs_integral(case, float(x))
        margin = min(margin, lhs - (1.0 - case.eps) * float(ramp_profile(case, float(x))))
    return bool(margin >= -_MARGIN_TOL), float(margin)


def comparison_harness(p_lo: ModelParams, p_hi: ModelParams, t_end: float,
                       dx: float = 0.25, cfl: float = 0.5,
                       output_times: Sequence[float] = (),
                       tol: float = 1e-10) -> dict:
    """Run the ordered pair and check u_lo <= u_hi, v_lo <= v_hi nodewise
    at every snapshot and h_lo <= h_hi at every step."""
    if replace(p_lo, init=p_hi.init) != p_hi:
        raise ValueError("params must be identical except initial data")
    lo_init, hi_init = p_lo.init, p_hi.init
    if lo_init.shape != hi_init.shape or \
            lo_init.amp_u > hi_init.amp_u or lo_init.amp_v > hi_init.amp_v:
        raise ValueError("initial data must be pointwise ordered lo <= hi")

    traj_lo = run(p_lo, t_end, output_times=output_times, dx=dx, cfl=cfl)
    traj_hi = run(p_hi, t_end, output_times=output_times, dx=dx, cfl=cfl)

    report = {"ok": True, "first_violation": None,
              "max_h_gap_violation": 0.0, "max_field_violation": 0.0}
    dh = traj_lo.h_series[:, 1] - traj_hi.h_series[:, 1]
    worst = float(dh.max())
    report["max_h_gap_violation"] = max(0.0, worst)
    if worst > tol:
        i = int(np.argmax(dh > tol))
        report["ok"] = False
        report["first_violation"] = {"what": "h", "t": float(traj_lo.h_series[i, 0])}
        return report

    for s_lo, s_hi in zip(traj_lo.snapshots, traj_hi.snapshots):
        n = min(s_lo.grid.n, s_hi.grid.n)
        for name in ("u", "v"):
            d = getattr(s_lo, name)[:n] - getattr(s_hi, name)[:n]
            worst = float(d.max()) if n else 0.0
            report["max_field_violation"] = max(report["max_field_violation"], worst)
            if worst > tol:
                report["ok"] = False
                if report["first_violation"] is None:
                    report["first_violation"] = {
                        "what": name, "t": s_lo.t, "node": int(np.argmax(d))}
    return report
