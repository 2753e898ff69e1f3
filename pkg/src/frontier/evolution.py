"""Explicit time-marching of the coupled free-boundary system.

Forward Euler on the fields, with the front ODE h' = boundary_flux
evaluated at the pre-step state (left-derivative convention).  The
nonlocal operator is bounded, so the scheme is stable under
dt <= cfl / (2(d1+d2) + a + b + H'(0) + G'(0)) and preserves positivity
and the comparison structure.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _accel
from .discretization import Grid, SimState, boundary_flux, extend_domain, nonlocal_apply, table_for
from .errors import NumericalError
from .kernels import KernelSpec
from .reactions import ReactionSpec

_NEG_TOL = 1e-12


@dataclass(frozen=True)
class InitialData:
    shape: str = "cosine_bump"  # or "constant_plateau"
    amp_u: float = 0.5
    amp_v: float = 0.5

    def __post_init__(self):
        if self.shape not in ("cosine_bump", "constant_plateau"):
            raise ValueError(f"unknown initial shape {self.shape!r}")
        if self.amp_u < 0 or self.amp_v < 0:
            raise ValueError("initial amplitudes must be nonnegative")

    def profiles(self, x: np.ndarray, h0: float) -> Tuple[np.ndarray, np.ndarray]:
        if self.shape == "cosine_bump":
            base = np.where(x < h0, np.cos(0.5 * np.pi * x / h0), 0.0)
        else:
            base = np.where(x < h0, 1.0, 0.0)
        return self.amp_u * base, self.amp_v * base


@dataclass(frozen=True)
class ModelParams:
    d1: float
    d2: float
    mu1: float
    mu2: float
    h0: float
    kernel1: KernelSpec
    kernel2: KernelSpec
    reaction: ReactionSpec
    init: InitialData = InitialData()

    def __post_init__(self):
        for name in ("d1", "d2", "mu1", "mu2", "h0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"model parameter {name} must be positive")


@dataclass
class Trajectory:
    h_series: np.ndarray  # (steps+1, 2) columns (t, h)
    snapshots: List[SimState]
    meta: dict = field(default_factory=dict)


def stable_dt(p: ModelParams, cfl: float = 0.5) -> float:
    """Explicit step bound from operator norms: nonlocal diffusion is
    bounded by 2 d_i, the reaction Jacobian by H'(0), G'(0)."""
    if not 0 < cfl:
        raise ValueError("cfl must be positive")
    rx = p.reaction
    return cfl / (2.0 * (p.d1 + p.d2) + rx.a + rx.b + rx.p + rx.r)


def initial_state(p: ModelParams, dx: float, initial_capacity: int = 256) -> SimState:
    n = int(np.floor(p.h0 / dx + 1e-12)) + 1
    cap = max(n, initial_capacity)
    grid = Grid(dx=dx, n=n, capacity=cap)
    u = np.zeros(cap)
    v = np.zeros(cap)
    u0, v0 = p.init.profiles(grid.nodes(), p.h0)
    u[:n] = u0
    v[:n] = v0
    return SimState(t=0.0, h=p.h0, u=u, v=v, grid=grid)


def step(state: SimState, p: ModelParams, dt: float) -> SimState:
    """One forward-Euler step, mutating state in place and returning it."""
    rx = p.reaction
    flux = boundary_flux(state, p.kernel1, p.kernel2, p.mu1, p.mu2)
    m = state.active_count()
    if m > 0:
        t1 = table_for(p.kernel1, state.grid.dx)
        t2 = t1 if p.kernel2 == p.kernel1 else table_for(p.kernel2, state.grid.dx)
        conv_u = nonlocal_apply(t1, state.u, state.grid, state.h)
        conv_v = nonlocal_apply(t2, state.v, state.grid, state.h)
        lo, bad = _accel.euler_update(
            state.u, state.v,
            np.ascontiguousarray(conv_u), np.ascontiguousarray(conv_v),
            p.d1, p.d2, rx.a, rx.b, rx.p, rx.q, rx.r, rx.s, dt, m)
        if bad:
            raise NumericalError(f"NaN in fields at t={state.t:g}")
        if lo < -_NEG_TOL:
            raise NumericalError(
                f"negativity {lo:.3e} beyond tolerance at t={state.t:g}; dt too large")
        if lo < 0.0:
            np.maximum(state.u[:m], 0.0, out=state.u[:m])
            np.maximum(state.v[:m], 0.0, out=state.v[:m])
    state.h += dt * flux
    state.t += dt
    extend_domain(state)
    return state


def _snapshot(state: SimState) -> SimState:
    n = state.grid.n
    return SimState(state.t, state.h, state.u[:n].copy(), state.v[:n].copy(),
                    Grid(state.grid.dx, n, n))


def run(p: ModelParams, t_end: float, output_times: Sequence[float] = (),
        dx: float = 0.25, cfl: float = 0.5, max_seconds: Optional[float] = None,
        initial_capacity: int = 256) -> Trajectory:
    """March to t_end recording (t, h) at every step and snapshots at the
    step nearest each requested output time.  Deterministic per config."""
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    dt = stable_dt(p, cfl)
    state = initial_state(p, dx, initial_capacity)
    targets = sorted(t for t in output_times if t <= t_end + 0.5 * dt)
    ts = [state.t]
    hs = [state.h]
    snaps: List[SimState] = []
    while targets and targets[0] <= 0.5 * dt:
        snaps.append(_snapshot(state))
        targets.pop(0)
    reason = "completed"
    clock0 = time.monotonic()
    nsteps = int(round(t_end / dt))
    for i in range(nsteps):
        step(state, p, dt)
        ts.append(state.t)
        hs.append(state.h)
        while targets and state.t >= targets[0] - 0.5 * dt:
            snaps.append(_snapshot(state))
            targets.pop(0)
        if max_seconds is not None and (i % 128 == 0) and \
                time.monotonic() - clock0 > max_seconds:
            reason = "budget_exceeded"
            break
    meta = {
        "dt": dt,
        "dx": dx,
        "final_h": state.h,
        "final_t": state.t,
        "steps": len(ts) - 1,
        "termination": reason,
        "backend": _accel.BACKEND,
    }
    return Trajectory(np.column_stack([ts, hs]), snaps, meta)
