"""Uniform grid over the growing domain [0, h(t)] and the discrete
nonlocal operator and boundary-flux quadratures.

Fields live at nodes x_j = j dx; the front h lives off-grid with
x_{n-1} <= h < x_{n-1} + dx.  Node values at x_j >= h are held at zero.
The nonlocal integral uses trapezoid weights folded into a Toeplitz
convolution, evaluated either by FFT (circular even-kernel embedding on
a buffer of at least twice the node count) or by the direct O(n^2) sum
that serves as its oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import next_fast_len

from . import _accel
from .kernels import KernelSpec, evaluate, tail_mass


@dataclass
class Grid:
    dx: float
    n: int
    capacity: int

    def __post_init__(self):
        if self.dx <= 0:
            raise ValueError("grid spacing dx must be positive")
        if self.n < 1 or self.capacity < self.n:
            raise ValueError("invalid grid sizes")

    def nodes(self) -> np.ndarray:
        return self.dx * np.arange(self.n)


@dataclass
class SimState:
    t: float
    h: float
    u: np.ndarray  # length grid.capacity; entries beyond grid.n are zero
    v: np.ndarray
    grid: Grid

    def active_count(self) -> int:
        """Number of nodes with x_j < h (the nodes the PDE updates)."""
        m = int(np.ceil(self.h / self.grid.dx - 1e-12))
        return min(m, self.grid.n)

    def copy(self) -> "SimState":
        return SimState(self.t, self.h, self.u.copy(), self.v.copy(),
                        Grid(self.grid.dx, self.grid.n, self.grid.capacity))


class KernelTable:
    """Cached kernel node samples K_m = J(m dx) and their wrapped FFTs.

    Samples extend lazily as the domain grows; the FFT of the circularly
    embedded even kernel is cached per buffer length, which only changes
    when the grid capacity doubles.
    """

    def __init__(self, kernel: KernelSpec, dx: float):
        self.kernel = kernel
        self.dx = dx
        self._samples = np.asarray(evaluate(kernel, dx * np.arange(256)), dtype=float)
        self._rfft_cache: dict = {}

    def samples(self, n: int) -> np.ndarray:
        if n > len(self._samples):
            grow = max(n, 2 * len(self._samples))
            self._samples = np.asarray(
                evaluate(self.kernel, self.dx * np.arange(grow)), dtype=float)
        return self._samples[:n]

    def wrapped_rfft(self, n: int, length: int) -> np.ndarray:
        key = (n, length)
        got = self._rfft_cache.get(key)
        if got is None:
            k = self.samples(n)
            buf = np.zeros(length)
            buf[:n] = k
            buf[length - n + 1:] = k[1:][::-1]
            got = np.fft.rfft(buf)
            if len(self._rfft_cache) > 8:
                self._rfft_cache.clear()
            self._rfft_cache[key] = got
        return got


def _trapezoid_weights(w: np.ndarray) -> np.ndarray:
    out = w.copy()
    if len(out):
        out[0] *= 0.5
        out[-1] *= 0.5
    return out


_TABLE_CACHE: dict = {}


def table_for(kernel: KernelSpec, dx: float) -> KernelTable:
    key = (kernel, dx)
    tab = _TABLE_CACHE.get(key)
    if tab is None:
        if len(_TABLE_CACHE) > 16:
            _TABLE_CACHE.clear()
        tab = _TABLE_CACHE.setdefault(key, KernelTable(kernel, dx))
    return tab


def nonlocal_apply(kernel, w: np.ndarray, grid: Grid, h: float,
                   method: str = "fft") -> np.ndarray:
    """dx * sum_j K_{i-j} c_j w_j at the active nodes x_i < h.

    w must vanish at nodes beyond h.  Returns an array over the active
    nodes; c_j are trapezoid weights over [0, x_{m-1}].  kernel may be a
    KernelSpec or a prebuilt KernelTable.
    """
    table = kernel if isinstance(kernel, KernelTable) else table_for(kernel, grid.dx)
    m = min(int(np.ceil(h / grid.dx - 1e-12)), grid.n)
    if m <= 0:
        return np.zeros(0)
    wts = _trapezoid_weights(np.asarray(w[:m], dtype=float))
    if method == "direct":
        return _accel.direct_convolve(table.samples(m), wts, grid.dx)
    if method != "fft":
        raise ValueError(f"unknown convolution method {method!r}")
    ncap = max(m, grid.capacity)
    length = next_fast_len(2 * ncap)
    buf = np.zeros(length)
    buf[:m] = wts
    out = np.fft.irfft(np.fft.rfft(buf) * table.wrapped_rfft(ncap, length), length)
    return grid.dx * out[:m]


def boundary_flux(state: SimState, k1: KernelSpec, k2: KernelSpec,
                  mu1: float, mu2: float) -> float:
    """Front speed dx * sum_j c_j [mu1 u_j T1(h-x_j) + mu2 v_j T2(h-x_j)].

    T_i is the kernel tail mass; the identity int_h^inf J(x-y) dy =
    tail_mass(h-x) collapses the inner integral of the double flux
    integral exactly.
    """
    m = state.active_count()
    if m <= 0:
        return 0.0
    z = state.h - state.grid.dx * np.arange(m)
    tails1 = np.ascontiguousarray(tail_mass(k1, z), dtype=float)
    tails2 = tails1 if k2 == k1 else np.ascontiguousarray(tail_mass(k2, z), dtype=float)
    return _accel.flux_weighted_sum(
        np.ascontiguousarray(state.u[:m]), np.ascontiguousarray(state.v[:m]),
        tails1, tails2, mu1, mu2, state.grid.dx, m)


def extend_domain(state: SimState) -> SimState:
    """Grow the node set (in place) so that x_{n-1} <= h < x_{n-1} + dx.

    New nodes are zero-initialized; reallocation doubles the capacity.
    """
    g = state.grid
    n_new = int(np.floor(state.h / g.dx + 1e-12)) + 1
    if n_new <= g.n:
        return state
    if n_new > g.capacity:
        cap = max(n_new, 2 * g.capacity)
        u = np.zeros(cap)
        v = np.zeros(cap)
        u[:g.n] = state.u[:g.n]
        v[:g.n] = state.v[:g.n]
        state.u, state.v = u, v
        g.capacity = cap
    g.n = n_new
    return state
