#!/usr/bin/env python3
"""Micro- and end-to-end benchmark of the compiled step kernels against
the pure-numpy fallback.

Per-kernel timings run both implementations in-process (the backends are
plain modules); the end-to-end row re-runs the same simulation in a
subprocess with FRONTIER_FORCE_PYTHON=1, since the backend is frozen at
import time.

Usage: python3 benchmarks/bench_core.py [--sizes 512,2048,8192] [--repeat 5]
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from frontier._accel import BACKEND, fallback

try:
    from frontier._accel import _core
except ImportError:
    _core = None


def _best(fn, repeat, number=1):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def bench_micro(sizes, repeat, rng):
    rows = []
    for n in sizes:
        kern = 1.0 / (1.0 + np.arange(n, dtype=float)) ** 1.5
        w = rng.random(n)
        u = rng.random(n) * 0.5
        v = rng.random(n) * 0.5
        tails = np.exp(-np.arange(n, dtype=float) / n)
        args_eu = (1.0, 1.0, 1.0, 1.0, 2.0, 1.0, 2.0, 1.0, 1e-3, n)

        for name, impl in (("compiled", _core), ("fallback", fallback)):
            if impl is None:
                continue
            t_conv = _best(lambda: impl.direct_convolve(kern, w, 0.25), repeat)
            uu, vv = u.copy(), v.copy()
            t_eul = _best(lambda: impl.euler_update(uu, vv, w, w, *args_eu),
                          repeat, number=10)
            t_flux = _best(lambda: impl.flux_weighted_sum(u, v, tails, tails,
                                                          0.5, 0.5, 0.25, n),
                           repeat, number=10)
            rows.append((n, name, t_conv, t_eul, t_flux))
    return rows


_END_TO_END = """
import time
import frontier
from frontier.evolution import InitialData, ModelParams, run
k = frontier.make_kernel("ALGLOG", gamma=1.5)
rx = frontier.ReactionSpec(1, 1, 2, 1, 2, 1)
p = ModelParams(1.0, 1.0, 0.45, 0.45, 5.0, k, k, rx,
                InitialData("cosine_bump", 0.5, 0.5))
t0 = time.perf_counter()
traj = run(p, 100.0, dx=0.25)
print(frontier.BACKEND, time.perf_counter() - t0, traj.h_series[-1, 1])
"""


def bench_end_to_end():
    out = {}
    for env_extra in ({}, {"FRONTIER_FORCE_PYTHON": "1"}):
        env = {**os.environ, **env_extra}
        res = subprocess.run([sys.executable, "-c", _END_TO_END], env=env,
                             capture_output=True, text=True, check=True)
        backend, secs, h_final = res.stdout.split()
        out[backend] = (float(secs), float(h_final))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="512,2048,8192")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(0)

    print(f"active backend: {BACKEND}"
          + ("" if _core is not None else "  (compiled extension unavailable)"))
    print(f"\n{'n':>6} {'backend':>9} {'direct_convolve':>16} "
          f"{'euler_update':>13} {'flux_sum':>10}")
    for n, name, t_conv, t_eul, t_flux in bench_micro(sizes, args.repeat, rng):
        print(f"{n:>6} {name:>9} {t_conv * 1e3:>13.3f} ms "
              f"{t_eul * 1e6:>10.1f} us {t_flux * 1e6:>7.1f} us")

    print("\nend-to-end (ALGLOG reference run to t=100, dx=0.25):")
    results = bench_end_to_end()
    for backend, (secs, h_final) in results.items():
        print(f"  {backend:>9}: {secs:7.2f} s   h(100) = {h_final:.6f}")
    if len(results) == 2:
        hs = {h for _, h in results.values()}
        agree = max(hs) - min(hs) <= 1e-9
        print(f"  backends agree on h(100): {agree}")


if __name__ == "__main__":
    main()
