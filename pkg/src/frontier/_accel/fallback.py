"""Pure-numpy twin of the compiled step kernels."""

import numpy as np


def direct_convolve(kern, w, dx):
    """Direct O(n^2) evaluation of out_i = dx * sum_j kern[|i-j|] * w_j.

    np.convolve performs plain sliding-window summation, so this path is
    independent of the FFT route it checks.
    """
    n = len(w)
    ksym = np.concatenate([kern[n - 1:0:-1], kern[:n]])
    return dx * np.convolve(w, ksym)[n - 1:2 * n - 1]


def euler_update(u, v, conv_u, conv_v, d1, d2, a, b, p, q, r, s, dt, m):
    uj = u[:m]
    vj = v[:m]
    un = uj + dt * (d1 * (conv_u[:m] - uj) - a * uj + p * vj / (1.0 + q * vj))
    vn = vj + dt * (d2 * (conv_v[:m] - vj) - b * vj + r * uj / (1.0 + s * uj))
    bad = bool(np.isnan(un).any() or np.isnan(vn).any())
    lo = 0.0 if (bad or not m) else min(0.0, float(un.min()), float(vn.min()))
    u[:m] = un
    v[:m] = vn
    return lo, bad


def flux_weighted_sum(u, v, tail1, tail2, mu1, mu2, dx, m):
    w = np.ones(m)
    if m:
        w[0] = 0.5
        w[m - 1] = 0.5
    acc = np.dot(w, mu1 * u[:m] * tail1[:m] + mu2 * v[:m] * tail2[:m])
    return float(acc) * dx
