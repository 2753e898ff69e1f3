# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner kernels for the time-march hot loop.

The pure-Python twin lives in frontier._accel.fallback; both expose the
same three functions and the backend is chosen at import time.
"""

import numpy as np

cimport numpy as cnp


def direct_convolve(double[::1] kern, double[::1] w, double dx):
    """Direct O(n^2) evaluation of out_i = dx * sum_j kern[|i-j|] * w_j.

    This is the quadrature oracle for the FFT convolution path; keep it
    a plain double loop so it shares no code with the FFT route.
    """
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t i, j, m
    cdef double acc
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    for i in range(n):
        acc = 0.0
        for j in range(n):
            m = i - j if i >= j else j - i
            acc += kern[m] * w[j]
        ov[i] = acc * dx
    return out


def euler_update(double[::1] u, double[::1] v,
                 double[::1] conv_u, double[::1] conv_v,
                 double d1, double d2, double a, double b,
                 double p, double q, double r, double s,
                 double dt, Py_ssize_t m):
    """In-place forward-Euler update of the first m nodes.

    Reaction terms are the saturating pair H(v) = p v/(1+q v) and
    G(u) = r u/(1+s u).  Returns (min_value, has_nan) where min_value is
    the most negative value seen before any clamping is applied by the
    caller.
    """
    cdef Py_ssize_t j
    cdef double uj, vj, un, vn
    cdef double lo = 0.0
    cdef bint bad = False
    for j in range(m):
        uj = u[j]
        vj = v[j]
        un = uj + dt * (d1 * (conv_u[j] - uj) - a * uj + p * vj / (1.0 + q * vj))
        vn = vj + dt * (d2 * (conv_v[j] - vj) - b * vj + r * uj / (1.0 + s * uj))
        if un != un or vn != vn:
            bad = True
        if un < lo:
            lo = un
        if vn < lo:
            lo = vn
        u[j] = un
        v[j] = vn
    return lo, bad


def flux_weighted_sum(double[::1] u, double[::1] v,
                      double[::1] tail1, double[::1] tail2,
                      double mu1, double mu2, double dx, Py_ssize_t m):
    """Trapezoid sum dx * sum_j w_j (mu1 u_j tail1_j + mu2 v_j tail2_j)."""
    cdef Py_ssize_t j
    cdef double acc = 0.0
    cdef double wj
    for j in range(m):
        wj = 0.5 if (j == 0 or j == m - 1) else 1.0
        acc += wj * (mu1 * u[j] * tail1[j] + mu2 * v[j] * tail2[j])
    return acc * dx
