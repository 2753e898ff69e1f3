"""Compiled backend vs pure-python fallback: identical results, and the
FRONTIER_FORCE_PYTHON override."""

import os
import subprocess
import sys

import numpy as np
import pytest

from frontier import _accel
from frontier._accel import fallback


def _random_kernel_samples(rng, n):
    # decaying positive samples resembling a heavy-tailed kernel row
    return 0.5 / (1.0 + np.arange(n, dtype=float)) ** 1.5 * (1.0 + 0.1 * rng.random(n))


def test_backend_is_compiled_by_default():
    if os.environ.get("FRONTIER_FORCE_PYTHON"):
        pytest.skip("fallback forced via environment")
    assert _accel.BACKEND == "compiled"


def test_force_python_env(tmp_path):
    env = dict(os.environ, FRONTIER_FORCE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import frontier; print(frontier.BACKEND)"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("n", [1, 2, 64, 257, 1024])
def test_direct_convolve_backends_agree(rng, n):
    kern = _random_kernel_samples(rng, n)
    w = rng.random(n)
    a = _accel.direct_convolve(kern, w, 0.25)
    b = fallback.direct_convolve(kern, w, 0.25)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-13)


def test_euler_update_backends_agree(rng):
    m = 500
    args = (1.0, 0.7, 1.0, 1.2, 2.0, 1.0, 2.0, 1.0, 0.05, m)
    u1, v1 = rng.random(m + 8), rng.random(m + 8)
    u2, v2 = u1.copy(), v1.copy()
    cu, cv = rng.random(m), rng.random(m)
    lo1, bad1 = _accel.euler_update(u1, v1, cu, cv, *args)
    lo2, bad2 = fallback.euler_update(u2, v2, cu, cv, *args)
    assert bad1 == bad2 == False  # noqa: E712
    assert lo1 == pytest.approx(lo2, abs=1e-15)
    np.testing.assert_allclose(u1, u2, rtol=0, atol=1e-14)
    np.testing.assert_allclose(v1, v2, rtol=0, atol=1e-14)


def test_euler_update_flags_nan(rng):
    m = 16
    u, v = rng.random(m), rng.random(m)
    cu = rng.random(m)
    cu[7] = np.nan
    for impl in (_accel, fallback):
        uu, vv = u.copy(), v.copy()
        _, bad = impl.euler_update(uu, vv, cu.copy(), rng.random(m),
                                   1.0, 1.0, 1.0, 1.0, 2.0, 1.0, 2.0, 1.0, 0.05, m)
        assert bad


def test_flux_weighted_sum_backends_agree(rng):
    m = 333
    u, v = rng.random(m), rng.random(m)
    t1, t2 = rng.random(m), rng.random(m)
    a = _accel.flux_weighted_sum(u, v, t1, t2, 0.3, 0.7, 0.25, m)
    b = fallback.flux_weighted_sum(u, v, t1, t2, 0.3, 0.7, 0.25, m)
    assert a == pytest.approx(b, rel=1e-13)
