"""Shared fixtures.

The long simulations that several test modules (and the acceptance gate)
interrogate are session-scoped so they run exactly once.
"""

import numpy as np
import pytest

import frontier as fr
from frontier.evolution import InitialData, ModelParams, run
from frontier.steadystate import solve_steady

REF_SNAPSHOT_TIMES = [12.5, 25.0, 50.0, 100.0, 200.0]


@pytest.fixture(scope="session")
def rx_sym():
    """Symmetric supercritical defaults with equilibrium (1, 1)."""
    return fr.ReactionSpec(a=1.0, b=1.0, p=2.0, q=1.0, r=2.0, s=1.0)


@pytest.fixture(scope="session")
def rx_sub():
    """Subcritical reaction with R0 = 0.25."""
    return fr.ReactionSpec(a=1.0, b=1.0, p=0.5, q=1.0, r=0.5, s=1.0)


@pytest.fixture(scope="session")
def kernel_alglog():
    return fr.make_kernel("ALGLOG", gamma=1.5)


@pytest.fixture(scope="session")
def kernel_critlog():
    return fr.make_kernel("CRITLOG", beta=0.0)


@pytest.fixture(scope="session")
def kernel_compact():
    return fr.make_kernel("COMPACT", radius=1.0)


@pytest.fixture(scope="session")
def kernel_powerlaw():
    return fr.make_kernel("POWERLAW", gamma=1.5)


def _params(kernel, rx, mu, amp=0.5):
    return ModelParams(d1=1.0, d2=1.0, mu1=mu, mu2=mu, h0=5.0,
                       kernel1=kernel, kernel2=kernel, reaction=rx,
                       init=InitialData("cosine_bump", amp, amp))


@pytest.fixture(scope="session")
def ref_run(kernel_alglog, rx_sym):
    """Reference supercritical run: ALGLOG gamma=1.5, t_end=200, dx=0.25.

    mu = 0.45 pushes the front to h(200) ~ 2.5e3 so the bulk region
    s(t) = h/ln(e+h) samples well-relaxed territory by the end.
    """
    p = _params(kernel_alglog, rx_sym, mu=0.45)
    traj = run(p, 200.0, output_times=REF_SNAPSHOT_TIMES, dx=0.25)
    return p, traj


@pytest.fixture(scope="session")
def ref_steady(ref_run):
    """Steady profile on [0, 700], matching the reference run's grid."""
    p, _ = ref_run
    return solve_steady(p, L=700.0, tol=1e-10, dx=0.25)


@pytest.fixture(scope="session")
def rx_fast():
    """Fast saturating reaction (p = r = 10).

    Freshly invaded territory saturates quickly relative to the front, so
    the local growth exponent tracks the asymptotic rate law within the
    t <= 1e3 horizon instead of overshooting it.
    """
    return fr.ReactionSpec(a=1.0, b=1.0, p=10.0, q=1.0, r=10.0, s=1.0)


def _trend_params(kernel, rx_fast, mu):
    eq = fr.equilibrium(rx_fast)
    return ModelParams(d1=1.0, d2=1.0, mu1=mu, mu2=mu, h0=5.0,
                       kernel1=kernel, kernel2=kernel, reaction=rx_fast,
                       init=InitialData("constant_plateau", eq.u_star, eq.v_star))


@pytest.fixture(scope="session")
def alglog_trend_run(kernel_alglog, rx_fast):
    """Long ALGLOG run for the h ~ t^2 trend check (t_end = 1e3, dx = 0.5)."""
    p = _trend_params(kernel_alglog, rx_fast, mu=0.009)
    return run(p, 1.0e3, output_times=[1.0e3], dx=0.5)


@pytest.fixture(scope="session")
def critlog_trend_run(kernel_critlog, rx_fast):
    """Long CRITLOG beta=0 run for the h ~ t ln t trend check."""
    p = _trend_params(kernel_critlog, rx_fast, mu=0.01)
    return run(p, 1.0e3, output_times=[1.0e3], dx=0.5)


@pytest.fixture(scope="session")
def compact_run(kernel_compact, rx_sym):
    """Finite-speed COMPACT run out to t = 500."""
    p = _params(kernel_compact, rx_sym, mu=1.0)
    return run(p, 500.0, output_times=[500.0], dx=0.25)


@pytest.fixture(scope="session")
def vanishing_run(kernel_alglog, rx_sub):
    """Subcritical (R0 = 0.25) run out to t = 200."""
    p = _params(kernel_alglog, rx_sub, mu=1.0)
    return run(p, 200.0, output_times=[100.0, 200.0], dx=0.25)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260823)
