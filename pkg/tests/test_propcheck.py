"""Ramp-inequality oracle and the paired-run ordering harness."""

from dataclasses import replace

import numpy as np
import pytest

import frontier as fr
from frontier.evolution import InitialData, ModelParams
from frontier.propcheck import (Prop21Case, build_case, check_prop21,
                                comparison_harness, half_width_for_mass,
                                ramp_profile)


@pytest.fixture(scope="module")
def compact():
    return fr.make_kernel("COMPACT", radius=1.0)


@pytest.fixture(scope="module")
def reference_case(compact):
    # whole kernel mass sits inside radius 1, so l0 = 1 works for eps = 0.1
    # and the closing formula gives k0 = 2^2 * 1 * 1 / 0.1 = 40
    return build_case(compact, l=1.0, rho=1.0, eps=0.1, k1=50.0, k2=200.0, l0=1.0)


def test_reference_case_geometry(reference_case):
    assert reference_case.k0 == pytest.approx(40.0)
    assert reference_case.k1 == 50.0 and reference_case.k2 == 200.0


def test_ramp_profile_values(reference_case):
    c = reference_case
    assert ramp_profile(c, c.k2 - c.k1) == 1.0
    assert ramp_profile(c, 0.0) == 1.0
    assert ramp_profile(c, c.k2) == 0.0
    assert ramp_profile(c, c.k2 + 5.0) == 0.0
    # rho = 1: linear ramp, midpoint of the fall is exactly 1/2
    assert ramp_profile(c, c.k2 - c.k1 / 2.0) == pytest.approx(0.5)


def test_ramp_profile_convex_power():
    k = fr.make_kernel("COMPACT", radius=1.0)
    c = build_case(k, l=1.0, rho=2.0, eps=0.1, l0=1.0)
    assert ramp_profile(c, c.k2 - c.k1 / 2.0) == pytest.approx(0.25)


def test_half_width_for_mass(compact):
    # tail_mass(l0) <= eps/4 with the smallest such l0
    l0 = half_width_for_mass(compact, 0.1)
    from frontier.kernels import tail_mass
    assert tail_mass(compact, l0) <= 0.025
    assert tail_mass(compact, 0.9 * l0) > 0.025


def test_reference_case_passes(reference_case):
    ok, margin = check_prop21(reference_case, n_samples=30)
    assert ok
    assert margin >= 0.0


def test_eps_out_of_range(compact):
    with pytest.raises(ValueError):
        Prop21Case(kernel=compact, l=1.0, rho=1.0, eps=0.0,
                   k0=40.0, k1=50.0, k2=200.0, l0=1.0)


def test_geometry_preconditions(compact):
    with pytest.raises(ValueError):
        Prop21Case(kernel=compact, l=1.0, rho=1.0, eps=0.1,
                   k0=40.0, k1=50.0, k2=60.0, l0=1.0)  # k2 - k1 < 2 k0


def test_flat_profile_limit(compact):
    # k2 - k1 far beyond the sample span: xi = 1 there and the inequality
    # reduces to the normalization int J >= 1 - eps
    case = build_case(compact, l=1.0, rho=1.0, eps=0.1, k1=50.0, k2=1.0e4, l0=1.0)
    from frontier.propcheck import _lhs_integral
    x = 500.0
    assert ramp_profile(case, x) == 1.0
    assert _lhs_integral(case, x) == pytest.approx(1.0, abs=1e-9)


# -- comparison harness -------------------------------------------------

def _params(amp):
    k = fr.make_kernel("ALGLOG", gamma=1.5)
    rx = fr.ReactionSpec(1, 1, 2, 1, 2, 1)
    return ModelParams(1.0, 1.0, 1.0, 1.0, 5.0, k, k, rx,
                       InitialData("cosine_bump", amp, amp))


def test_comparison_identical_params():
    p = _params(0.3)
    rep = comparison_harness(p, p, t_end=5.0, output_times=[5.0])
    assert rep["ok"]
    assert rep["max_h_gap_violation"] == 0.0
    assert rep["max_field_violation"] == 0.0


def test_comparison_ordered_amplitudes():
    rep = comparison_harness(_params(0.2), _params(0.4), t_end=50.0,
                             output_times=[10.0, 25.0, 50.0])
    assert rep["ok"], rep


def test_comparison_zero_lower_solution():
    rep = comparison_harness(_params(0.0), _params(0.4), t_end=10.0,
                             output_times=[10.0])
    assert rep["ok"]


def test_comparison_rejects_mismatched_params():
    p_lo = _params(0.2)
    p_hi = replace(_params(0.4), d1=2.0)
    with pytest.raises(ValueError):
        comparison_harness(p_lo, p_hi, t_end=1.0)


def test_comparison_rejects_unordered_init():
    with pytest.raises(ValueError):
        comparison_harness(_params(0.4), _params(0.2), t_end=1.0)
