"""Dispersal-kernel families, their normalization, tails and flux functional.

Five families are supported, named by their tail behavior:

    LOGLOG    J(x) = c ln^a(ln(s+|x|)) / ((s+|x|) ln^b(s+|x|)),  s = e^e, b > 1
    ALGLOG    J(x) = c ln^b(e+|x|) / (1+|x|)^g,                  g in (1,2)
    CRITLOG   J(x) = c ln^b(e+|x|) / (1+|x|)^2,                  b >= -1
    COMPACT   J(x) = c (1-(x/R)^2)^2 on [-R,R]
    POWERLAW  J(x) = c (1+|x|)^-g,                               g > 1

All are even, continuous, positive at 0 and normalized to unit mass.
Heavy-tail integrals are computed after the substitutions y = e^t
(ALGLOG/CRITLOG) and y = e^{e^w} (LOGLOG), which turn power-log tails
into exponentially damped integrands that adaptive quadrature handles
to full accuracy.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator

from .errors import NumericalError
from .ratelaws import RateLaw

_E = math.e
_SHIFT = math.exp(math.e)  # keeps ln ln(s+|x|) >= 1 for the LOGLOG family

_QUAD_TOL = 1e-12
_ENVELOPE_SLACK = 0.05
_ENVELOPE_XMIN = 10.0
_TABLE_POINTS = 10_000
_TABLE_ZMAX = 1e8


class Family(enum.Enum):
    LOGLOG = "LOGLOG"
    ALGLOG = "ALGLOG"
    CRITLOG = "CRITLOG"
    COMPACT = "COMPACT"
    POWERLAW = "POWERLAW"


class Envelope(NamedTuple):
    lower: float  # certified c1 with c1 g(|x|) <= J(x)
    upper: float  # certified c2 with J(x) <= c2 g(|x|)
    x_min: float


@dataclass(frozen=True)
class KernelSpec:
    family: Family
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    radius: float = 0.0
    norm_const: float = 0.0
    shift: float = _SHIFT
    envelope: Envelope = Envelope(1.0, 1.0, _ENVELOPE_XMIN)


def _log_e_plus_expm1(t: float) -> float:
    """Stable ln(e + e^t - 1) for scalar t in [0, inf)."""
    if t < 30.0:
        return math.log(_E + math.expm1(t))
    return t + math.log1p((_E - 1.0) * math.exp(-t))


def _shape(k: KernelSpec, x):
    """Unnormalized even profile; evaluate() multiplies by norm_const."""
    ax = np.abs(np.asarray(x, dtype=float))
    f = k.family
    if f is Family.COMPACT:
        r = np.clip(ax / k.radius, 0.0, 1.0)
        return (1.0 - r * r) ** 2
    if f is Family.POWERLAW:
        return (1.0 + ax) ** (-k.gamma)
    if f is Family.ALGLOG:
        return np.log(_E + ax) ** k.beta * (1.0 + ax) ** (-k.gamma)
    if f is Family.CRITLOG:
        return np.log(_E + ax) ** k.beta * (1.0 + ax) ** (-2.0)
    if f is Family.LOGLOG:
        s = k.shift
        ln = np.log(s + ax)
        return np.log(ln) ** k.alpha / ((s + ax) * ln ** k.beta)
    raise AssertionError(f)


def _quad_converged(value: float, err: float, what: str) -> float:
    if not np.isfinite(value) or err > 1e-10 * max(1.0, abs(value)):
        raise NumericalError(f"quadrature failed to converge for {what} (err={err:.2e})")
    return value


def _tail_integral_shape(k: KernelSpec, z: float) -> float:
    """Integral of the unnormalized shape over [z, inf), z >= 0."""
    f = k.family
    if f is Family.COMPACT:
        if z >= k.radius:
            return 0.0
        u = z / k.radius
        prim = lambda w: w - 2.0 * w**3 / 3.0 + w**5 / 5.0
        return k.radius * (prim(1.0) - prim(u))
    if f is Family.POWERLAW or (f in (Family.ALGLOG, Family.CRITLOG) and k.beta == 0.0):
        g = k.gamma if f is not Family.CRITLOG else 2.0
        return (1.0 + z) ** (1.0 - g) / (g - 1.0)
    if f in (Family.ALGLOG, Family.CRITLOG):
        g = k.gamma if f is Family.ALGLOG else 2.0
        b = k.beta
        fn = lambda t: _log_e_plus_expm1(t) ** b * math.exp(-(g - 1.0) * t)
        val, err = quad(fn, math.log1p(z), np.inf, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=200)
        return _quad_converged(val, err, f"{f.value} tail at z={z:g}")
    if f is Family.LOGLOG:
        a, b = k.alpha, k.beta
        w0 = math.log(math.log(k.shift + z))
        fn = lambda w: w**a * math.exp(-(b - 1.0) * w)
        val, err = quad(fn, w0, np.inf, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=200)
        return _quad_converged(val, err, f"LOGLOG tail at z={z:g}")
    raise AssertionError(f)


def _nominal_tail_shape(k: KernelSpec, x):
    """The family's asymptotic shape g(|x|) used for the envelope."""
    ax = np.abs(np.asarray(x, dtype=float))
    f = k.family
    if f is Family.POWERLAW:
        return ax ** (-k.gamma)
    if f is Family.ALGLOG:
        return np.log(ax) ** k.beta * ax ** (-k.gamma)
    if f is Family.CRITLOG:
        return np.log(ax) ** k.beta * ax ** (-2.0)
    if f is Family.LOGLOG:
        return np.log(np.log(ax)) ** k.alpha / (ax * np.log(ax) ** k.beta)
    raise AssertionError(f)


def _measure_envelope(k: KernelSpec) -> Envelope:
    if k.family is Family.COMPACT:
        return Envelope(1.0, 1.0, k.radius)
    xs = np.geomspace(_ENVELOPE_XMIN, 1e6, 200)
    ratio = evaluate(k, xs) / _nominal_tail_shape(k, xs)
    return Envelope(
        (1.0 - _ENVELOPE_SLACK) * float(ratio.min()),
        (1.0 + _ENVELOPE_SLACK) * float(ratio.max()),
        _ENVELOPE_XMIN,
    )


def make_kernel(family, alpha: float = 0.0, beta: float = 0.0,
                gamma: float = 0.0, radius: float = 1.0) -> KernelSpec:
    """Build a normalized KernelSpec; raises ValueError on bad parameters."""
    family = Family(family)
    if family is Family.LOGLOG and not beta > 1.0:
        raise ValueError(f"LOGLOG requires beta > 1, got {beta}")
    if family is Family.ALGLOG and not (1.0 < gamma < 2.0):
        raise ValueError(f"ALGLOG requires gamma in (1, 2), got {gamma}")
    if family is Family.CRITLOG and not beta >= -1.0:
        raise ValueError(f"CRITLOG requires beta >= -1, got {beta}")
    if family is Family.POWERLAW and not gamma > 1.0:
        raise ValueError(f"POWERLAW requires gamma > 1, got {gamma}")
    if family is Family.COMPACT and not radius > 0.0:
        raise ValueError(f"COMPACT requires radius > 0, got {radius}")

    proto = KernelSpec(family, alpha=alpha, beta=beta, gamma=gamma,
                       radius=radius, norm_const=1.0)
    half = _tail_integral_shape(proto, 0.0)
    k = KernelSpec(family, alpha=alpha, beta=beta, gamma=gamma, radius=radius,
                   norm_const=1.0 / (2.0 * half))
    return KernelSpec(family, alpha=alpha, beta=beta, gamma=gamma, radius=radius,
                      norm_const=k.norm_const, envelope=_measure_envelope(k))


def evaluate(k: KernelSpec, x):
    """Kernel density J(x); even, continuous, vectorized over x."""
    return k.norm_const * _shape(k, x)


@lru_cache(maxsize=64)
def _tail_table(k: KernelSpec) -> PchipInterpolator:
    z = np.concatenate([[0.0], np.geomspace(1e-3, _TABLE_ZMAX, _TABLE_POINTS - 1)])
    vals = np.array([_tail_integral_shape(k, float(zz)) for zz in z]) * k.norm_const
    # enforce exact monotonicity against quadrature noise at the 1e-14 level
    vals = np.minimum.accumulate(vals)
    return PchipInterpolator(z, vals, extrapolate=False)


def _has_closed_tail(k: KernelSpec) -> bool:
    return k.family in (Family.COMPACT, Family.POWERLAW) or (
        k.family in (Family.ALGLOG, Family.CRITLOG) and k.beta == 0.0
    )


def tail_mass(k: KernelSpec, z):
    """Mass in [z, inf): closed form where available, cubic table otherwise.

    Vectorized over z; direct quadrature stays available as tail_mass_quad.
    """
    zs = np.asarray(z, dtype=float)
    if _has_closed_tail(k):
        out = k.norm_const * np.asarray(
            _closed_tail_shape(k, np.maximum(zs, 0.0)), dtype=float)
    else:
        tab = _tail_table(k)
        inside = zs <= _TABLE_ZMAX
        out = np.where(inside, tab(np.minimum(zs, _TABLE_ZMAX)), 0.0)
        far = ~inside
        if np.any(far):
            fz = np.atleast_1d(zs)[np.atleast_1d(far)]
            fv = [k.norm_const * _tail_integral_shape(k, float(v)) for v in fz]
            out = np.asarray(out, dtype=float)
            np.place(out, far, fv)
    return float(out) if np.ndim(z) == 0 else out


def _closed_tail_shape(k: KernelSpec, z):
    f = k.family
    if f is Family.COMPACT:
        u = np.clip(np.asarray(z, dtype=float) / k.radius, 0.0, 1.0)
        prim = lambda w: w - 2.0 * w**3 / 3.0 + w**5 / 5.0
        return k.radius * (prim(1.0) - prim(u))
    g = 2.0 if f is Family.CRITLOG else k.gamma
    return (1.0 + np.asarray(z, dtype=float)) ** (1.0 - g) / (g - 1.0)


def tail_mass_quad(k: KernelSpec, z: float) -> float:
    """Adaptive-quadrature oracle for tail_mass (scalar only)."""
    return k.norm_const * _tail_integral_shape(k, float(z))


def first_moment_finite(k: KernelSpec) -> bool:
    """Whether the one-sided first moment of J is finite; decided per family."""
    if k.family is Family.COMPACT:
        return True
    if k.family is Family.POWERLAW:
        return k.gamma > 2.0
    return False


@lru_cache(maxsize=64)
def _moment_below_one(k: KernelSpec) -> float:
    """Integral of y J(y) over [0, 1]."""
    val, err = quad(lambda y: y * float(evaluate(k, y)), 0.0, 1.0,
                    epsabs=_QUAD_TOL, epsrel=_QUAD_TOL)
    return _quad_converged(val, err, "moment over [0,1]")


def flux_functional(k: KernelSpec, h: float) -> float:
    """I(h) = int_0^1 yJ + int_1^h yJ + h * tail_mass(h), for h > 1.

    The middle term is integrated after y = e^t, so the integrand is
    smooth and at most exponential on [0, ln h].
    """
    if not h > 1.0:
        raise ValueError(f"flux_functional requires h > 1, got {h}")
    fn = lambda t: math.exp(2.0 * t) * float(evaluate(k, math.exp(t)))
    lh = math.log(h)
    pts = None
    if k.family is Family.COMPACT and k.radius > 1.0 and math.log(k.radius) < lh:
        pts = [math.log(k.radius)]
    mid, err = quad(fn, 0.0, lh, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL,
                    limit=200, points=pts)
    _quad_converged(mid, err, f"flux middle term at h={h:g}")
    return _moment_below_one(k) + mid + h * tail_mass_quad(k, h)


def predicted_rate(k: KernelSpec) -> RateLaw:
    """The spreading-rate law the kernel's tail dictates."""
    f = k.family
    if f is Family.LOGLOG:
        return RateLaw.exp_power(1.0 / k.beta, k.alpha / k.beta)
    if f is Family.ALGLOG:
        return RateLaw.power_log(1.0 / (k.gamma - 1.0), k.beta / (k.gamma - 1.0))
    if f is Family.CRITLOG:
        if k.beta == -1.0:
            return RateLaw.linear_log_log()
        return RateLaw.linear_log_pow(k.beta + 1.0)
    if f is Family.COMPACT:
        return RateLaw.linear()
    # POWERLAW: finite speed only when the first moment exists
    if k.gamma > 2.0:
        return RateLaw.linear()
    if k.gamma == 2.0:
        return RateLaw.linear_log_pow(1.0)
    return RateLaw.power_log(1.0 / (k.gamma - 1.0), 0.0)
