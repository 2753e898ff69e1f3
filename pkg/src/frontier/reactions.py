"""Saturating reaction pair H, G with decay rates a, b.

H(v) = p v / (1 + q v) and G(u) = r u / (1 + s u); both vanish at 0, are
strictly increasing and strictly concave for positive q, s, and are
bounded by p/q and r/s.  The reproduction number is H'(0)G'(0)/(ab).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NumericalError

_BISECT_TOL = 1e-14
_BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class ReactionSpec:
    a: float
    b: float
    p: float
    q: float
    r: float
    s: float

    def __post_init__(self):
        for name in ("a", "b", "p", "r"):
            if not getattr(self, name) > 0:
                raise ValueError(f"reaction rate {name} must be positive")
        if self.q < 0 or self.s < 0:
            raise ValueError("saturation constants q, s must be nonnegative")

    def H(self, v):
        return self.p * np.asarray(v, dtype=float) / (1.0 + self.q * np.asarray(v, dtype=float))

    def G(self, u):
        return self.r * np.asarray(u, dtype=float) / (1.0 + self.s * np.asarray(u, dtype=float))

    @property
    def H_sup(self) -> float:
        """Supremum of H; infinite when q = 0."""
        return self.p / self.q if self.q > 0 else np.inf

    @property
    def G_sup(self) -> float:
        return self.r / self.s if self.s > 0 else np.inf


@dataclass(frozen=True)
class EquilibriumResult:
    u_star: float
    v_star: float
    residual: float


def reproduction_number(rx: ReactionSpec) -> float:
    """H'(0) G'(0) / (a b) = p r / (a b) for the saturating forms."""
    return rx.p * rx.r / (rx.a * rx.b)


def equilibrium(rx: ReactionSpec) -> Optional[EquilibriumResult]:
    """The unique positive root of a u = H(v), b v = G(u); None when R0 <= 1.

    Found by bisection on F(u) = H(G(u)/b)/a - u over (0, u_hi] with
    u_hi = H(G_sup/b)/a + 1, which brackets the root because H is bounded.
    """
    if reproduction_number(rx) <= 1.0:
        return None
    if not (rx.q > 0 and rx.s > 0):
        raise NumericalError("equilibrium bracket requires q, s > 0 (bounded H, G)")
    F = lambda u: float(rx.H(rx.G(u) / rx.b)) / rx.a - u
    hi = float(rx.H(rx.G_sup / rx.b)) / rx.a + 1.0
    lo = 1e-300
    if not (F(hi) < 0):
        raise NumericalError("equilibrium bracket failure: F(u_hi) >= 0")
    # F(u) ~ (R0 - 1) u > 0 near 0
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if F(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _BISECT_TOL * max(1.0, hi):
            break
    u_star = 0.5 * (lo + hi)
    v_star = float(rx.G(u_star)) / rx.b
    residual = max(abs(rx.a * u_star - float(rx.H(v_star))),
                   abs(rx.b * v_star - float(rx.G(u_star))))
    return EquilibriumResult(u_star, v_star, residual)


def validate_H(rx: ReactionSpec, z_max: float = 100.0, n: int = 10_000) -> dict:
    """Check every clause of the growth hypothesis on sampled grids.

    Returns a per-condition pass/fail report; never raises.
    """
    z = np.linspace(0.0, z_max, n)
    Hz, Gz = rx.H(z), rx.G(z)
    dH, dG = np.diff(Hz), np.diff(Gz)
    d2H, d2G = np.diff(Hz, 2), np.diff(Gz, 2)

    report = {
        "zero_at_origin": bool(Hz[0] == 0.0 and Gz[0] == 0.0),
        "strictly_increasing": bool((dH > 0).all() and (dG > 0).all()),
        "strictly_concave": bool((d2H < 0).all() and (d2G < 0).all()),
    }
    # existence of z_hat with G(H(z_hat)/a) < b z_hat, scanned over (0, 1e6]
    zz = np.geomspace(1e-3, 1e6, 2000)
    ok = rx.G(rx.H(zz) / rx.a) < rx.b * zz
    report["sublinear_composition"] = bool(ok.any())
    report["z_hat"] = float(zz[ok][0]) if ok.any() else None
    report["all_pass"] = all(
        report[k] for k in
        ("zero_at_origin", "strictly_increasing", "strictly_concave", "sublinear_composition")
    )
    return report
