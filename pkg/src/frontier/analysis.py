"""Rate-law fitting and profile-convergence diagnostics.

The growth claims under test are two-sided-constant statements
(h between c1 g(t) and c2 g(t) for large t), so the statistics here are
flatness of the ratio h/g over a window and the log-log trend slope of
that ratio, rather than parameter convergence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .ratelaws import RateLaw
from .steadystate import SteadyProfile

_LN10 = np.log(10.0)


def _clean_series(h_series) -> Tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(h_series, dtype=float)
    t, h = arr[:, 0], arr[:, 1]
    keep = t > 0
    t, h = t[keep], h[keep]
    if (h <= 0).any():
        raise ValueError("h_series must be strictly positive")
    return t, h


def local_log_slope(h_series, window_decades: float = 0.5) -> np.ndarray:
    """Windowed least-squares slope of ln h against ln t.

    Returns an (N, 2) array of (t, p(t)) where p(t) is fitted over
    [t / 10^(w/2), t * 10^(w/2)] clipped to the data range.
    """
    t, h = _clean_series(h_series)
    if len(t) < 50:
        raise ValueError("need at least 50 positive-time points")
    span = np.log10(t[-1] / t[0])
    if span < 1.5:
        raise ValueError(f"need >= 1.5 decades of t, got {span:.2f}")
    lt = np.log(t)
    lh = np.log(h)
    half = 0.5 * window_decades * _LN10

    # prefix sums give every windowed regression in O(N log N)
    z = np.zeros(1)
    cx = np.concatenate([z, np.cumsum(lt)])
    cy = np.concatenate([z, np.cumsum(lh)])
    cxx = np.concatenate([z, np.cumsum(lt * lt)])
    cxy = np.concatenate([z, np.cumsum(lt * lh)])
    lo = np.searchsorted(lt, lt - half, side="left")
    hi = np.searchsorted(lt, lt + half, side="right")
    n = (hi - lo).astype(float)
    sx = cx[hi] - cx[lo]
    sy = cy[hi] - cy[lo]
    sxx = cxx[hi] - cxx[lo]
    sxy = cxy[hi] - cxy[lo]
    denom = n * sxx - sx * sx
    ok = (n >= 5) & (denom > 0)
    slope = np.full(len(t), np.nan)
    slope[ok] = (n[ok] * sxy[ok] - sx[ok] * sy[ok]) / denom[ok]
    out = np.column_stack([t, slope])
    return out[~np.isnan(slope)]


def ratio_flatness(h_series, law: RateLaw,
                   window: Tuple[float, float]) -> Tuple[float, float, float]:
    """(C_hat, max/min ratio, log-log trend slope) of r(t) = h(t)/g(t).

    For EXP_POWER laws the ratio is ln h / g.  The law's parameters are
    fixed by the caller (from the kernel prediction), not fitted.
    """
    t, h = _clean_series(h_series)
    t_lo, t_hi = window
    sel = (t >= t_lo) & (t <= t_hi)
    if sel.sum() < 5:
        raise ValueError(f"window {window} selects fewer than 5 data points")
    t, h = t[sel], h[sel]
    y = np.log(h) if law.applies_to_log else h
    if (y <= 0).any():
        raise ValueError("series not positive on the window after transform")
    r = y / law.shape(t)
    lr = np.log(r)
    c_hat = float(np.exp(lr.mean()))
    maxmin = float(r.max() / r.min())
    lt = np.log(t)
    trend = float(np.polyfit(lt, lr, 1)[0])
    return c_hat, maxmin, trend


@dataclass
class RateFit:
    law: RateLaw
    C_hat: float
    slope_diag: np.ndarray  # (t, local log slope) over the fit window
    flatness: float
    window: Tuple[float, float]
    rms_resid: float
    candidates: List[dict] = field(default_factory=list)
    ambiguous: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "law": self.law.to_dict(),
            "label": self.law.label(),
            "C_hat": self.C_hat,
            "flatness": self.flatness,
            "window": list(self.window),
            "rms_resid": self.rms_resid,
            "slope_diag": self.slope_diag.tolist(),
            "candidates": self.candidates,
            "ambiguous": self.ambiguous,
        }


def default_window(h_series, h0: Optional[float] = None) -> Tuple[float, float]:
    """Last decade of t, after discarding the transient with h <= 10 h0."""
    t, h = _clean_series(h_series)
    t_hi = t[-1]
    t_lo = t_hi / 10.0
    if h0 is not None:
        past = t[h > 10.0 * h0]
        if len(past):
            t_lo = max(t_lo, past[0])
    return t_lo, t_hi


def fit_rate(h_series, candidates: Sequence[RateLaw],
             window: Optional[Tuple[float, float]] = None,
             h0: Optional[float] = None) -> RateFit:
    """Select the candidate whose ratio trend is flattest on the window."""
    if len(candidates) < 2:
        raise ValueError("need at least 2 candidate laws")
    if window is None:
        window = default_window(h_series, h0)
    rows = []
    for law in candidates:
        c_hat, maxmin, trend = ratio_flatness(h_series, law, window)
        rows.append({"law": law.to_dict(), "label": law.label(),
                     "C_hat": c_hat, "flatness": maxmin, "trend_slope": trend})
    best_i = int(np.argmin([abs(r["trend_slope"]) for r in rows]))
    best = rows[best_i]
    best_trend = abs(best["trend_slope"])
    ambiguous = [r["label"] for i, r in enumerate(rows)
                 if i != best_i and abs(r["trend_slope"]) < max(1.5 * best_trend, 1e-12)]

    t, h = _clean_series(h_series)
    sel = (t >= window[0]) & (t <= window[1])
    law = candidates[best_i]
    y = np.log(h[sel]) if law.applies_to_log else h[sel]
    lr = np.log(y / law.shape(t[sel]))
    rms = float(np.sqrt(np.mean((lr - np.log(best["C_hat"])) ** 2)))
    try:
        diag = local_log_slope(h_series)
        diag = diag[(diag[:, 0] >= window[0]) & (diag[:, 0] <= window[1])]
    except ValueError:
        # series too short for the windowed diagnostic; the fit itself
        # only needs the ratio statistics
        diag = np.empty((0, 2))
    return RateFit(law=law, C_hat=best["C_hat"], slope_diag=diag,
                   flatness=best["flatness"], window=window, rms_resid=rms,
                   candidates=rows, ambiguous=ambiguous)


def speed_estimate(h_series) -> Tuple[float, dict]:
    """Least-squares front speed over the last half of the run, with a
    two-window agreement diagnostic."""
    arr = np.asarray(h_series, dtype=float)
    t, h = arr[:, 0], arr[:, 1]
    if len(t) < 10:
        raise ValueError("insufficient data for speed estimate")
    T = t[-1]

    def _slope(lo, hi):
        sel = (t >= lo) & (t <= hi)
        if sel.sum() < 3:
            raise ValueError("insufficient data in speed window")
        return float(np.polyfit(t[sel], h[sel], 1)[0])

    c0 = _slope(T / 2.0, T)
    s1 = _slope(T / 2.0, 3.0 * T / 4.0)
    s2 = _slope(3.0 * T / 4.0, T)
    diag = {
        "slope_first_window": s1,
        "slope_second_window": s2,
        "rel_disagreement": abs(s2 - s1) / max(abs(s2), 1e-300),
    }
    return c0, diag


def default_s_of_t(h: float) -> float:
    """Bulk-region edge s = h / ln(e + h): grows without bound yet is
    o(every rate law under test)."""
    return h / np.log(np.e + h)


def profile_gap(snapshots, steady: SteadyProfile, s_of_t=default_s_of_t) -> np.ndarray:
    """Per-snapshot sup over x <= s(t) of |u - U| + |v - V|.

    Snapshots and the steady profile must share dx.
    """
    rows = []
    for snap in snapshots:
        dx = snap.grid.dx
        if abs(dx - steady.dx) > 1e-12:
            raise ValueError("snapshot and steady profile grids differ")
        s = float(s_of_t(snap.h))
        j = int(np.floor(s / dx + 1e-12)) + 1
        if j > len(steady.U) or j > snap.grid.n:
            raise ValueError(f"s(t)={s:g} exceeds available domain")
        gap = np.abs(snap.u[:j] - steady.U[:j]) + np.abs(snap.v[:j] - steady.V[:j])
        rows.append((snap.t, float(gap.max())))
    return np.array(rows)
