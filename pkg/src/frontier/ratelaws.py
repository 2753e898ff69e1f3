"""Candidate asymptotic growth laws for the front position h(t).

Each law pairs a textual form with the nominal shape g(t) it asserts,
up to a multiplicative constant:

    LINEAR          h ~ C t
    POWER_LOG       h ~ C t^p ln^q t
    LINEAR_LOG_POW  h ~ C t ln^m t
    LINEAR_LOG_LOG  h ~ C t ln ln t
    EXP_POWER       ln h ~ C t^p ln^q t   (shape applies to ln h)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class RateForm(enum.Enum):
    LINEAR = "linear"
    POWER_LOG = "power_log"
    LINEAR_LOG_POW = "linear_log_pow"
    LINEAR_LOG_LOG = "linear_log_log"
    EXP_POWER = "exp_power"


@dataclass(frozen=True)
class RateLaw:
    form: RateForm
    p: float = 0.0
    q: float = 0.0

    def __post_init__(self):
        if self.form in (RateForm.POWER_LOG, RateForm.EXP_POWER) and self.p <= 0:
            raise ValueError("exponent p must be positive")
        if not (np.isfinite(self.p) and np.isfinite(self.q)):
            raise ValueError("law parameters must be finite")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def linear() -> "RateLaw":
        return RateLaw(RateForm.LINEAR)

    @staticmethod
    def power_log(p: float, q: float) -> "RateLaw":
        return RateLaw(RateForm.POWER_LOG, p, q)

    @staticmethod
    def linear_log_pow(m: float) -> "RateLaw":
        return RateLaw(RateForm.LINEAR_LOG_POW, p=1.0, q=m)

    @staticmethod
    def linear_log_log() -> "RateLaw":
        return RateLaw(RateForm.LINEAR_LOG_LOG, p=1.0)

    @staticmethod
    def exp_power(p: float, q: float) -> "RateLaw":
        return RateLaw(RateForm.EXP_POWER, p, q)

    # -- semantics ------------------------------------------------------
    @property
    def applies_to_log(self) -> bool:
        """True when the shape describes ln h rather than h itself."""
        return self.form is RateForm.EXP_POWER

    def shape(self, t):
        """Nominal g(t); requires t > e for forms with ln or ln ln factors."""
        t = np.asarray(t, dtype=float)
        if self.form is RateForm.LINEAR:
            return t
        if self.form is RateForm.POWER_LOG or self.form is RateForm.EXP_POWER:
            return t ** self.p * np.log(t) ** self.q
        if self.form is RateForm.LINEAR_LOG_POW:
            return t * np.log(t) ** self.q
        if self.form is RateForm.LINEAR_LOG_LOG:
            return t * np.log(np.log(t))
        raise AssertionError(self.form)

    def label(self) -> str:
        if self.form is RateForm.LINEAR:
            return "h ~ C t"
        if self.form is RateForm.POWER_LOG:
            return f"h ~ C t^{self.p:g} ln^{self.q:g} t"
        if self.form is RateForm.LINEAR_LOG_POW:
            return f"h ~ C t ln^{self.q:g} t"
        if self.form is RateForm.LINEAR_LOG_LOG:
            return "h ~ C t ln ln t"
        return f"ln h ~ C t^{self.p:g} ln^{self.q:g} t"

    def to_dict(self) -> dict:
        return {"form": self.form.value, "p": self.p, "q": self.q}

    @staticmethod
    def from_dict(d: dict) -> "RateLaw":
        return RateLaw(RateForm(d["form"]), float(d.get("p", 0.0)), float(d.get("q", 0.0)))
