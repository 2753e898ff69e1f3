"""Numerical laboratory for a two-species epidemic system with nonlocal
diffusion and one free boundary, including spreading-rate verification."""

from ._accel import BACKEND
from .kernels import (Family, KernelSpec, evaluate, first_moment_finite,
                      flux_functional, make_kernel, predicted_rate, tail_mass)
from .ratelaws import RateForm, RateLaw
from .reactions import ReactionSpec, equilibrium, reproduction_number, validate_H
from .evolution import InitialData, ModelParams, Trajectory, run, stable_dt, step
from .steadystate import SteadyProfile, solve_steady

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Family", "KernelSpec", "evaluate", "first_moment_finite",
    "flux_functional", "make_kernel", "predicted_rate", "tail_mass",
    "RateForm", "RateLaw",
    "ReactionSpec", "equilibrium", "reproduction_number", "validate_H",
    "InitialData", "ModelParams", "Trajectory", "run", "stable_dt", "step",
    "SteadyProfile", "solve_steady",
    "__version__",
]
