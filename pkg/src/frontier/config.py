"""Run configuration: YAML parsing, validation, defaults.

Unknown keys are errors; every value is range-checked before any
computation starts, and messages name the offending key and its
admissible range.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import yaml

from .errors import ConfigError
from .evolution import InitialData, ModelParams
from .kernels import Family, KernelSpec, make_kernel
from .reactions import ReactionSpec, equilibrium

_SCHEMA = {
    "kernel1": {"family", "alpha", "beta", "gamma", "R"},
    "kernel2": {"family", "alpha", "beta", "gamma", "R"},
    "reaction": {"a", "b", "p", "q", "r", "s"},
    "grid": {"dx", "initial_capacity"},
    "model": {"d1", "d2", "mu1", "mu2", "h0"},
    "init": {"shape", "amp_u", "amp_v"},
    "run": {"t_end", "cfl", "output_times", "snapshot_base", "snapshot_factor",
            "max_seconds"},
    "steady": {"L", "tol"},
}

_KERNEL_DEFAULTS = {"family": "ALGLOG", "alpha": 0.0, "beta": 0.0, "gamma": 1.5, "R": 1.0}
_REACTION_DEFAULTS = {"a": 1.0, "b": 1.0, "p": 2.0, "q": 1.0, "r": 2.0, "s": 1.0}
_GRID_DEFAULTS = {"dx": 0.25, "initial_capacity": 256}
_MODEL_DEFAULTS = {"d1": 1.0, "d2": 1.0, "mu1": 1.0, "mu2": 1.0, "h0": 5.0}
_INIT_DEFAULTS = {"shape": "cosine_bump", "amp_u": None, "amp_v": None}
_RUN_DEFAULTS = {"t_end": 200.0, "cfl": 0.5, "output_times": None,
                 "snapshot_base": None, "snapshot_factor": 2.0, "max_seconds": None}
_STEADY_DEFAULTS = {"L": 400.0, "tol": 1e-10}

_KERNEL_RANGES = {
    "LOGLOG": ("beta", lambda v: v > 1.0, "beta > 1"),
    "ALGLOG": ("gamma", lambda v: 1.0 < v < 2.0, "gamma in (1, 2)"),
    "CRITLOG": ("beta", lambda v: v >= -1.0, "beta >= -1"),
    "POWERLAW": ("gamma", lambda v: v > 1.0, "gamma > 1"),
    "COMPACT": ("R", lambda v: v > 0.0, "R > 0"),
}


def _require_number(section: str, key: str, value, positive=False, allow_none=False):
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key}: expected a number, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(f"{section}.{key}: must be positive, got {value!r}")
    return float(value)


@dataclass
class RunConfig:
    raw: dict
    seed: int = 0

    @property
    def dx(self) -> float:
        return self.raw["grid"]["dx"]

    @property
    def initial_capacity(self) -> int:
        return self.raw["grid"]["initial_capacity"]

    @property
    def t_end(self) -> float:
        return self.raw["run"]["t_end"]

    @property
    def cfl(self) -> float:
        return self.raw["run"]["cfl"]

    @property
    def max_seconds(self) -> Optional[float]:
        return self.raw["run"]["max_seconds"]

    @property
    def steady_L(self) -> float:
        return self.raw["steady"]["L"]

    @property
    def steady_tol(self) -> float:
        return self.raw["steady"]["tol"]

    def kernel(self, which: int) -> KernelSpec:
        sec = self.raw[f"kernel{which}"]
        return make_kernel(sec["family"], alpha=sec["alpha"], beta=sec["beta"],
                           gamma=sec["gamma"], radius=sec["R"])

    def reaction(self) -> ReactionSpec:
        return ReactionSpec(**self.raw["reaction"])

    def initial_data(self) -> InitialData:
        sec = self.raw["init"]
        amp_u, amp_v = sec["amp_u"], sec["amp_v"]
        if amp_u is None or amp_v is None:
            eq = equilibrium(self.reaction())
            du = eq.u_star / 2.0 if eq else 0.5
            dv = eq.v_star / 2.0 if eq else 0.5
            amp_u = du if amp_u is None else amp_u
            amp_v = dv if amp_v is None else amp_v
        return InitialData(shape=sec["shape"], amp_u=amp_u, amp_v=amp_v)

    def model_params(self) -> ModelParams:
        m = self.raw["model"]
        return ModelParams(d1=m["d1"], d2=m["d2"], mu1=m["mu1"], mu2=m["mu2"],
                           h0=m["h0"], kernel1=self.kernel(1), kernel2=self.kernel(2),
                           reaction=self.reaction(), init=self.initial_data())

    def output_times(self) -> List[float]:
        sec = self.raw["run"]
        if sec["output_times"] is not None:
            return [float(t) for t in sec["output_times"]]
        t_end = sec["t_end"]
        if t_end <= 0:
            return []
        base = sec["snapshot_base"] if sec["snapshot_base"] is not None else t_end / 16.0
        factor = sec["snapshot_factor"]
        out = []
        t = base
        while t < t_end * (1.0 - 1e-12):
            out.append(t)
            t *= factor
        out.append(t_end)
        return out

    def effective_dict(self) -> dict:
        d = {k: dict(v) for k, v in self.raw.items()}
        d["seed"] = self.seed
        return d


def _validated(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a mapping")
    unknown_top = set(doc) - set(_SCHEMA) - {"seed"}
    if unknown_top:
        raise ConfigError(f"unknown config section(s): {sorted(unknown_top)}")

    raw = {}
    defaults = {
        "kernel1": _KERNEL_DEFAULTS, "kernel2": None, "reaction": _REACTION_DEFAULTS,
        "grid": _GRID_DEFAULTS, "model": _MODEL_DEFAULTS, "init": _INIT_DEFAULTS,
        "run": _RUN_DEFAULTS, "steady": _STEADY_DEFAULTS,
    }
    for section, keys in _SCHEMA.items():
        given = doc.get(section, {})
        if given is None:
            given = {}
        if not isinstance(given, dict):
            raise ConfigError(f"section {section} must be a mapping")
        unknown = set(given) - keys
        if unknown:
            raise ConfigError(f"unknown key(s) in {section}: {sorted(unknown)}")
        if section == "kernel2" and section not in doc:
            raw["kernel2"] = dict(raw["kernel1"])  # mirror kernel1 by default
            continue
        base = dict(defaults[section] if defaults[section] is not None else raw["kernel1"])
        base.update(given)
        raw[section] = base

    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError(f"seed: expected an integer, got {seed!r}")

    # per-key validation
    k_ok = {f.value for f in Family}
    for which in ("kernel1", "kernel2"):
        sec = raw[which]
        if sec["family"] not in k_ok:
            raise ConfigError(f"{which}.family: must be one of {sorted(k_ok)}")
        for key in ("alpha", "beta", "gamma", "R"):
            sec[key] = _require_number(which, key, sec[key])
        par, pred, rng = _KERNEL_RANGES[sec["family"]]
        if not pred(sec[par]):
            raise ConfigError(
                f"{which}.{'R' if par == 'R' else par}: admissible range for "
                f"{sec['family']} is {rng}, got {sec[par]!r}")

    for key in ("a", "b", "p", "r"):
        raw["reaction"][key] = _require_number("reaction", key, raw["reaction"][key],
                                               positive=True)
    for key in ("q", "s"):
        val = _require_number("reaction", key, raw["reaction"][key])
        if val < 0:
            raise ConfigError(f"reaction.{key}: must be nonnegative, got {val!r}")
        raw["reaction"][key] = val

    raw["grid"]["dx"] = _require_number("grid", "dx", raw["grid"]["dx"], positive=True)
    cap = raw["grid"]["initial_capacity"]
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
        raise ConfigError(f"grid.initial_capacity: must be a positive integer, got {cap!r}")

    for key in _MODEL_DEFAULTS:
        raw["model"][key] = _require_number("model", key, raw["model"][key], positive=True)

    sec = raw["init"]
    if sec["shape"] not in ("cosine_bump", "constant_plateau"):
        raise ConfigError("init.shape: must be cosine_bump or constant_plateau")
    for key in ("amp_u", "amp_v"):
        val = _require_number("init", key, sec[key], allow_none=True)
        if val is not None and val < 0:
            raise ConfigError(f"init.{key}: must be nonnegative, got {val!r}")
        sec[key] = val

    sec = raw["run"]
    t_end = _require_number("run", "t_end", sec["t_end"])
    if t_end < 0:
        raise ConfigError(f"run.t_end: must be nonnegative, got {t_end!r}")
    sec["t_end"] = t_end
    sec["cfl"] = _require_number("run", "cfl", sec["cfl"], positive=True)
    sec["max_seconds"] = _require_number("run", "max_seconds", sec["max_seconds"],
                                         positive=True, allow_none=True)
    sec["snapshot_base"] = _require_number("run", "snapshot_base", sec["snapshot_base"],
                                           positive=True, allow_none=True)
    sec["snapshot_factor"] = _require_number("run", "snapshot_factor",
                                             sec["snapshot_factor"], positive=True)
    if sec["snapshot_factor"] <= 1.0:
        raise ConfigError("run.snapshot_factor: must be > 1")
    if sec["output_times"] is not None:
        if not isinstance(sec["output_times"], list):
            raise ConfigError("run.output_times: must be a list of times")
        sec["output_times"] = [
            _require_number("run", "output_times", t, positive=True)
            for t in sec["output_times"]]

    raw["steady"]["L"] = _require_number("steady", "L", raw["steady"]["L"], positive=True)
    raw["steady"]["tol"] = _require_number("steady", "tol", raw["steady"]["tol"],
                                           positive=True)

    cfg = RunConfig(raw=raw, seed=seed)
    # surface kernel construction errors (e.g. quadrature) before running
    try:
        cfg.kernel(1)
        cfg.kernel(2)
        cfg.reaction()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def parse_config(path) -> RunConfig:
    """Load and fully validate a YAML config file; defaults fill gaps."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        doc = yaml.safe_load(path.read_text()) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    return _validated(doc)


def config_from_dict(doc: dict) -> RunConfig:
    """Validate an in-memory mapping (used by the sweep runner)."""
    return _validated(doc)


def serialize_config(cfg: RunConfig) -> str:
    """Deterministic YAML echo of the effective config."""
    return yaml.safe_dump(cfg.effective_dict(), sort_keys=True)
