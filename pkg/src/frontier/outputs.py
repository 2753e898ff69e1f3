"""On-disk artifact formats: h_series.csv, snapshots.jsonl,
steady_profile.csv, fit_report.json and the run manifest.

The manifest is written last via write-then-rename, so a crash leaves
no manifest and the run directory is recognizably incomplete.
"""

from __future__ import annotations

import json
import os
import time
from pathlib import Path
from typing import Optional

import numpy as np

from .evolution import Trajectory
from .steadystate import SteadyProfile

CODE_VERSION = "frontier 0.1.0"


def _fmt(x: float) -> str:
    return repr(float(x))


def write_h_series(path: Path, h_series) -> None:
    with open(path, "w") as f:
        f.write("t,h\n")
        for t, h in np.asarray(h_series, dtype=float):
            f.write(f"{_fmt(t)},{_fmt(h)}\n")


def read_h_series(path) -> np.ndarray:
    rows = []
    with open(path) as f:
        header = f.readline().strip()
        if header != "t,h":
            raise ValueError(f"{path}: expected header 't,h', got {header!r}")
        for line in f:
            a, b = line.strip().split(",")
            rows.append((float(a), float(b)))
    return np.array(rows).reshape(-1, 2)


def write_snapshots(path: Path, snapshots) -> None:
    with open(path, "w") as f:
        for s in snapshots:
            rec = {"t": s.t, "h": s.h, "dx": s.grid.dx,
                   "u": s.u[:s.grid.n].tolist(), "v": s.v[:s.grid.n].tolist()}
            f.write(json.dumps(rec) + "\n")


def read_snapshots(path):
    out = []
    with open(path) as f:
        for line in f:
            if line.strip():
                out.append(json.loads(line))
    return out


def write_steady_profile(path: Path, prof: SteadyProfile) -> None:
    with open(path, "w") as f:
        f.write("x,U,V\n")
        for x, U, V in zip(prof.x, prof.U, prof.V):
            f.write(f"{_fmt(x)},{_fmt(U)},{_fmt(V)}\n")


def _atomic_json(path: Path, payload: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    os.replace(tmp, path)


def write_outputs(traj: Trajectory, out_dir, config_echo: dict,
                  fit_report: Optional[dict] = None,
                  steady: Optional[SteadyProfile] = None,
                  started_at: Optional[float] = None) -> dict:
    """Emit all artifacts for a trajectory and finish with manifest.json."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = []

    write_h_series(out_dir / "h_series.csv", traj.h_series)
    files.append("h_series.csv")
    write_snapshots(out_dir / "snapshots.jsonl", traj.snapshots)
    files.append("snapshots.jsonl")
    if fit_report is not None:
        _atomic_json(out_dir / "fit_report.json", fit_report)
        files.append("fit_report.json")
    if steady is not None:
        write_steady_profile(out_dir / "steady_profile.csv", steady)
        files.append("steady_profile.csv")

    now = time.time()
    manifest = {
        "code_version": CODE_VERSION,
        "config": config_echo,
        "started_at": started_at if started_at is not None else now,
        "finished_at": now,
        "dt": traj.meta.get("dt"),
        "dx": traj.meta.get("dx"),
        "final_h": traj.meta.get("final_h"),
        "final_t": traj.meta.get("final_t"),
        "steps": traj.meta.get("steps"),
        "termination": traj.meta.get("termination"),
        "backend": traj.meta.get("backend"),
        "outputs": files,
    }
    _atomic_json(out_dir / "manifest.json", manifest)
    return manifest
