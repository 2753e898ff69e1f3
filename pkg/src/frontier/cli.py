"""Command-line entry point.

Subcommands: run, fit, steady, propcheck, sweep.  Exit codes: 0 success,
2 config error, 3 numerical failure, 4 property violation.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import yaml

from . import analysis, outputs, propcheck
from .config import ConfigError, config_from_dict, parse_config
from .errors import NumericalError, PropertyViolation
from .evolution import run as run_evolution
from .kernels import predicted_rate
from .ratelaws import RateLaw
from .steadystate import solve_steady


def _candidates_for(kernel) -> list:
    pred = predicted_rate(kernel)
    cands = [pred]
    if pred != RateLaw.linear():
        cands.append(RateLaw.linear())
    else:
        cands.append(RateLaw.linear_log_pow(1.0))
    return cands


def _do_run(cfg, out_dir: Path, with_fit: bool) -> None:
    started = time.time()
    params = cfg.model_params()
    traj = run_evolution(params, cfg.t_end, output_times=cfg.output_times(),
                         dx=cfg.dx, cfl=cfg.cfl, max_seconds=cfg.max_seconds,
                         initial_capacity=cfg.initial_capacity)
    fit_report = None
    if with_fit:
        fit = analysis.fit_rate(traj.h_series, _candidates_for(params.kernel1),
                                h0=params.h0)
        fit_report = fit.to_dict()
    outputs.write_outputs(traj, out_dir, cfg.effective_dict(),
                          fit_report=fit_report, started_at=started)


def cmd_run(args) -> int:
    cfg = parse_config(args.config)
    _do_run(cfg, Path(args.out), args.fit)
    return 0


def cmd_fit(args) -> int:
    series = outputs.read_h_series(args.series)
    if args.config:
        cfg = parse_config(args.config)
        cands = _candidates_for(cfg.kernel(1))
        h0 = cfg.raw["model"]["h0"]
    else:
        cands = [RateLaw.linear(), RateLaw.linear_log_pow(1.0),
                 RateLaw.power_log(2.0, 0.0)]
        h0 = None
    window = tuple(args.window) if args.window else None
    fit = analysis.fit_rate(series, cands, window=window, h0=h0)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as f:
        json.dump(fit.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")
    print(f"selected: {fit.law.label()}  C_hat={fit.C_hat:.6g}  "
          f"flatness={fit.flatness:.4f}")
    return 0


def cmd_steady(args) -> int:
    cfg = parse_config(args.config)
    prof = solve_steady(cfg.model_params(), L=cfg.steady_L, tol=cfg.steady_tol,
                        dx=cfg.dx)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs.write_steady_profile(out_dir / "steady_profile.csv", prof)
    summary = {
        "L": prof.L, "dx": prof.dx, "iterations": prof.iterations,
        "residual": prof.residual, "u_star": prof.u_star, "v_star": prof.v_star,
        "farfield_gap": prof.farfield_gap,
    }
    with open(out_dir / "steady_summary.json", "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")
    print(f"steady profile converged in {prof.iterations} iterations, "
          f"residual {prof.residual:.3e}")
    return 0


def cmd_propcheck(args) -> int:
    cfg = parse_config(args.config)
    report = {}
    violated = False
    if args.prop21:
        kernel = cfg.kernel(1)
        cases = []
        for rho in (1.0, 2.0, 5.0):
            for eps in (0.05, 0.1, 0.2):
                case = propcheck.build_case(kernel, l=1.0, rho=rho, eps=eps)
                ok, margin = propcheck.check_prop21(case, n_samples=args.samples)
                cases.append({"rho": rho, "eps": eps, "k0": case.k0,
                              "pass": ok, "min_margin": margin})
                violated |= not ok
        report["prop21"] = cases
    if args.comparison:
        params = cfg.model_params()
        init_lo = params.init
        init_hi = type(init_lo)(shape=init_lo.shape, amp_u=2 * init_lo.amp_u,
                                amp_v=2 * init_lo.amp_v)
        from dataclasses import replace
        rep = propcheck.comparison_harness(
            params, replace(params, init=init_hi), t_end=min(cfg.t_end, 50.0),
            dx=cfg.dx, cfl=cfg.cfl, output_times=cfg.output_times())
        report["comparison"] = rep
        violated |= not rep["ok"]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "propcheck_report.json", "w") as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write("\n")
    if violated:
        raise PropertyViolation("propcheck found violations; see propcheck_report.json")
    print("propcheck: all checks passed")
    return 0


def _set_dotted(doc: dict, dotted: str, value) -> None:
    parts = dotted.split(".")
    cur = doc
    for p in parts[:-1]:
        cur = cur.setdefault(p, {})
    cur[parts[-1]] = value


def _sweep_worker(payload) -> str:
    doc, out_dir, with_fit = payload
    cfg = config_from_dict(doc)
    _do_run(cfg, Path(out_dir), with_fit)
    return out_dir


def cmd_sweep(args) -> int:
    base = parse_config(args.config)
    grid_doc = yaml.safe_load(Path(args.grid).read_text())
    if not isinstance(grid_doc, dict) or not grid_doc:
        raise ConfigError("sweep grid must be a mapping of dotted keys to lists")
    keys = sorted(grid_doc)
    values = [grid_doc[k] if isinstance(grid_doc[k], list) else [grid_doc[k]]
              for k in keys]
    combos = list(itertools.product(*values))
    out_root = Path(args.out)
    out_root.mkdir(parents=True, exist_ok=True)

    jobs = []
    for idx, combo in enumerate(combos):
        doc = base.effective_dict()
        doc.pop("seed", None)
        for key, val in zip(keys, combo):
            _set_dotted(doc, key, val)
        config_from_dict(doc)  # validate before fanning out
        run_dir = out_root / f"run_{idx:03d}"
        run_dir.mkdir(exist_ok=True)
        with open(run_dir / "point.json", "w") as f:
            json.dump(dict(zip(keys, combo)), f, indent=2, sort_keys=True)
            f.write("\n")
        jobs.append((doc, str(run_dir), args.fit))

    workers = int(os.environ.get("FRONTIER_THREADS", "0")) or min(4, os.cpu_count() or 1)
    if workers <= 1 or len(jobs) == 1:
        for job in jobs:
            _sweep_worker(job)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            list(pool.map(_sweep_worker, jobs))
    print(f"sweep: {len(jobs)} runs under {out_root}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frontier",
                                 description="Free-boundary nonlocal-diffusion front laboratory")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate one trajectory")
    p.add_argument("config")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--fit", action="store_true", help="also emit fit_report.json")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("fit", help="fit rate laws to an h_series.csv")
    p.add_argument("series")
    p.add_argument("--config", default=None)
    p.add_argument("--window", nargs=2, type=float, default=None)
    p.add_argument("-o", "--out", default="fit_report.json")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("steady", help="solve the half-line steady profile")
    p.add_argument("config")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_steady)

    p = sub.add_parser("propcheck", help="run property harnesses")
    p.add_argument("config")
    p.add_argument("--prop21", action="store_true")
    p.add_argument("--comparison", action="store_true")
    p.add_argument("--samples", type=int, default=40)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_propcheck)

    p = sub.add_parser("sweep", help="fan a config out over a parameter grid")
    p.add_argument("config")
    p.add_argument("grid")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--fit", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except PropertyViolation as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
