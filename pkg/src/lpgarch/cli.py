"""
Command line entry point.

    lpgarch run --config cfg.json --out-dir out/ [--replications N] [--workers N]
                [--seed N] [--models LP,LP-GARCH] [--horizons H]
                [--T 500,2000] [--beta1 0.95] [--alpha2 0.4] [--ratio]
    lpgarch simulate --beta1 0.95 --alpha2 0.4 --T 500 --seed 1 [--out series.csv]
    lpgarch fit-one --input series.csv --model LP-GARCHX --horizons 24 [--out fits.csv]

Config files are JSON objects whose keys are the McConfig fields
(beta1_grid, alpha2_grid, alpha1, gamma, beta0, T_grid, R, H, models,
master_seed, workers) plus an optional "optimizer" object with the
OptimizerConfig fields. Precedence: command-line flag, then the
LPGARCH_WORKERS environment variable (workers only), then the file, then the
built-in defaults, which reproduce the full published design.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import pandas as pd

from . import __version__
from ._errors import ConfigError, ParameterDomainError
from .dgp import DgpParams, simulate_series
from .garch import OptimizerConfig
from .montecarlo import McConfig, diff_vs_truth, run_grid, se_table, summarize, TRUTH
from .projections import LPModel, estimate_all_horizons

SE_COLUMNS = ["beta1", "alpha2", "T", "model", "h", "se", "n_used", "n_failed"]
DIFF_COLUMNS = ["beta1", "alpha2", "T", "model", "h", "diff"]
SUMMARY_COLUMNS = ["beta1", "alpha2", "T", "model", "mean_diff"]
FIT_COLUMNS = ["h", "c", "beta", "gamma", "alpha1", "alpha2", "alpha3", "alpha4",
               "alpha5", "loglik", "converged"]

_TUPLE_FIELDS = {"beta1_grid", "alpha2_grid", "T_grid", "models"}


def _coerce(name, value, kind):
    try:
        if kind is bool:
            if not isinstance(value, bool):
                raise TypeError
            return value
        if kind is int:
            if isinstance(value, bool) or int(value) != value:
                raise TypeError
            return int(value)
        if kind is float:
            if isinstance(value, bool):
                raise TypeError
            return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected {kind.__name__}, got {value!r}") from None
    raise AssertionError(kind)


def _field_types(cls):
    return {f.name: type(f.default) for f in dataclasses.fields(cls)
            if f.default is not dataclasses.MISSING}


def config_from_dict(data: dict) -> McConfig:
    """Build an McConfig from a parsed JSON object, naming the offending field on error."""
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be a JSON object")
    known = {f.name for f in dataclasses.fields(McConfig)}
    types = _field_types(McConfig)
    kwargs = {}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(f"{key}: unknown config field")
        if key == "optimizer":
            kwargs[key] = optimizer_from_dict(value)
        elif key in _TUPLE_FIELDS:
            if isinstance(value, (str, int, float)):
                value = [value]
            if not isinstance(value, list):
                raise ConfigError(f"{key}: expected a list, got {value!r}")
            if key == "models":
                kwargs[key] = tuple(str(v) for v in value)
            else:
                kind = int if key == "T_grid" else float
                kwargs[key] = tuple(_coerce(key, v, kind) for v in value)
        else:
            kwargs[key] = _coerce(key, value, types[key])
    return McConfig(**kwargs)


def optimizer_from_dict(data) -> OptimizerConfig:
    if not isinstance(data, dict):
        raise ConfigError("optimizer: expected an object")
    types = _field_types(OptimizerConfig)
    for key in data:
        if key not in types:
            raise ConfigError(f"optimizer.{key}: unknown config field")
    return OptimizerConfig(**{k: _coerce(f"optimizer.{k}", v, types[k]) for k, v in data.items()})


def config_to_dict(cfg: McConfig) -> dict:
    d = dataclasses.asdict(cfg)
    for k in _TUPLE_FIELDS:
        d[k] = list(d[k])
    return d


def _csv_list(kind):
    def parse(text):
        try:
            return [kind(v) for v in text.split(",") if v.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None
    return parse


def _write_csv(df: pd.DataFrame, path: Path) -> str:
    df.to_csv(path, index=False, lineterminator="\n")
    return hashlib.sha256(path.read_bytes()).hexdigest()


def effective_config(args) -> McConfig:
    data = {}
    if args.config is not None:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be a JSON object")
    env_workers = os.environ.get("LPGARCH_WORKERS")
    if env_workers:
        data["workers"] = _coerce("LPGARCH_WORKERS", float(env_workers), int)
    overrides = {
        "R": args.replications,
        "workers": args.workers,
        "master_seed": args.seed,
        "models": args.models,
        "H": args.horizons,
        "T_grid": args.T,
        "beta1_grid": args.beta1,
        "alpha2_grid": args.alpha2,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    return config_from_dict(data)


def run_experiment(args) -> int:
    cfg = effective_config(args)
    out_dir = Path(args.out_dir)
    started = datetime.now(timezone.utc).isoformat()
    t0 = time.perf_counter()

    def progress(i, n):
        if not args.quiet and (i == n or i % max(1, n // 20) == 0):
            print(f"[{i}/{n}] replications done", file=sys.stderr)

    results = run_grid(cfg, progress)
    se = se_table(results, cfg)
    diff = diff_vs_truth(se)
    summary = summarize(diff, cfg.H)
    summary = summary[summary["model"] != TRUTH]

    diff_cols = DIFF_COLUMNS + (["ratio"] if args.ratio else [])
    summary_cols = SUMMARY_COLUMNS + (["mean_ratio"] if args.ratio else [])
    out_dir.mkdir(parents=True, exist_ok=True)
    digests = {
        "se_by_horizon.csv": _write_csv(se[SE_COLUMNS], out_dir / "se_by_horizon.csv"),
        "diff_by_horizon.csv": _write_csv(diff[diff_cols], out_dir / "diff_by_horizon.csv"),
        "summary.csv": _write_csv(summary[summary_cols], out_dir / "summary.csv"),
    }
    failures = (
        se.groupby(["beta1", "alpha2", "T", "model"], sort=False)["n_failed"].sum().reset_index()
    )
    manifest = {
        "tool": "lpgarch",
        "version": __version__,
        "started": started,
        "finished": datetime.now(timezone.utc).isoformat(),
        "elapsed_seconds": round(time.perf_counter() - t0, 3),
        "config": config_to_dict(cfg),
        "failures": failures.to_dict(orient="records"),
        "outputs": {name: {"sha256": d} for name, d in digests.items()},
    }
    with open(out_dir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, default=_json_default)
        fh.write("\n")
    return 0


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(type(obj))


def simulate_cmd(args) -> int:
    params = DgpParams(beta0=args.beta0, beta1=args.beta1, gamma=args.gamma,
                       alpha1=args.alpha1, alpha2=args.alpha2, T=args.T)
    sample = simulate_series(params, args.seed)
    df = pd.DataFrame({"t": np.arange(1, params.T + 1), "y": sample.values,
                       "sigma2": sample.variances})
    df.to_csv(args.out if args.out else sys.stdout, index=False, lineterminator="\n")
    return 0


def _read_series(path) -> np.ndarray:
    df = pd.read_csv(path)
    if "y" in df.columns:
        return df["y"].to_numpy(dtype=float)
    if df.shape[1] == 1:
        return df.iloc[:, 0].to_numpy(dtype=float)
    raise ConfigError(f"{path}: expected a column named 'y'")


def fit_one_cmd(args) -> int:
    y = _read_series(args.input)
    fits, _ = estimate_all_horizons(y, args.horizons, args.model)
    rows = []
    for hf in fits:
        f = hf.fit
        row = {"h": hf.h, "c": f.c, "beta": f.beta, "gamma": f.variance_spec.gamma}
        row.update(f.variance_spec.alphas())
        row.update(loglik=f.loglik, converged=f.converged)
        rows.append(row)
    df = pd.DataFrame(rows).reindex(columns=FIT_COLUMNS)
    df.to_csv(args.out if args.out else sys.stdout, index=False, lineterminator="\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpgarch", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the Monte Carlo experiment")
    run.add_argument("--config", help="JSON config file")
    run.add_argument("--out-dir", required=True)
    run.add_argument("--replications", type=int)
    run.add_argument("--workers", type=int)
    run.add_argument("--seed", type=int, help="master seed")
    run.add_argument("--models", type=_csv_list(str), help="comma-separated LP models")
    run.add_argument("--horizons", type=int, help="maximum horizon H")
    run.add_argument("--T", type=_csv_list(int), help="comma-separated sample sizes")
    run.add_argument("--beta1", type=_csv_list(float), help="comma-separated AR coefficients")
    run.add_argument("--alpha2", type=_csv_list(float), help="comma-separated alpha2 values")
    run.add_argument("--ratio", action="store_true", help="also emit se ratio columns")
    run.add_argument("--quiet", action="store_true")
    run.set_defaults(func=run_experiment)

    sim = sub.add_parser("simulate", help="dump one simulated series as CSV (t, y, sigma2)")
    sim.add_argument("--beta0", type=float, default=0.0)
    sim.add_argument("--beta1", type=float, default=0.95)
    sim.add_argument("--gamma", type=float, default=1.0)
    sim.add_argument("--alpha1", type=float, default=0.5)
    sim.add_argument("--alpha2", type=float, default=0.4)
    sim.add_argument("--T", type=int, default=500)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out")
    sim.set_defaults(func=simulate_cmd)

    fit = sub.add_parser("fit-one", help="fit one LP model on a CSV series")
    fit.add_argument("--input", required=True, help="CSV with a 'y' column")
    fit.add_argument("--model", default=LPModel.LP_GARCH.value,
                     choices=[m.value for m in LPModel])
    fit.add_argument("--horizons", type=int, default=24)
    fit.add_argument("--out")
    fit.set_defaults(func=fit_one_cmd)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParameterDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
