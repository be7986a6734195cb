"""
Monte Carlo comparison of impulse-response dispersion.

For every grid cell (beta1, alpha2, T) and replication r a series is simulated
from the AR(1)-GARCH(1,1) design, every configured LP model is estimated at
horizons 1..H, and the true model is fitted once with its responses taken as
beta1_hat ** h. The standard error at (cell, model, h) is the sample standard
deviation of beta_h_hat across replications, excluding flagged fits.

Seeds: the series of replication r in a cell is driven by

    SeedSequence(master_seed, spawn_key=(bits(beta1), bits(alpha2), T, r))
        .generate_state(1, uint64)[0]

where ``bits`` is the IEEE-754 bit pattern of the float. It depends on the
cell's own values only, so growing the grid never changes existing series,
and results are identical for any worker count.
"""

from __future__ import annotations

import itertools
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import pandas as pd

from ._errors import ConfigError, ParameterDomainError, SingularityError
from .benchmark import fit_true_model
from .dgp import DgpParams, simulate_series
from .garch import OptimizerConfig
from .projections import LPModel, estimate_all_horizons

__all__ = [
    "TRUTH",
    "Cell",
    "McConfig",
    "ReplicationResult",
    "child_seed",
    "run_replication",
    "run_grid",
    "aggregate_se",
    "se_table",
    "diff_vs_truth",
    "summarize",
]

TRUTH = "truth"
LP_MODELS = tuple(m.value for m in LPModel)
KEY_COLUMNS = ["beta1", "alpha2", "T", "model"]


class Cell(NamedTuple):
    beta1: float
    alpha2: float
    T: int


@dataclass(frozen=True)
class McConfig:
    beta1_grid: tuple = (0.6, 0.8, 0.9, 0.95)
    alpha2_grid: tuple = (0.3, 0.4, 0.48)
    alpha1: float = 0.5
    gamma: float = 1.0
    beta0: float = 0.0
    T_grid: tuple = (500, 1000, 2000, 5000)
    R: int = 500
    H: int = 24
    models: tuple = LP_MODELS
    master_seed: int = 0
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    workers: int = 1

    def __post_init__(self):
        for name in ("beta1_grid", "alpha2_grid", "T_grid", "models"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
            if not getattr(self, name):
                raise ConfigError(f"{name}: must be nonempty")
        models = tuple(m for m in self.models if m != TRUTH)
        for m in models:
            if m not in LP_MODELS:
                raise ConfigError(f"models: unknown model {m!r}; choose from {LP_MODELS}")
        object.__setattr__(self, "models", models)
        if int(self.R) != self.R or self.R < 2:
            raise ConfigError(f"R: need at least 2 replications, got {self.R}")
        if int(self.H) != self.H or self.H < 1:
            raise ConfigError(f"H: must be a positive integer, got {self.H}")
        if int(self.workers) != self.workers or self.workers < 1:
            raise ConfigError(f"workers: must be a positive integer, got {self.workers}")
        for T in self.T_grid:
            if int(T) != T or T - self.H < 30:
                raise ConfigError(f"T_grid: T={T} leaves fewer than 30 observations at H={self.H}")
        for cell in self.cells():
            try:
                self.dgp(cell)
            except ParameterDomainError as exc:
                raise ConfigError(f"grid cell {tuple(cell)}: {exc}") from None

    def cells(self):
        return [
            Cell(float(b), float(a), int(T))
            for b, a, T in itertools.product(self.beta1_grid, self.alpha2_grid, self.T_grid)
        ]

    def dgp(self, cell: Cell) -> DgpParams:
        return DgpParams(
            beta0=self.beta0,
            beta1=cell.beta1,
            gamma=self.gamma,
            alpha1=self.alpha1,
            alpha2=cell.alpha2,
            T=cell.T,
        )

    @property
    def all_models(self):
        return self.models + (TRUTH,)


@dataclass
class ReplicationResult:
    cell: Cell
    r: int
    seed: int
    estimates: dict
    failed: dict


def _float_bits(v: float) -> int:
    return int(np.float64(v).view(np.uint64))


def child_seed(master_seed: int, cell: Cell, r: int) -> int:
    ss = np.random.SeedSequence(
        int(master_seed),
        spawn_key=(_float_bits(cell.beta1), _float_bits(cell.alpha2), int(cell.T), int(r)),
    )
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def run_replication(cell: Cell, r: int, cfg: McConfig) -> ReplicationResult:
    """Simulate one series and collect beta_h_hat from every model.

    Estimation failures never propagate: singular designs mark every horizon
    of that model as failed, non-converged fits mark their own horizon.
    """
    if not 1 <= r <= cfg.R:
        raise ParameterDomainError(f"replication index must be in 1..{cfg.R}, got {r}")
    seed = child_seed(cfg.master_seed, cell, r)
    y = simulate_series(cfg.dgp(cell), seed).values
    H = cfg.H
    estimates, failed = {}, {}
    for model in cfg.models:
        try:
            fits, _ = estimate_all_horizons(y, H, model, cfg.optimizer)
        except (SingularityError, FloatingPointError):
            estimates[model] = np.full(H, np.nan)
            failed[model] = np.ones(H, dtype=bool)
            continue
        estimates[model] = np.array([f.fit.beta for f in fits])
        failed[model] = np.array([not f.fit.converged for f in fits])
    try:
        truth = fit_true_model(y, H, cfg.optimizer)
        estimates[TRUTH] = truth.irf
        failed[TRUTH] = np.full(H, not truth.fit.converged)
    except (SingularityError, FloatingPointError):
        estimates[TRUTH] = np.full(H, np.nan)
        failed[TRUTH] = np.ones(H, dtype=bool)
    return ReplicationResult(cell, r, seed, estimates, failed)


def _run_task(task):
    cell, r, cfg = task
    return run_replication(cell, r, cfg)


def run_grid(cfg: McConfig, progress=None):
    """Run every (cell, replication) pair; results come back ordered by (cell, r)."""
    tasks = [(cell, r, cfg) for cell in cfg.cells() for r in range(1, cfg.R + 1)]
    if cfg.workers == 1:
        it = map(_run_task, tasks)
        results = []
        for res in it:
            results.append(res)
            if progress is not None:
                progress(len(results), len(tasks))
        return results
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        results = []
        chunk = max(1, len(tasks) // (cfg.workers * 8))
        for res in pool.map(_run_task, tasks, chunksize=chunk):
            results.append(res)
            if progress is not None:
                progress(len(results), len(tasks))
    return results


def aggregate_se(estimates, failed=None):
    """Per-column sample standard deviation over replications, skipping failures.

    Parameters
    ----------
    estimates : array_like, shape (R, H)
    failed : array_like of bool, shape (R, H), optional
        Entries to exclude. Non-finite estimates are always excluded.

    Returns
    -------
    se : numpy.ndarray
        NaN where fewer than two replications are usable.
    n_used, n_failed : numpy.ndarray of int
    """
    est = np.atleast_2d(np.asarray(estimates, dtype=float))
    bad = ~np.isfinite(est)
    if failed is not None:
        bad |= np.atleast_2d(np.asarray(failed, dtype=bool))
    n_used = (~bad).sum(axis=0)
    n_failed = bad.sum(axis=0)
    se = np.full(est.shape[1], np.nan)
    for j in range(est.shape[1]):
        if n_used[j] >= 2:
            se[j] = np.std(est[~bad[:, j], j], ddof=1)
    if np.any(n_used < 2):
        warnings.warn(
            f"fewer than 2 usable replications at horizons {list(np.flatnonzero(n_used < 2) + 1)}; "
            "standard error left missing",
            RuntimeWarning,
            stacklevel=2,
        )
    return se, n_used, n_failed


def se_table(results, cfg: McConfig) -> pd.DataFrame:
    """Tidy table with columns beta1, alpha2, T, model, h, se, n_used, n_failed."""
    by_cell = {}
    for res in results:
        by_cell.setdefault(res.cell, []).append(res)
    rows = []
    h = np.arange(1, cfg.H + 1)
    for cell in cfg.cells():
        reps = sorted(by_cell.get(cell, []), key=lambda x: x.r)
        for model in cfg.all_models:
            est = np.array([rep.estimates[model] for rep in reps]).reshape(-1, cfg.H)
            bad = np.array([rep.failed[model] for rep in reps]).reshape(-1, cfg.H)
            # replications that never ran count as failures
            n_missing = cfg.R - est.shape[0]
            se, n_used, n_failed = aggregate_se(est, bad)
            rows.append(pd.DataFrame({
                "beta1": cell.beta1,
                "alpha2": cell.alpha2,
                "T": cell.T,
                "model": model,
                "h": h,
                "se": se,
                "n_used": n_used,
                "n_failed": n_failed + n_missing,
            }))
    return pd.concat(rows, ignore_index=True)


def diff_vs_truth(se: pd.DataFrame) -> pd.DataFrame:
    """Difference (and ratio) of each model's se to the true model's at the same (cell, h)."""
    keys = ["beta1", "alpha2", "T", "h"]
    truth = se.loc[se["model"] == TRUTH, keys + ["se"]].rename(columns={"se": "se_truth"})
    merged = se.merge(truth, on=keys, how="left", validate="many_to_one")
    missing = merged["se_truth"].isna() & merged["se"].notna()
    if (se["model"] == TRUTH).sum() == 0 or missing.any():
        lost = merged.loc[missing, keys].drop_duplicates().to_records(index=False).tolist()
        raise KeyError(f"true-model standard errors missing for {lost[:10]}")
    out = merged[KEY_COLUMNS + ["h"]].copy()
    out["diff"] = merged["se"] - merged["se_truth"]
    out["ratio"] = merged["se"] / merged["se_truth"]
    return out


def summarize(diff: pd.DataFrame, H: int) -> pd.DataFrame:
    """Average the differences over horizons 1..H per (cell, model)."""
    expected = set(range(1, int(H) + 1))
    problems = []
    for key, grp in diff.groupby(KEY_COLUMNS, sort=False):
        have = set(grp.loc[grp["diff"].notna(), "h"].astype(int))
        if not expected <= have:
            problems.append((key, sorted(expected - have)))
    if problems:
        raise ValueError(f"incomplete horizon coverage: {problems[:10]}")
    sub = diff[diff["h"].between(1, H)]
    out = sub.groupby(KEY_COLUMNS, sort=False).agg(
        mean_diff=("diff", "mean"), mean_ratio=("ratio", "mean")
    )
    return out.reset_index()
