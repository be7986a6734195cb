"""
A small Monte Carlo
===================

Standard errors of beta_h_hat across replications for every estimator, their
gap to the true model, and the horizon-averaged summary. The full published
design is McConfig() with no arguments (R=500 over 48 cells), a long job; the
command-line equivalent is ``lpgarch run --out-dir results/``.
"""

import time

import pandas as pd

from lpgarch import McConfig, diff_vs_truth, run_grid, se_table, summarize

cfg = McConfig(beta1_grid=(0.95,), alpha2_grid=(0.4,), T_grid=(500,), R=20, H=12, master_seed=1)

t0 = time.perf_counter()
results = run_grid(cfg)
print(f"{len(results)} replications in {time.perf_counter() - t0:.0f}s")

se = se_table(results, cfg)
print(se.pivot(index="h", columns="model", values="se").round(4))

diff = diff_vs_truth(se)
summary = summarize(diff, cfg.H)
with pd.option_context("display.width", 120):
    print(summary.round(4))
