"""True-model benchmark: one-step AR(1)-GARCH(1,1) fit and its implied responses."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._errors import ParameterDomainError
from .garch import FitResult, OptimizerConfig, VarianceKind, fit_mle

__all__ = ["TrueModelFit", "fit_true_model", "irf_ar"]


@dataclass(frozen=True)
class TrueModelFit:
    fit: FitResult
    irf: np.ndarray

    @property
    def beta1(self) -> float:
        return self.fit.beta


def irf_ar(beta1: float, H: int) -> np.ndarray:
    """Impulse responses (beta1, beta1**2, ..., beta1**H) of an AR(1)."""
    if int(H) != H or H < 1:
        raise ParameterDomainError(f"H must be a positive integer, got {H}")
    b = float(beta1)
    return np.array([b**h for h in range(1, int(H) + 1)])


def fit_true_model(y, H: int = 24, optimizer_cfg: OptimizerConfig = None) -> TrueModelFit:
    """Regress y_{t+1} on y_t with GARCH(1,1) errors by ML and power up the slope."""
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or y.shape[0] < 30:
        raise ParameterDomainError(f"need a series of length >= 30, got {y.shape}")
    fit = fit_mle(y[1:], y[:-1], VarianceKind.GARCH, None, optimizer_cfg)
    return TrueModelFit(fit=fit, irf=irf_ar(fit.beta, H))
