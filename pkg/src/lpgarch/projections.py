"""
Horizon-by-horizon local projections

    y_{t+h} = c_h + beta_h * y_t + e_{h,t}

with four error models:

``LP``            constant variance, estimated by OLS
``LP-GARCH``      GARCH(1,1) errors
``LP-GARCHX``     GARCH(1,1) plus the squared residual of horizon h-1
``LP-GARCH-HAR``  as LP-GARCHX plus the mean squared residual over horizons
                  1..h-1 and, from h = 7, the mean over horizons 1..5

Horizons are estimated in order. Each horizon's residuals are stored and the
later horizons of the same model read their exogenous variance terms from
them. At h = 1 every GARCH-family model reduces to plain LP-GARCH.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ._errors import ParameterDomainError, PipelineOrderError
from .garch import (
    ExogTerms,
    FitResult,
    OptimizerConfig,
    VarianceKind,
    fit_mle,
)

__all__ = [
    "LPModel",
    "HorizonFit",
    "ResidualMatrix",
    "build_horizon_dataset",
    "har_aggregates",
    "estimate_all_horizons",
]

# horizons averaged by the long HAR component, and the lag after which it switches on
HAR_LONG_WINDOW = 5


class LPModel(str, enum.Enum):
    LP = "LP"
    LP_GARCH = "LP-GARCH"
    LP_GARCHX = "LP-GARCHX"
    LP_GARCH_HAR = "LP-GARCH-HAR"


@dataclass(frozen=True)
class HorizonFit:
    h: int
    model: LPModel
    fit: FitResult

    @property
    def beta(self) -> float:
        return self.fit.beta


@dataclass
class ResidualMatrix:
    """Per-horizon residual vectors sharing the time index t.

    ``self[h]`` has length T - h; entry t is y_{t+h} - c_h - beta_h * y_t.
    """

    T: int
    vectors: dict = field(default_factory=dict)

    def __setitem__(self, h: int, resid: np.ndarray):
        resid = np.asarray(resid, dtype=float)
        if resid.shape != (self.T - h,):
            raise ParameterDomainError(
                f"horizon {h} residuals must have length {self.T - h}, got {resid.shape}"
            )
        self.vectors[h] = resid

    def __getitem__(self, h: int) -> np.ndarray:
        try:
            return self.vectors[h]
        except KeyError:
            raise PipelineOrderError(f"residuals for horizon {h} not estimated yet") from None

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, h):
        return h in self.vectors

    def horizons(self):
        return sorted(self.vectors)

    def squared(self, h: int, n: int) -> np.ndarray:
        """Squared horizon-h residuals, truncated to the first ``n`` time points."""
        v = self[h]
        if v.shape[0] < n:
            raise ParameterDomainError(f"horizon {h} residuals shorter than {n}")
        return v[:n] ** 2


def build_horizon_dataset(y, h: int):
    """Return ``(regressor, response)`` = (y_t, y_{t+h}) for t = 1..T-h."""
    y = np.asarray(y, dtype=float)
    T = y.shape[0]
    if int(h) != h or h < 1 or h > T - 3:
        raise ParameterDomainError(f"horizon must be in 1..{T - 3}, got {h}")
    return y[: T - h], y[h:]


def har_aggregates(residuals: ResidualMatrix, h: int, sample_len: int):
    """Mean squared residuals feeding the HAR variance terms at horizon ``h``.

    Returns
    -------
    tilde_sq : numpy.ndarray
        Mean of e_{i,t}^2 over i = 1..h-1.
    bar_sq : numpy.ndarray or None
        Mean of e_{i,t}^2 over i = 1..5, only when h - 1 > 5.
    """
    if h < 2:
        raise ParameterDomainError(f"HAR aggregates need h >= 2, got {h}")
    sq = [residuals.squared(i, sample_len) for i in range(1, h)]
    tilde_sq = np.mean(sq, axis=0)
    bar_sq = None
    if h - 1 > HAR_LONG_WINDOW:
        bar_sq = np.mean(sq[:HAR_LONG_WINDOW], axis=0)
    return tilde_sq, bar_sq


def _exog_for(model: LPModel, residuals: ResidualMatrix, h: int, n: int):
    if h == 1 or model is LPModel.LP_GARCH:
        return VarianceKind.GARCH, None
    prev_sq = residuals.squared(h - 1, n)
    if model is LPModel.LP_GARCHX:
        return VarianceKind.GARCHX, ExogTerms(prev_sq=prev_sq)
    tilde_sq, bar_sq = har_aggregates(residuals, h, n)
    return VarianceKind.GARCH_HAR, ExogTerms(prev_sq=prev_sq, tilde_sq=tilde_sq, bar_sq=bar_sq)


def estimate_all_horizons(y, H: int, model, optimizer_cfg: OptimizerConfig = None):
    """Estimate horizons 1..H of one LP model in order.

    Parameters
    ----------
    y : array_like
        The series, length T with T - H >= 30.
    H : int
        Maximum horizon.
    model : LPModel or str
    optimizer_cfg : OptimizerConfig, optional

    Returns
    -------
    fits : list of HorizonFit
        One per horizon; non-converged fits are kept and flagged.
    residuals : ResidualMatrix
    """
    model = LPModel(model)
    y = np.asarray(y, dtype=float)
    T = y.shape[0]
    if int(H) != H or H < 1:
        raise ParameterDomainError(f"H must be a positive integer, got {H}")
    if T - H < 30:
        raise ParameterDomainError(f"need T - H >= 30, got T={T}, H={H}")

    residuals = ResidualMatrix(T)
    fits = []
    for h in range(1, H + 1):
        regressor, response = build_horizon_dataset(y, h)
        n = T - h
        if model is LPModel.LP:
            kind, exog = VarianceKind.CONSTANT, None
        else:
            kind, exog = _exog_for(model, residuals, h, n)
        fit = fit_mle(response, regressor, kind, exog, optimizer_cfg)
        residuals[h] = fit.residuals
        fits.append(HorizonFit(h, model, fit))
    return fits, residuals
