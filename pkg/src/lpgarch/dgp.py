"""
AR(1) mean with GARCH(1,1) conditional variance.

    y_t       = beta0 + beta1 * y_{t-1} + eps_t,      eps_t = sigma_t * z_t
    sigma_t^2 = gamma + alpha1 * sigma_{t-1}^2 + alpha2 * eps_{t-1}^2

The recursion starts at the unconditional variance
sigma_1^2 = gamma / (1 - alpha1 - alpha2) and the pre-sample level y_0 is the
unconditional mean beta0 / (1 - beta1). No burn-in is discarded.

Random numbers: ``seed`` is handed to ``numpy.random.default_rng`` (PCG64) and
the T standard normals are drawn in one call to ``standard_normal(T)``. The
mapping is therefore stable across machines for a given numpy major version.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._errors import ParameterDomainError

__all__ = ["DgpParams", "SeriesSample", "simulate_series"]


@dataclass(frozen=True)
class DgpParams:
    beta0: float = 0.0
    beta1: float = 0.95
    gamma: float = 1.0
    alpha1: float = 0.5
    alpha2: float = 0.4
    T: int = 500

    def __post_init__(self):
        if not self.gamma > 0:
            raise ParameterDomainError(f"gamma must be positive, got {self.gamma}")
        if self.alpha1 < 0 or self.alpha2 < 0:
            raise ParameterDomainError("alpha1 and alpha2 must be nonnegative")
        if not self.alpha1 + self.alpha2 < 1:
            raise ParameterDomainError(
                f"alpha1 + alpha2 must be < 1, got {self.alpha1 + self.alpha2}"
            )
        if not abs(self.beta1) < 1:
            # y_0 is the unconditional mean, undefined for a unit root
            raise ParameterDomainError(f"|beta1| must be < 1, got {self.beta1}")
        if int(self.T) != self.T or self.T < 30:
            raise ParameterDomainError(f"T must be an integer >= 30, got {self.T}")

    @property
    def unconditional_variance(self) -> float:
        return self.gamma / (1.0 - self.alpha1 - self.alpha2)


@dataclass(frozen=True)
class SeriesSample:
    values: np.ndarray
    variances: np.ndarray
    seed: int
    params: DgpParams

    @property
    def innovations(self) -> np.ndarray:
        """eps_t = y_t - beta0 - beta1 * y_{t-1}."""
        p = self.params
        lagged = np.concatenate(([p.beta0 / (1.0 - p.beta1)], self.values[:-1]))
        return self.values - p.beta0 - p.beta1 * lagged


def simulate_series(params: DgpParams, seed: int) -> SeriesSample:
    """Simulate one AR(1)-GARCH(1,1) path of length ``params.T``.

    Parameters
    ----------
    params : DgpParams
        Generating parameters; validated on construction.
    seed : int
        Seed for ``numpy.random.default_rng``. Identical seeds give
        bit-identical output.

    Returns
    -------
    SeriesSample
    """
    if not isinstance(params, DgpParams):
        raise TypeError("params must be a DgpParams instance")
    T = int(params.T)
    z = np.random.default_rng(seed).standard_normal(T)

    b0, b1 = params.beta0, params.beta1
    g, a1, a2 = params.gamma, params.alpha1, params.alpha2

    y = np.empty(T)
    s2 = np.empty(T)
    s2[0] = g / (1.0 - a1 - a2)
    eps = np.sqrt(s2[0]) * z[0]
    y[0] = b0 + b1 * (b0 / (1.0 - b1)) + eps
    for t in range(1, T):
        s2[t] = g + a1 * s2[t - 1] + a2 * eps * eps
        eps = np.sqrt(s2[t]) * z[t]
        y[t] = b0 + b1 * y[t - 1] + eps
    return SeriesSample(values=y, variances=s2, seed=seed, params=params)
