"""
Conditional-variance recursions and Gaussian maximum likelihood for a
single-regressor mean equation

    response_t = c + beta * regressor_t + e_t,     e_t ~ N(0, sigma_t^2)
    sigma_t^2  = gamma + alpha1 * sigma_{t-1}^2 + alpha2 * e_{t-1}^2
                 + alpha3 * prev_sq_t + alpha4 * tilde_sq_t + alpha5 * bar_sq_t

The exogenous terms are optional and enter at the same index t as the
variance they feed. Coefficient layout of ``VarianceSpec.coeffs``:

    CONSTANT   (gamma,)
    GARCH      (gamma, alpha1, alpha2)
    GARCHX     (gamma, alpha1, alpha2, alpha3)
    GARCH_HAR  (gamma, alpha1, alpha2, alpha3, alpha4[, alpha5])

Estimation runs a Nelder-Mead search over an unconstrained parameterisation:
gamma and the exogenous loadings are log-transformed, and (alpha1, alpha2) go
through a scaled simplex (softmax with a slack category) so that both are
positive with alpha1 + alpha2 < 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numba
import numpy as np
from scipy.optimize import minimize

from ._errors import ParameterDomainError, SingularityError, SpecificationError

__all__ = [
    "VarianceKind",
    "VarianceSpec",
    "ExogTerms",
    "FitResult",
    "OptimizerConfig",
    "variance_path",
    "gaussian_neg_loglik",
    "to_unconstrained",
    "from_unconstrained",
    "ols_fit",
    "fit_mle",
]

_LOG_2PI = np.log(2.0 * np.pi)
# bounds on log-scale parameters keep exp() finite and positive
_LOG_CLIP = 700.0
# log-odds bound for (alpha1, alpha2); keeps the slack 1 - alpha1 - alpha2 above ~1e-13
_ODDS_CLIP = 30.0
# beyond this the transformed likelihood is nearly flat in that coordinate
_FLAT_TAIL = 10.0


class VarianceKind(str, enum.Enum):
    CONSTANT = "constant"
    GARCH = "garch"
    GARCHX = "garchx"
    GARCH_HAR = "garch-har"


_N_COEFFS = {
    VarianceKind.CONSTANT: (1,),
    VarianceKind.GARCH: (3,),
    VarianceKind.GARCHX: (4,),
    VarianceKind.GARCH_HAR: (5, 6),
}


@dataclass(frozen=True)
class VarianceSpec:
    kind: VarianceKind
    coeffs: tuple

    def __post_init__(self):
        kind = VarianceKind(self.kind)
        object.__setattr__(self, "kind", kind)
        coeffs = tuple(float(v) for v in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) not in _N_COEFFS[kind]:
            raise SpecificationError(
                f"{kind.value} takes {_N_COEFFS[kind]} coefficients, got {len(coeffs)}"
            )
        if not coeffs[0] > 0:
            raise ParameterDomainError(f"gamma must be positive, got {coeffs[0]}")
        if any(not a >= 0 for a in coeffs[1:]):
            raise ParameterDomainError(f"alpha coefficients must be >= 0, got {coeffs[1:]}")
        if len(coeffs) >= 3 and not coeffs[1] + coeffs[2] < 1:
            raise ParameterDomainError("alpha1 + alpha2 must be < 1")

    @property
    def gamma(self) -> float:
        return self.coeffs[0]

    @property
    def alpha1(self) -> float:
        return self.coeffs[1] if len(self.coeffs) > 1 else 0.0

    @property
    def alpha2(self) -> float:
        return self.coeffs[2] if len(self.coeffs) > 2 else 0.0

    @property
    def exog_coeffs(self) -> tuple:
        return self.coeffs[3:]

    def alphas(self) -> dict:
        """Map ``alpha1`` .. ``alpha5`` to their values; absent terms are omitted."""
        return {f"alpha{i}": v for i, v in enumerate(self.coeffs[1:], start=1)}


@dataclass(frozen=True)
class ExogTerms:
    """Exogenous variance regressors aligned with the estimation sample."""

    prev_sq: Optional[np.ndarray] = None
    tilde_sq: Optional[np.ndarray] = None
    bar_sq: Optional[np.ndarray] = None

    def __post_init__(self):
        for name in ("prev_sq", "tilde_sq", "bar_sq"):
            v = getattr(self, name)
            if v is None:
                continue
            v = np.asarray(v, dtype=float)
            if v.ndim != 1:
                raise SpecificationError(f"{name} must be one-dimensional")
            if np.any(v < 0) or not np.all(np.isfinite(v)):
                raise SpecificationError(f"{name} must be finite and nonnegative")
            object.__setattr__(self, name, v)

    def matrix(self, kind: VarianceKind, n_exog: int, n: int) -> np.ndarray:
        """Stack the ``n_exog`` terms used by ``kind`` into an (n, n_exog) array."""
        names = ("prev_sq", "tilde_sq", "bar_sq")[:n_exog]
        cols = []
        for name in names:
            v = getattr(self, name)
            if v is None:
                raise SpecificationError(f"{VarianceKind(kind).value} requires exog term {name}")
            if v.shape[0] != n:
                raise SpecificationError(
                    f"{name} has length {v.shape[0]}, expected {n}"
                )
            cols.append(v)
        if not cols:
            return np.zeros((n, 0))
        return np.column_stack(cols)


_NO_EXOG = ExogTerms()


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the simplex search in :func:`fit_mle`."""

    fatol: float = 1e-8
    xatol: float = 1e-6
    maxfev: int = 5000
    max_restarts: int = 3
    # restart perturbation, in units of the initial simplex step
    jitter: float = 1.0
    seed: int = 0
    adaptive: bool = False
    # rerun the simplex once from a converged point; catches premature collapse
    polish: bool = True


@dataclass(frozen=True)
class FitResult:
    mean_coeffs: tuple
    variance_spec: VarianceSpec
    residuals: np.ndarray
    variances: np.ndarray
    loglik: float
    converged: bool
    n_restarts_used: int
    n_obs: int
    notes: tuple = field(default_factory=tuple)

    @property
    def c(self) -> float:
        return self.mean_coeffs[0]

    @property
    def beta(self) -> float:
        return self.mean_coeffs[1]


# ---------------------------------------------------------------------------
# kernels

@numba.njit(cache=True)
def _variance_kernel(e, X, gamma, a1, a2, coefs, s1, out):
    n = e.shape[0]
    k = coefs.shape[0]
    out[0] = s1
    for t in range(1, n):
        s = gamma + a1 * out[t - 1] + a2 * e[t - 1] * e[t - 1]
        for j in range(k):
            s += coefs[j] * X[t, j]
        out[t] = s


@numba.njit(cache=True)
def _nll_theta(theta, y, x, X, s1):
    """Negative log-likelihood at unconstrained ``theta`` (mean + variance)."""
    n = y.shape[0]
    k = X.shape[1]
    c = theta[0]
    b = theta[1]
    gamma = np.exp(min(max(theta[2], -_LOG_CLIP), _LOG_CLIP))
    u1 = min(max(theta[3], -_ODDS_CLIP), _ODDS_CLIP)
    u2 = min(max(theta[4], -_ODDS_CLIP), _ODDS_CLIP)
    m = max(0.0, max(u1, u2))
    d = np.exp(-m) + np.exp(u1 - m) + np.exp(u2 - m)
    a1 = np.exp(u1 - m) / d
    a2 = np.exp(u2 - m) / d
    coefs = np.empty(k)
    for j in range(k):
        coefs[j] = np.exp(min(max(theta[5 + j], -_LOG_CLIP), _LOG_CLIP))

    total = 0.0
    s = s1
    e_prev = 0.0
    for t in range(n):
        e = y[t] - c - b * x[t]
        if t > 0:
            s = gamma + a1 * s + a2 * e_prev * e_prev
            for j in range(k):
                s += coefs[j] * X[t, j]
        if not s > 0.0:
            return np.inf
        total += np.log(s) + e * e / s
        e_prev = e
    return 0.5 * (total + n * _LOG_2PI)


# ---------------------------------------------------------------------------
# public operations

def variance_path(spec: VarianceSpec, residuals, exog: ExogTerms = None, sigma1sq: float = 1.0):
    """Run the conditional-variance recursion over ``residuals``.

    The first variance is ``sigma1sq``; exogenous terms at index t feed
    sigma_t^2 directly (no lag).

    Parameters
    ----------
    spec : VarianceSpec
    residuals : array_like
        Mean-equation errors e_t.
    exog : ExogTerms, optional
        Must provide every term the spec carries a coefficient for.
    sigma1sq : float
        Positive starting variance.

    Returns
    -------
    numpy.ndarray
        sigma_t^2, same length as ``residuals``.
    """
    e = np.ascontiguousarray(residuals, dtype=float)
    if e.ndim != 1 or e.shape[0] == 0:
        raise ParameterDomainError("residuals must be a nonempty vector")
    if not sigma1sq > 0:
        raise ParameterDomainError(f"sigma1sq must be positive, got {sigma1sq}")
    n = e.shape[0]
    if spec.kind is VarianceKind.CONSTANT:
        out = np.full(n, spec.gamma)
        out[0] = sigma1sq
        return out
    exog = _NO_EXOG if exog is None else exog
    coefs = np.asarray(spec.exog_coeffs, dtype=float)
    X = exog.matrix(spec.kind, coefs.shape[0], n)
    out = np.empty(n)
    _variance_kernel(e, X, spec.gamma, spec.alpha1, spec.alpha2, coefs, float(sigma1sq), out)
    return out


def gaussian_neg_loglik(residuals, variances) -> float:
    """0.5 * sum(log(2*pi*sigma_t^2) + e_t^2 / sigma_t^2)."""
    e = np.asarray(residuals, dtype=float)
    s = np.asarray(variances, dtype=float)
    if e.shape != s.shape or e.ndim != 1 or e.shape[0] == 0:
        raise ParameterDomainError("residuals and variances must be equal-length nonempty vectors")
    if not np.all(s > 0):
        raise ParameterDomainError("variances must be strictly positive")
    return float(0.5 * np.sum(_LOG_2PI + np.log(s) + e * e / s))


def to_unconstrained(spec: VarianceSpec) -> np.ndarray:
    """Map a variance spec to its unconstrained vector (inverse of :func:`from_unconstrained`)."""
    c = spec.coeffs
    if any(a == 0 for a in c[1:]):
        raise ParameterDomainError("boundary value (alpha == 0) has no unconstrained image")
    theta = [np.log(c[0])]
    if len(c) >= 3:
        slack = 1.0 - c[1] - c[2]
        theta += [np.log(c[1] / slack), np.log(c[2] / slack)]
    theta += [np.log(a) for a in c[3:]]
    return np.array(theta)


def from_unconstrained(kind: VarianceKind, theta) -> VarianceSpec:
    kind = VarianceKind(kind)
    theta = np.asarray(theta, dtype=float)
    gamma = float(np.exp(np.clip(theta[0], -_LOG_CLIP, _LOG_CLIP)))
    if kind is VarianceKind.CONSTANT:
        return VarianceSpec(kind, (gamma,))
    u = np.array([0.0, *np.clip(theta[1:3], -_ODDS_CLIP, _ODDS_CLIP)])
    w = np.exp(u - u.max())
    w /= w.sum()
    extra = np.exp(np.clip(theta[3:], -_LOG_CLIP, _LOG_CLIP))
    return VarianceSpec(kind, (gamma, w[1], w[2], *extra))


def ols_fit(regressor, response):
    """Least-squares intercept and slope.

    Returns
    -------
    c, beta : float
    residuals : numpy.ndarray
    """
    x = np.asarray(regressor, dtype=float)
    y = np.asarray(response, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ParameterDomainError("regressor and response must be equal-length vectors")
    if x.shape[0] < 3:
        raise ParameterDomainError("need at least 3 observations")
    xm = x.mean()
    xc = x - xm
    sxx = xc @ xc
    if not sxx > 0 or np.ptp(x) == 0:
        raise SingularityError("regressor has zero variance")
    ym = y.mean()
    beta = (xc @ (y - ym)) / sxx
    c = ym - beta * xm
    return float(c), float(beta), y - c - beta * x


def _n_exog(kind: VarianceKind, exog: ExogTerms) -> int:
    if kind is VarianceKind.GARCH:
        return 0
    if kind is VarianceKind.GARCHX:
        return 1
    return 3 if exog.bar_sq is not None else 2


def fit_mle(
    response,
    regressor,
    kind: VarianceKind = VarianceKind.GARCH,
    exog: ExogTerms = None,
    optimizer_cfg: OptimizerConfig = None,
) -> FitResult:
    """Joint Gaussian ML fit of the mean and variance equations.

    The search starts from the OLS mean coefficients with gamma at a tenth of
    the OLS residual variance, alpha1 = 0.5, alpha2 = 0.3 and every exogenous
    loading at 0.01. The recursion is seeded with the OLS residual variance.
    When the simplex stops without meeting its tolerances the search restarts
    from the best point found, perturbed with a seeded draw. A converged
    search is rerun once from its optimum with a fresh simplex (``polish``).

    ``kind=CONSTANT`` has a closed form (OLS plus mean squared residual) and
    is returned directly.

    Raises
    ------
    SingularityError
        If the regressor has zero variance.
    """
    kind = VarianceKind(kind)
    cfg = OptimizerConfig() if optimizer_cfg is None else optimizer_cfg
    exog = _NO_EXOG if exog is None else exog
    y = np.ascontiguousarray(response, dtype=float)
    x = np.ascontiguousarray(regressor, dtype=float)
    if y.shape != x.shape or y.ndim != 1:
        raise ParameterDomainError("response and regressor must be equal-length vectors")
    n = y.shape[0]
    if n < 30:
        raise ParameterDomainError(f"need at least 30 observations, got {n}")

    c0, b0, resid0 = ols_fit(x, y)
    s1 = float(np.var(resid0))

    if kind is VarianceKind.CONSTANT:
        spec = VarianceSpec(kind, (max(s1, np.finfo(float).tiny),))
        variances = np.full(n, spec.gamma)
        ll = -gaussian_neg_loglik(resid0, variances) if s1 > 0 else np.nan
        return FitResult((c0, b0), spec, resid0, variances, ll, s1 > 0, 0, n)

    k = _n_exog(kind, exog)
    X = np.ascontiguousarray(exog.matrix(kind, k, n))
    notes = ()
    if k >= 2 and np.array_equal(X[:, 0], X[:, 1]):
        notes = ("prev_sq and tilde_sq identical",)

    if not s1 > 1e-20 * max(float(np.var(y)), np.finfo(float).tiny):
        # exact fit: the likelihood is unbounded, keep OLS and flag
        floor = max(s1, np.finfo(float).tiny)
        spec = VarianceSpec(kind, (floor, 0.5, 0.3) + (0.01,) * k)
        return FitResult(
            (c0, b0), spec, resid0, np.full(n, floor), np.nan, False, 0, n,
            notes + ("residual variance is zero",),
        )

    init_spec = VarianceSpec(kind, (0.1 * s1, 0.5, 0.3) + (0.01,) * k)
    theta0 = np.concatenate(([c0, b0], to_unconstrained(init_spec)))
    xc = x - x.mean()
    se_b = np.sqrt(s1 / (xc @ xc))
    se_c = np.sqrt(s1 / n + (x.mean() * se_b) ** 2)
    steps = np.concatenate(([se_c, se_b], np.full(theta0.shape[0] - 2, 0.25)))

    def objective(theta):
        return _nll_theta(theta, y, x, X, s1)

    f0 = objective(theta0)
    best_x, best_f = theta0, f0
    rng = np.random.default_rng(cfg.seed)
    converged = False
    start = theta0
    restarts = 0
    for attempt in range(cfg.max_restarts + 1):
        if attempt:
            restarts = attempt
            start = best_x + cfg.jitter * steps * rng.standard_normal(theta0.shape[0])
        simplex = np.vstack([start, start + np.diag(steps)])
        res = minimize(
            objective,
            start,
            method="Nelder-Mead",
            options=dict(
                initial_simplex=simplex,
                fatol=cfg.fatol,
                xatol=cfg.xatol,
                maxfev=cfg.maxfev,
                adaptive=cfg.adaptive,
            ),
        )
        if res.fun < best_f:
            best_x, best_f = res.x, float(res.fun)
        if res.success and np.isfinite(res.fun):
            converged = True
            break

    if converged and cfg.polish:
        # coordinates deep in a flat tail of the transform restart from their initial value
        start = best_x.copy()
        far = np.abs(start[3:5]) > _FLAT_TAIL
        start[3:5][far] = theta0[3:5][far]
        far = start[5:] < -_FLAT_TAIL
        start[5:][far] = theta0[5:][far]
        res = minimize(
            objective,
            start,
            method="Nelder-Mead",
            options=dict(
                initial_simplex=np.vstack([start, start + np.diag(steps)]),
                fatol=cfg.fatol,
                xatol=cfg.xatol,
                maxfev=cfg.maxfev,
                adaptive=cfg.adaptive,
            ),
        )
        if res.fun < best_f:
            best_x, best_f = res.x, float(res.fun)
            converged = bool(res.success)

    c, b = float(best_x[0]), float(best_x[1])
    spec = from_unconstrained(kind, best_x[2:])
    resid = y - c - b * x
    variances = variance_path(spec, resid, exog, s1)
    return FitResult(
        (c, b), spec, resid, variances, -float(best_f), converged, restarts, n, notes
    )
