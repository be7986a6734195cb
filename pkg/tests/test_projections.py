import numpy as np
import pytest
from numpy.testing import assert_allclose

from lpgarch import (
    DgpParams,
    LPModel,
    ParameterDomainError,
    PipelineOrderError,
    ResidualMatrix,
    VarianceKind,
    build_horizon_dataset,
    estimate_all_horizons,
    har_aggregates,
    simulate_series,
)


def test_horizon_dataset_shift():
    x, y = build_horizon_dataset([1, 2, 3, 4, 5], 2)
    assert x.tolist() == [1, 2, 3]
    assert y.tolist() == [3, 4, 5]


def test_horizon_dataset_lengths_and_bounds():
    x, y = build_horizon_dataset(np.arange(10.0), 7)
    assert len(x) == len(y) == 3
    x, y = build_horizon_dataset(np.arange(5.0), 2)
    assert len(x) == 3
    with pytest.raises(ParameterDomainError):
        build_horizon_dataset(np.arange(5.0), 4)
    with pytest.raises(ParameterDomainError):
        build_horizon_dataset(np.arange(5.0), 0)


def _const_residuals(T, H):
    rm = ResidualMatrix(T)
    for i in range(1, H + 1):
        rm[i] = np.full(T - i, float(i))
    return rm


def test_har_h2_is_previous_squared():
    rng = np.random.default_rng(0)
    rm = ResidualMatrix(50)
    rm[1] = rng.standard_normal(49)
    tilde, bar = har_aggregates(rm, 2, 48)
    assert_allclose(tilde, rm[1][:48] ** 2)
    assert bar is None


def test_har_hand_averages():
    rm = _const_residuals(40, 8)
    tilde, bar = har_aggregates(rm, 4, 36)
    assert_allclose(tilde, 14 / 3)
    assert bar is None
    tilde, bar = har_aggregates(rm, 6, 34)
    assert bar is None
    tilde, bar = har_aggregates(rm, 7, 33)
    assert_allclose(bar, 11.0)
    assert_allclose(tilde, (1 + 4 + 9 + 16 + 25 + 36) / 6)
    assert tilde.shape == bar.shape == (33,)


def test_har_errors():
    rm = _const_residuals(40, 2)
    with pytest.raises(ParameterDomainError):
        har_aggregates(rm, 1, 39)
    with pytest.raises(PipelineOrderError):
        har_aggregates(rm, 4, 36)


def test_residual_matrix_length_check():
    rm = ResidualMatrix(20)
    with pytest.raises(ParameterDomainError):
        rm[3] = np.zeros(18)


def test_noiseless_ar_is_exact():
    y = 0.5 ** np.arange(0, 80)
    fits, _ = estimate_all_horizons(y, 24, LPModel.LP)
    assert_allclose([f.beta for f in fits], 0.5 ** np.arange(1, 25), rtol=0, atol=1e-8)


@pytest.fixture(scope="module")
def sim_series():
    return simulate_series(DgpParams(beta1=0.9, alpha2=0.4, T=500), 17).values


@pytest.fixture(scope="module")
def har_run(sim_series):
    return estimate_all_horizons(sim_series, 24, LPModel.LP_GARCH_HAR)


def test_har_pipeline_structure(har_run):
    fits, rm = har_run
    assert len(rm) == 24
    assert [len(rm[h]) for h in range(1, 25)] == list(range(499, 475, -1))
    assert [f.fit.n_obs for f in fits] == list(range(499, 475, -1))
    kinds = [f.fit.variance_spec.kind for f in fits]
    assert kinds[0] is VarianceKind.GARCH
    assert all(k is VarianceKind.GARCH_HAR for k in kinds[1:])
    # alpha5 enters from h = 7
    assert all("alpha5" not in f.fit.variance_spec.alphas() for f in fits[:6])
    assert all("alpha5" in f.fit.variance_spec.alphas() for f in fits[6:])
    assert "prev_sq and tilde_sq identical" in fits[1].fit.notes


@pytest.mark.parametrize("model", list(LPModel))
def test_residual_identity(model, sim_series, har_run):
    if model is LPModel.LP_GARCH_HAR:
        fits, rm = har_run
    else:
        fits, rm = estimate_all_horizons(sim_series, 8, model)
    for hf in fits:
        x, yh = build_horizon_dataset(sim_series, hf.h)
        assert_allclose(rm[hf.h], yh - hf.fit.c - hf.fit.beta * x, rtol=0, atol=1e-12)


def test_lp_matches_normal_equations(sim_series):
    fits, _ = estimate_all_horizons(sim_series, 10, LPModel.LP)
    for hf in fits:
        x, yh = build_horizon_dataset(sim_series, hf.h)
        X = np.column_stack([np.ones_like(x), x])
        cb = np.linalg.solve(X.T @ X, X.T @ yh)
        assert hf.beta == pytest.approx(cb[1], abs=1e-10)


def test_garchx_h1_equals_garch_h1(sim_series):
    gx, _ = estimate_all_horizons(sim_series, 2, LPModel.LP_GARCHX)
    g, _ = estimate_all_horizons(sim_series, 1, LPModel.LP_GARCH)
    assert gx[0].fit.variance_spec == g[0].fit.variance_spec
    assert gx[0].fit.mean_coeffs == g[0].fit.mean_coeffs
    assert "alpha3" not in gx[0].fit.variance_spec.alphas()
    assert "alpha3" in gx[1].fit.variance_spec.alphas()


def test_pipeline_preconditions(sim_series):
    with pytest.raises(ParameterDomainError):
        estimate_all_horizons(sim_series[:40], 24, LPModel.LP)
    with pytest.raises(ValueError):
        estimate_all_horizons(sim_series, 2, "VAR")
