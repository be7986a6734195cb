import numpy as np
import pytest
from numpy.testing import assert_allclose

from lpgarch import DgpParams, ParameterDomainError, fit_true_model, irf_ar, simulate_series


@pytest.mark.parametrize(
    "beta1, H, expected",
    [(0.95, 2, [0.95, 0.9025]), (0.6, 3, [0.6, 0.36, 0.216]), (0.0, 5, [0.0] * 5)],
)
def test_irf_ar_powers(beta1, H, expected):
    assert_allclose(irf_ar(beta1, H), expected, rtol=1e-15)


def test_irf_ar_properties():
    assert np.all(irf_ar(1.0, 24) == 1.0)
    assert np.all(np.diff(irf_ar(0.7, 24)) < 0)


def test_noiseless_true_model():
    tm = fit_true_model(0.5 ** np.arange(60), H=4)
    assert tm.beta1 == pytest.approx(0.5, abs=1e-6)
    assert tm.irf[1] == pytest.approx(0.25, abs=1e-6)


def test_irf_is_exact_power_of_fit():
    y = simulate_series(DgpParams(beta1=0.9, T=300), 1).values
    tm = fit_true_model(y, H=24)
    assert tm.irf.tolist() == [tm.fit.beta ** h for h in range(1, 25)]


def test_too_short():
    with pytest.raises(ParameterDomainError):
        fit_true_model(np.arange(10.0))


@pytest.mark.slow
def test_beta1_recovery():
    p = DgpParams(beta1=0.95, alpha1=0.5, alpha2=0.4, T=5000)
    b = [fit_true_model(simulate_series(p, s).values, 1).beta1 for s in range(50)]
    assert abs(np.mean(b) - 0.95) < 0.01
