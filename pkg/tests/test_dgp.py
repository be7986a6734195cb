import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from lpgarch import DgpParams, ParameterDomainError, simulate_series


def test_iid_normal_special_case():
    p = DgpParams(beta0=0, beta1=0, gamma=1, alpha1=0, alpha2=0, T=10000)
    s = simulate_series(p, 3)
    assert abs(s.values.mean()) < 0.05
    assert abs(s.values.var() - 1) < 0.05
    assert np.all(s.variances == 1.0)


def test_initial_variance_is_unconditional():
    s = simulate_series(DgpParams(gamma=1, alpha1=0.5, alpha2=0.4, T=50), 0)
    assert s.variances[0] == 1 / (1 - 0.9)
    assert s.variances[0] == pytest.approx(10.0, abs=1e-12)


def test_three_step_hand_recursion():
    # z from default_rng(7): (0.00123015, 0.29874554, -0.27413786)
    p = DgpParams(beta0=0, beta1=0.6, gamma=1, alpha1=0.5, alpha2=0.3, T=30)
    s = simulate_series(p, 7)
    z = np.random.default_rng(7).standard_normal(3)
    s1 = 1 / 0.2
    e1 = np.sqrt(s1) * z[0]
    s2 = 1 + 0.5 * s1 + 0.3 * e1**2
    e2 = np.sqrt(s2) * z[1]
    s3 = 1 + 0.5 * s2 + 0.3 * e2**2
    e3 = np.sqrt(s3) * z[2]
    y1 = e1
    y2 = 0.6 * y1 + e2
    y3 = 0.6 * y2 + e3
    assert_allclose(s.variances[:3], [s1, s2, s3], rtol=0, atol=0)
    assert_allclose(s.values[:3], [y1, y2, y3], rtol=1e-15, atol=0)
    # frozen values
    assert_allclose(s.variances[:3], [5.0, 3.5000022699159246, 2.843712536724495], rtol=1e-14)
    assert_allclose(
        s.values[:3],
        [0.0027507065300806355, 0.5605523287473098, -0.12595579051401645],
        rtol=1e-12,
    )


def test_presample_level_is_unconditional_mean():
    p = DgpParams(beta0=2.0, beta1=0.5, gamma=1, alpha1=0.0, alpha2=0.0, T=30)
    s = simulate_series(p, 11)
    # y_0 = 4 so the first innovation is y_1 - 2 - 0.5 * 4
    assert s.innovations[0] == pytest.approx(s.values[0] - 4.0)


def test_determinism_and_seed_dependence():
    p = DgpParams(T=200)
    a, b = simulate_series(p, 42), simulate_series(p, 42)
    assert a.values.tobytes() == b.values.tobytes()
    assert a.variances.tobytes() == b.variances.tobytes()
    c = simulate_series(p, 43)
    assert not np.array_equal(a.values, c.values)
    assert c.variances[0] == a.variances[0]


def test_constant_variance_when_no_garch():
    s = simulate_series(DgpParams(gamma=2.5, alpha1=0, alpha2=0, T=100), 5)
    assert np.all(s.variances == 2.5)


def test_long_run_innovation_variance():
    p = DgpParams(beta1=0.6, gamma=1, alpha1=0.5, alpha2=0.3, T=100_000)
    s = simulate_series(p, 2024)
    assert s.innovations.var() == pytest.approx(p.unconditional_variance, rel=0.05)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(gamma=0.0),
        dict(alpha1=-0.1),
        dict(alpha2=-0.1),
        dict(alpha1=0.5, alpha2=0.5),
        dict(T=29),
        dict(beta1=1.0),
    ],
)
def test_invalid_params(kwargs):
    with pytest.raises(ParameterDomainError):
        DgpParams(**kwargs)


@settings(max_examples=30, deadline=None)
@given(
    a1=st.floats(0, 0.6),
    a2=st.floats(0, 0.39),
    seed=st.integers(0, 2**32),
)
def test_variances_positive(a1, a2, seed):
    s = simulate_series(DgpParams(alpha1=a1, alpha2=a2, T=60), seed)
    assert np.all(s.variances > 0)
    assert s.variances[0] == 1.0 / (1.0 - a1 - a2)
