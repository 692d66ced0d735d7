import numpy as np
import pytest
from sklearn.linear_model import LogisticRegression

from slr.coda import clr, closure, inv_alr
from slr.exceptions import InputError, MTooSmallError, OneClassOnlyError
from slr.screening import top_m_indices, univariate_effects

from conftest import random_compositions


def test_constant_response_gives_zero_effects(rng):
    X = random_compositions(rng, 20, 5)
    eff = univariate_effects(X, np.full(20, 3.0))
    np.testing.assert_array_equal(eff.psi, np.zeros(5))


def test_hand_computed_slope():
    # clr columns (-1, 0, 1) and (1, 0, -1): compositions from inv_alr of
    # w = 2 * z so that clr(x)_0 = z
    z = np.array([-1.0, 0.0, 1.0])
    X = inv_alr(np.column_stack([2 * z]))  # p = 2: clr = (w/2, -w/2)
    np.testing.assert_allclose(clr(X)[:, 0], z, atol=1e-12)
    eff = univariate_effects(X, [2.0, 4.0, 6.0])
    assert eff.psi[0] == pytest.approx(2.0, abs=1e-12)
    assert eff.psi[1] == pytest.approx(-2.0, abs=1e-12)
    # independent least-squares solve
    coef = np.linalg.lstsq(np.column_stack([np.ones(3), z]), [2.0, 4.0, 6.0], rcond=None)[0]
    assert coef[1] == pytest.approx(2.0)


def test_gaussian_matches_two_parameter_least_squares(rng):
    for _ in range(20):
        X = random_compositions(rng, 30, 6)
        y = rng.normal(size=30)
        psi = univariate_effects(X, y).psi
        Z = clr(X)
        for j in range(6):
            design = np.column_stack([np.ones(30), Z[:, j]])
            slope = np.linalg.solve(design.T @ design, design.T @ y)[1]
            assert psi[j] == pytest.approx(slope, abs=1e-10)


def test_gaussian_scale_invariance(rng):
    X = random_compositions(rng, 25, 8)
    y = rng.normal(size=25)
    c = rng.uniform(0.1, 1000, size=(25, 1))
    np.testing.assert_allclose(univariate_effects(c * X, y).psi, univariate_effects(X, y).psi, atol=1e-9)


def test_binomial_matches_unpenalized_logistic(rng):
    X = random_compositions(rng, 80, 4)
    y = (rng.uniform(size=80) < 0.5).astype(float)
    eff = univariate_effects(X, y, "binomial")
    assert eff.converged.all()
    Z = clr(X)
    for j in range(4):
        ref = LogisticRegression(penalty=None, tol=1e-12, max_iter=1000).fit(Z[:, [j]], y)
        assert eff.psi[j] == pytest.approx(ref.coef_[0, 0], abs=1e-6)


def test_binomial_null_effects_are_small():
    rng = np.random.default_rng(11)
    X = random_compositions(rng, 200, 10)
    y = rng.permutation(np.repeat([0.0, 1.0], 100))
    psi = univariate_effects(X, y, "binomial").psi
    assert np.all(np.abs(psi) < 0.5)


def test_binomial_separation_is_flagged_not_fatal():
    x = np.linspace(-1, 1, 20)
    X = closure(np.exp(np.column_stack([x, -x, np.zeros(20)])))
    y = (x > 0).astype(float)
    eff = univariate_effects(X, y, "binomial")
    assert not eff.converged[0]
    assert np.all(np.isfinite(eff.psi))
    assert abs(eff.psi[0]) > 10


def test_binomial_errors(rng):
    X = random_compositions(rng, 10, 3)
    with pytest.raises(OneClassOnlyError):
        univariate_effects(X, np.ones(10), "binomial")
    with pytest.raises(InputError):
        univariate_effects(X, np.arange(10), "binomial")
    with pytest.raises(InputError):
        univariate_effects(X[:2], [0, 1])


def test_constant_columns_are_zero_and_flagged(noiseless_case_i):
    ds = noiseless_case_i
    eff = univariate_effects(ds.X, ds.y)
    inactive = np.setdiff1d(np.arange(30), np.arange(6))
    np.testing.assert_array_equal(eff.psi[inactive], 0.0)
    assert np.all(eff.constant[inactive])
    assert np.all(np.abs(eff.psi[:6]) > 0)
    assert np.all(eff.psi[:3] > 0) and np.all(eff.psi[3:6] < 0)


def test_top_m_indices_examples():
    psi = np.array([0.9, -0.8, 0.1, 0.0])
    np.testing.assert_array_equal(top_m_indices(psi, 2), [0, 1])
    np.testing.assert_array_equal(top_m_indices(psi, 4), [0, 1, 2, 3])
    with pytest.raises(MTooSmallError):
        top_m_indices([0.5, 0.5, 0.1], 1)


def test_top_m_ties_go_to_lower_index():
    np.testing.assert_array_equal(top_m_indices([0.3, 0.5, -0.5, 0.5, 0.1], 2), [1, 2])
    np.testing.assert_array_equal(top_m_indices([0.0, 0.0, 0.0], 2), [0, 1])
