import numpy as np
import pytest
from sklearn.linear_model import LogisticRegression

from slr.coda import BalancePartition, balance, closure
from slr.exceptions import ConstantBalanceError, DimensionMismatchError
from slr.metrics import mse
from slr.model import SlrModel, fit_balance_glm, fit_slr, predict, to_beta
from slr.oracle import exhaustive_best_balance

from conftest import random_compositions


def make_model(theta0, theta1, plus, minus, p, family="gaussian"):
    return SlrModel(BalancePartition(plus, minus), theta0, theta1, family, m=len(plus) + len(minus), p=p)


class TestFitBalanceGlm:
    def test_exact_line(self, rng):
        b = rng.normal(size=10)
        t0, t1, ok = fit_balance_glm(b, 3 + 2 * b)
        assert (t0, t1) == (pytest.approx(3, abs=1e-12), pytest.approx(2, abs=1e-12))
        assert ok

    def test_centered_balance(self, rng):
        b = rng.normal(size=15)
        b -= b.mean()
        y = b + 1.5
        t0, t1, _ = fit_balance_glm(b, y)
        assert t0 == pytest.approx(y.mean(), abs=1e-12)
        assert t1 == pytest.approx(1.0, abs=1e-12)

    def test_matches_normal_equations(self, rng):
        for _ in range(20):
            b, y = rng.normal(size=(2, 40))
            D = np.column_stack([np.ones(40), b])
            ref = np.linalg.solve(D.T @ D, D.T @ y)
            t0, t1, _ = fit_balance_glm(b, y)
            assert t0 == pytest.approx(ref[0], abs=1e-10)
            assert t1 == pytest.approx(ref[1], abs=1e-10)

    def test_binomial_matches_logistic_regression(self, rng):
        b = rng.normal(size=200)
        y = (rng.uniform(size=200) < 1 / (1 + np.exp(-(0.3 + 1.5 * b)))).astype(float)
        t0, t1, ok = fit_balance_glm(b, y, "binomial")
        ref = LogisticRegression(penalty=None, tol=1e-12, max_iter=1000).fit(b[:, None], y)
        assert ok
        assert t0 == pytest.approx(ref.intercept_[0], abs=1e-6)
        assert t1 == pytest.approx(ref.coef_[0, 0], abs=1e-6)

    def test_constant_balance(self):
        with pytest.raises(ConstantBalanceError):
            fit_balance_glm(np.full(5, 0.3), np.arange(5.0))


class TestFitSlr:
    def test_noiseless_recovery(self, noiseless_case_i):
        ds = noiseless_case_i
        for cluster in ("spectral", "hierarchical"):
            model = fit_slr(ds.X, ds.y, 6, cluster=cluster)
            assert model.partition == BalancePartition([0, 1, 2], [3, 4, 5])
            # slope theta1 / (c1 + c2) = 0.5 / (2/3)
            assert model.theta1 == pytest.approx(0.75, abs=1e-8)
            assert mse(ds.y, predict(model, ds.X)) < 1e-18

    def test_noiseless_recovery_agrees_with_oracle(self, noiseless_case_i):
        ds = noiseless_case_i
        sub = closure(ds.X[:, :6])
        res = exhaustive_best_balance(sub, ds.y)
        assert res.partition == fit_slr(sub, ds.y, 6).partition

    def test_noiseless_m2_keeps_one_side_only(self, noiseless_case_i):
        # variables on the same side have bitwise-identical screening scores,
        # so the two lowest-index winners share a side and the balance is flat
        ds = noiseless_case_i
        with pytest.raises(ConstantBalanceError):
            fit_slr(ds.X, ds.y, 2)

    def test_m2_on_restriction_to_two_actives(self, noiseless_case_i):
        ds = noiseless_case_i
        sub = closure(ds.X[:, [0, 3] + list(range(6, 30))])
        model = fit_slr(sub, ds.y, 2)
        assert model.partition == BalancePartition([0], [1])
        assert model.partition == exhaustive_best_balance(sub[:, :2], ds.y).partition

    def test_theta1_nonnegative_and_orientation(self, rng):
        for seed in range(10):
            X = random_compositions(rng, 40, 8)
            y = rng.normal(size=40)
            model = fit_slr(X, y, 4)
            assert model.theta1 >= 0
            b = balance(X, model.partition)
            assert np.corrcoef(b, y)[0, 1] >= -1e-12

    def test_permutation_equivariance(self, rng):
        X = random_compositions(rng, 60, 10)
        y = rng.normal(size=60)
        perm = rng.permutation(10)
        base = fit_slr(X, y, 6)
        other = fit_slr(X[:, perm], y, 6)
        assert other.partition.relabel(perm) == base.partition
        assert other.theta1 == pytest.approx(base.theta1, rel=1e-10)

    def test_scale_invariance(self, rng):
        X = random_compositions(rng, 50, 12)
        y = rng.normal(size=50)
        c = rng.uniform(0.01, 100, size=(50, 1))
        for family, yy in (("gaussian", y), ("binomial", (y > 0).astype(float))):
            a, b = fit_slr(X, yy, 6, family), fit_slr(c * X, yy, 6, family)
            assert a.partition == b.partition
            assert a.theta0 == pytest.approx(b.theta0, abs=1e-9)
            assert a.theta1 == pytest.approx(b.theta1, abs=1e-9)

    def test_feature_names_carried(self, rng):
        X = random_compositions(rng, 30, 4)
        model = fit_slr(X, rng.normal(size=30), 4, feature_names=["a", "b", "c", "d"])
        assert sorted(model.plus_names + model.minus_names) == ["a", "b", "c", "d"]


class TestPredict:
    def test_zero_balance(self):
        x = np.array([[0.5, 0.5]])
        assert predict(make_model(0, 1, [0], [1], 2), x)[0] == 0.0
        assert predict(make_model(0, 1, [0], [1], 2, "binomial"), x)[0] == 0.5

    def test_scale_invariance(self, rng):
        X = random_compositions(rng, 20, 5)
        model = make_model(0.2, 1.3, [0, 2], [4], 5)
        c = rng.uniform(0.1, 10, size=(20, 1))
        np.testing.assert_allclose(predict(model, c * X), predict(model, X), atol=1e-12)

    def test_dimension_mismatch(self, rng):
        with pytest.raises(DimensionMismatchError):
            predict(make_model(0, 1, [0], [1], 3), random_compositions(rng, 4, 4))


class TestToBeta:
    def test_examples(self):
        np.testing.assert_allclose(
            to_beta(make_model(0, 0.75, [0, 1, 2], [3, 4, 5], 6)), [0.25] * 3 + [-0.25] * 3
        )
        np.testing.assert_array_equal(to_beta(make_model(0, 0.0, [0], [1], 3)), np.zeros(3))
        beta = to_beta(make_model(0, 1.0, [0], [1, 2, 3], 5))
        np.testing.assert_allclose(beta, [1, -1 / 3, -1 / 3, -1 / 3, 0])
        assert abs(beta.sum()) < 1e-12

    def test_sums_to_zero(self, rng):
        for _ in range(100):
            p = int(rng.integers(2, 40))
            idx = rng.permutation(p)
            k = int(rng.integers(2, p + 1))
            r = int(rng.integers(1, k))
            beta = to_beta(make_model(0, rng.exponential(), idx[:r], idx[r:k], p))
            assert abs(beta.sum()) < 1e-12
