"""scikit-learn compatible estimators wrapping the SLR procedure."""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, RegressorMixin, TransformerMixin
from sklearn.utils.multiclass import check_classification_targets
from sklearn.utils.validation import check_is_fitted, validate_data

from .clustering import SPECTRAL
from .coda import balance, check_compositions
from .exceptions import InputError
from .glm import BINOMIAL, GAUSSIAN
from .model import fit_slr, linear_predictor, predict, to_beta
from .model_selection import fit_cv

__all__ = ["SLRRegressor", "SLRClassifier"]


class _BaseSLR(TransformerMixin, BaseEstimator):
    _family = None

    def __init__(self, n_screen=None, grid=None, cv=10, cluster=SPECTRAL, random_state=0):
        self.n_screen = n_screen
        self.grid = grid
        self.cv = cv
        self.cluster = cluster
        self.random_state = random_state

    def _fit(self, X, y):
        names = getattr(self, "feature_names_in_", None)
        X = check_compositions(X)
        if self.n_screen is None:
            seed = 0 if self.random_state is None else self.random_state
            self.model_, self.cv_path_ = fit_cv(
                X, y, grid=self.grid, K=self.cv, family=self._family,
                cluster=self.cluster, seed=seed, feature_names=names,
            )
        else:
            self.model_ = fit_slr(X, y, self.n_screen, family=self._family,
                                  cluster=self.cluster, feature_names=names)
            self.cv_path_ = None
        self.n_screen_ = self.model_.m
        self.plus_ = np.array(self.model_.partition.plus)
        self.minus_ = np.array(self.model_.partition.minus)
        self.intercept_ = self.model_.theta0
        self.theta1_ = self.model_.theta1
        self.coef_ = to_beta(self.model_)
        return self

    def _check_X(self, X):
        check_is_fitted(self, "model_")
        return validate_data(self, X, reset=False)

    def transform(self, X):
        """Balance value of each sample, as a single-column array."""
        X = self._check_X(X)
        return balance(X, self.model_.partition)[:, None]

    def get_feature_names_out(self, input_features=None):
        return np.array(["balance"], dtype=object)


class SLRRegressor(RegressorMixin, _BaseSLR):
    """Supervised log-ratio regression on compositional predictors.

    Parameters
    ----------
    n_screen : int, optional
        Number of variables kept by screening. If None, it is chosen from
        ``grid`` by ``cv``-fold cross-validation with the one-standard-error
        rule.
    grid : sequence of int, optional
        Candidate screened sizes; defaults to even sizes up to 30.
    cv : int
        Number of folds.
    cluster : {"spectral", "hierarchical"}
    random_state : int
        Seed for the fold assignment.

    Attributes
    ----------
    model_ : SlrModel
    cv_path_ : CvPath or None
    plus_, minus_ : ndarray of int
        Numerator and denominator variables of the selected balance.
    coef_ : ndarray of shape (n_features,)
        Equivalent log-contrast coefficients.
    intercept_ : float
    """

    _family = GAUSSIAN

    def fit(self, X, y):
        X, y = validate_data(self, X, y, y_numeric=True)
        return self._fit(X, y)

    def predict(self, X):
        X = self._check_X(X)
        return predict(self.model_, X)


class SLRClassifier(ClassifierMixin, _BaseSLR):
    """Supervised log-ratio logistic classifier for two classes.

    Takes the same parameters as :class:`SLRRegressor`; cross-validation
    folds are stratified by class and scored by 1 - AUC.
    """

    _family = BINOMIAL

    def fit(self, X, y):
        X, y = validate_data(self, X, y)
        check_classification_targets(y)
        self.classes_, y01 = np.unique(y, return_inverse=True)
        if self.classes_.size != 2:
            raise InputError(f"SLRClassifier needs exactly 2 classes, got {self.classes_.size}")
        return self._fit(X, y01.astype(float))

    def decision_function(self, X):
        X = self._check_X(X)
        return linear_predictor(self.model_, X)

    def predict_proba(self, X):
        X = self._check_X(X)
        p1 = predict(self.model_, X)
        return np.column_stack([1.0 - p1, p1])

    def predict(self, X):
        return self.classes_[(self.decision_function(X) > 0).astype(int)]
