"""The supervised log-ratio procedure: screen, cluster, fit one balance."""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from .clustering import SPECTRAL, check_method, cluster_two
from .coda import BalancePartition, balance, check_compositions, variation_matrix
from .exceptions import ConstantBalanceError, DimensionMismatchError, InputError
from .glm import (
    BINOMIAL,
    GAUSSIAN,
    check_binary,
    check_family,
    constant_columns,
    logistic_irls,
    ols_line,
)
from .screening import top_m_indices, univariate_effects

__all__ = ["SlrModel", "fit_balance_glm", "fit_slr", "predict", "to_beta"]


@dataclass(frozen=True)
class SlrModel:
    """A fitted single-balance model.

    ``theta1`` is never negative: the numerator ``partition.plus`` is the
    group whose relative increase raises the linear predictor.
    """

    partition: BalancePartition
    theta0: float
    theta1: float
    family: str
    m: int
    p: int
    feature_names: tuple = ()
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def plus_names(self):
        return [self.feature_names[j] for j in self.partition.plus]

    @property
    def minus_names(self):
        return [self.feature_names[j] for j in self.partition.minus]


def fit_balance_glm(b, y, family=GAUSSIAN, scale=None):
    """Fit ``y ~ theta0 + theta1 * b`` by least squares or logistic IRLS.

    Returns
    -------
    theta0, theta1 : float
        ``theta1`` keeps its fitted sign.
    converged : bool
        Always True for the Gaussian family.

    Raises
    ------
    ConstantBalanceError
        If ``b`` has no numerical spread.
    """
    family = check_family(family)
    b = np.asarray(b, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if b.shape != y.shape:
        raise InputError("balance and response lengths differ")
    if b.size < 3:
        raise InputError("need at least 3 samples to fit the balance model")
    if constant_columns(b, scale=scale)[0]:
        raise ConstantBalanceError("balance is constant over the samples")
    if family == GAUSSIAN:
        t0, t1 = ols_line(b, y)
        return float(t0), float(t1), True
    y = check_binary(y)
    fit = logistic_irls(b[:, None], y)
    return float(fit.intercept[0]), float(fit.slope[0]), bool(fit.converged[0])


def _fit_from_effects(X, y, effects, m, family, cluster, feature_names):
    p = X.shape[1]
    screened = top_m_indices(effects, m)
    A = variation_matrix(X, screened)
    groups = cluster_two(A, cluster)
    part = BalancePartition(groups.group_a, groups.group_b)
    b = balance(X, part)
    t0, t1, converged = fit_balance_glm(b, y, family, scale=np.max(np.abs(np.log(X))))
    if t1 < 0:
        part, t1 = part.swapped(), -t1
    diagnostics = {
        "screened": [int(j) for j in screened],
        "constant_columns": int(effects.constant.sum()),
        "screening_converged": bool(effects.converged.all()),
        "glm_converged": converged,
        "degenerate_split": groups.degenerate,
    }
    return SlrModel(
        partition=part,
        theta0=t0,
        theta1=t1,
        family=family,
        m=int(m),
        p=p,
        feature_names=tuple(feature_names),
        diagnostics=diagnostics,
    )


def _names(feature_names, p):
    if feature_names is None:
        return tuple(f"x{j}" for j in range(p))
    names = tuple(str(s) for s in feature_names)
    if len(names) != p:
        raise DimensionMismatchError(f"{len(names)} feature names for {p} variables")
    if len(set(names)) != p:
        raise InputError("feature names must be unique")
    return names


def fit_slr(X, y, m, family=GAUSSIAN, cluster=SPECTRAL, feature_names=None) -> SlrModel:
    """Fit a supervised log-ratio model retaining ``m`` screened variables.

    The ``m`` variables with the largest absolute univariate clr effect are
    clustered into two groups on their variation matrix; the balance of the
    two groups is then regressed on ``y``. Groups are oriented so that the
    balance coefficient is non-negative.

    Parameters
    ----------
    X : array_like of shape (n, p)
        Strictly positive compositions (rows need not be closed).
    y : array_like of shape (n,)
    m : int
        Number of variables kept by screening, ``2 <= m <= p``.
    family : {"gaussian", "binomial"}
    cluster : {"spectral", "hierarchical"}
    feature_names : sequence of str, optional
    """
    family = check_family(family)
    cluster = check_method(cluster)
    X = check_compositions(X)
    names = _names(feature_names, X.shape[1])
    effects = univariate_effects(X, y, family)
    return _fit_from_effects(X, np.asarray(y, dtype=float), effects, m, family, cluster, names)


def linear_predictor(model: SlrModel, Xnew):
    Xnew = check_compositions(Xnew, close=False)
    if Xnew.shape[1] != model.p:
        raise DimensionMismatchError(f"model has p={model.p}, data has {Xnew.shape[1]} columns")
    return model.theta0 + model.theta1 * balance(Xnew, model.partition)


def predict(model: SlrModel, Xnew):
    """Fitted mean: the response for Gaussian models, P(y=1) for binomial."""
    eta = linear_predictor(model, Xnew)
    return expit(eta) if model.family == BINOMIAL else eta


def to_beta(model: SlrModel, p=None):
    """Expand the balance into log-contrast coefficients (summing to zero)."""
    p = model.p if p is None else int(p)
    model.partition.check(p)
    beta = np.zeros(p)
    plus, minus = list(model.partition.plus), list(model.partition.minus)
    beta[plus] = model.theta1 / len(plus)
    beta[minus] = -model.theta1 / len(minus)
    return beta
