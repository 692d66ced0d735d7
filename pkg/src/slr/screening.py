"""Univariate screening of clr-transformed variables."""

from dataclasses import dataclass

import numpy as np

from .coda import check_compositions
from .exceptions import InputError, MTooSmallError
from .glm import GAUSSIAN, check_binary, check_family, constant_columns, logistic_irls

__all__ = ["UnivariateEffects", "univariate_effects", "top_m_indices"]


@dataclass(frozen=True)
class UnivariateEffects:
    """Per-variable univariate coefficients and their diagnostics.

    Attributes
    ----------
    psi : ndarray of shape (p,)
        Slope of the response on each clr-transformed variable.
    family : str
    constant : ndarray of bool
        Variables whose clr column has no spread; their ``psi`` is 0.
    converged : ndarray of bool
        IRLS convergence per variable (all True for Gaussian).
    """

    psi: np.ndarray
    family: str
    constant: np.ndarray
    converged: np.ndarray

    @property
    def flagged(self):
        return bool(self.constant.any() or not self.converged.all())


def univariate_effects(X, y, family=GAUSSIAN) -> UnivariateEffects:
    """Regress the response on each clr-transformed variable separately.

    For a Gaussian response this is the closed-form slope of centered ``y``
    on the centered clr column; for a binary response it is the slope of a
    one-predictor logistic regression.
    """
    family = check_family(family)
    X = check_compositions(X, close=False)
    y = np.asarray(y, dtype=float).ravel()
    n = X.shape[0]
    if y.shape[0] != n:
        raise InputError(f"response has length {y.shape[0]}, expected {n}")
    if n < 3:
        raise InputError("screening needs at least 3 samples")

    logx = np.log(X)
    Z = logx - logx.mean(axis=1, keepdims=True)
    const = constant_columns(Z, scale=np.max(np.abs(logx)))

    if family == GAUSSIAN:
        Zc = Z - Z.mean(axis=0)
        yc = y - y.mean()
        denom = np.einsum("ij,ij->j", Zc, Zc)
        psi = np.zeros(X.shape[1])
        keep = ~const
        psi[keep] = (yc @ Zc[:, keep]) / denom[keep]
        return UnivariateEffects(psi, family, const, np.ones_like(const))

    y = check_binary(y)
    fit = logistic_irls(Z, y, skip=const)
    psi = np.where(const, 0.0, fit.slope)
    return UnivariateEffects(psi, family, const, fit.converged)


def top_m_indices(effects, m):
    """Indices of the ``m`` largest ``|psi|``, ties going to the lower index.

    Returned in ascending index order.
    """
    psi = np.asarray(getattr(effects, "psi", effects), dtype=float)
    m = int(m)
    if m < 2:
        raise MTooSmallError(f"need m >= 2, got {m}")
    if m > psi.size:
        raise InputError(f"m={m} exceeds the number of variables ({psi.size})")
    order = np.lexsort((np.arange(psi.size), -np.abs(psi)))
    return np.sort(order[:m])
