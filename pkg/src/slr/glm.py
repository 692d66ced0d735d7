"""Two-parameter (intercept + slope) GLM fits used by screening and SLR.

Gaussian fits are closed-form least squares. Binomial fits use Newton /
IRLS with the logit link, vectorized so that many single-predictor models
(one per column) are solved at once.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .exceptions import BinaryResponseNotIn01Error, InputError, OneClassOnlyError

GAUSSIAN = "gaussian"
BINOMIAL = "binomial"
FAMILIES = (GAUSSIAN, BINOMIAL)

MAX_ITER = 25
TOL = 1e-8
# A centered predictor whose spread is below this fraction of the data scale
# is treated as constant (roundoff-level variation carries no signal).
CONSTANT_RTOL = 1e-10


def check_family(family):
    family = str(family).lower()
    if family not in FAMILIES:
        raise InputError(f"family must be one of {FAMILIES}, got {family!r}")
    return family


def check_binary(y):
    y = np.asarray(y, dtype=float)
    if not np.all((y == 0) | (y == 1)):
        raise BinaryResponseNotIn01Error("binomial response must contain only 0 and 1")
    if y.min() == y.max():
        raise OneClassOnlyError("binomial response contains a single class")
    return y


def constant_columns(Z, scale=None):
    """Boolean mask of columns of ``Z`` with numerically zero spread.

    ``scale`` is the magnitude the roundoff is relative to; it defaults to
    the largest absolute entry of ``Z``.
    """
    Z = np.asarray(Z, dtype=float)
    if Z.ndim == 1:
        Z = Z[:, None]
    if scale is None:
        scale = np.max(np.abs(Z)) if Z.size else 0.0
    spread = np.ptp(Z, axis=0)
    return spread <= CONSTANT_RTOL * max(1.0, scale)


@dataclass(frozen=True)
class LogisticFit:
    intercept: np.ndarray
    slope: np.ndarray
    converged: np.ndarray
    n_iter: int


def logistic_irls(Z, y, max_iter=MAX_ITER, tol=TOL, skip=None):
    """Fit ``logit P(y=1) = a_j + b_j * Z[:, j]`` for every column ``j``.

    Newton steps on the two coefficients, stopping per column once the
    largest coefficient change falls below ``tol``. Columns that hit
    ``max_iter`` or run into a singular weighted Hessian (quasi-separation)
    keep their last finite iterate and are marked not converged.

    Parameters
    ----------
    Z : ndarray of shape (n, q)
    y : ndarray of shape (n,)
        0/1 labels.
    skip : ndarray of bool, shape (q,), optional
        Columns to leave at slope 0 (e.g. constant predictors).
    """
    Z = np.asarray(Z, dtype=float)
    if Z.ndim == 1:
        Z = Z[:, None]
    y = np.asarray(y, dtype=float)
    n, q = Z.shape
    center = Z.mean(axis=0)
    Zc = Z - center
    ybar = y.mean()
    a = np.full(q, np.log(ybar / (1.0 - ybar)))
    b = np.zeros(q)
    active = np.ones(q, dtype=bool) if skip is None else ~np.asarray(skip, dtype=bool)
    converged = ~active
    it = 0
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active & ~converged)
        if idx.size == 0:
            it -= 1
            break
        z = Zc[:, idx]
        mu = expit(a[idx] + b[idx] * z)
        w = mu * (1.0 - mu)
        r = y[:, None] - mu
        g0 = r.sum(axis=0)
        g1 = (r * z).sum(axis=0)
        h00 = w.sum(axis=0)
        h01 = (w * z).sum(axis=0)
        h11 = (w * z * z).sum(axis=0)
        det = h00 * h11 - h01 * h01
        ok = np.isfinite(det) & (det > 1e-300) & (h00 > 0)
        with np.errstate(divide="ignore", invalid="ignore"):
            da = (h11 * g0 - h01 * g1) / det
            db = (h00 * g1 - h01 * g0) / det
        ok &= np.isfinite(da) & np.isfinite(db)
        # singular Hessian: stop the column where it is
        stuck = idx[~ok]
        active[stuck] = False
        good = idx[ok]
        a[good] += da[ok]
        b[good] += db[ok]
        step = np.maximum(np.abs(da[ok]), np.abs(db[ok]))
        converged[good[step < tol]] = True
    intercept = a - b * center
    return LogisticFit(intercept=intercept, slope=b, converged=converged, n_iter=it)


def ols_line(b, y):
    """Least-squares intercept and slope of ``y`` on ``b``."""
    b = np.asarray(b, dtype=float)
    y = np.asarray(y, dtype=float)
    bc = b - b.mean()
    slope = bc @ (y - y.mean()) / (bc @ bc)
    return y.mean() - slope * b.mean(), slope
