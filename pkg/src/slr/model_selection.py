"""Cross-validation over the screened-size grid and the one-standard-error rule."""

from dataclasses import dataclass, field

import numpy as np

from .clustering import SPECTRAL, check_method
from .coda import check_compositions
from .exceptions import InputError, KTooLargeError, SLRError
from .glm import BINOMIAL, GAUSSIAN, check_binary, check_family
from .metrics import auc, mse
from .model import _fit_from_effects, _names, fit_slr, predict
from .screening import univariate_effects

__all__ = [
    "CvPath",
    "default_grid",
    "stratified_kfold",
    "cv_path",
    "select_one_se",
    "fit_cv",
    "fold_models",
]


def make_rng(*keys):
    """Counter-based (Philox) generator keyed by a seed and sub-stream ids.

    Keys may be ints or tuples of ints, so ``make_rng((seed, rep), fold)``
    and ``make_rng(seed, rep, fold)`` give the same stream.
    """
    flat = []
    for k in keys:
        flat.extend(int(v) for v in np.atleast_1d(k))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(flat)))


def default_grid(p):
    """Even sizes 2, 4, ... up to ``min(p, 30)``, plus ``p`` itself when ``p <= 30``."""
    p = int(p)
    if p < 2:
        raise InputError("need p >= 2")
    grid = list(range(2, min(p, 30) + 1, 2))
    if p <= 30 and p not in grid:
        grid.append(p)
    return grid


def check_grid(grid, p):
    grid = sorted({int(m) for m in grid})
    if not grid:
        raise InputError("empty grid")
    if grid[0] < 2 or grid[-1] > p:
        raise InputError(f"grid values must lie in [2, {p}]")
    return grid


def stratified_kfold(y, K, seed=0, stratify=True):
    """Assign each sample to one of ``K`` folds.

    With ``stratify`` each distinct label value is its own stratum: its
    members are shuffled and dealt round-robin, continuing from wherever the
    previous stratum stopped so that overall fold sizes also differ by at most
    one. Without it, all samples form a single stratum.

    Returns
    -------
    ndarray of int, shape (n,)
        Fold index in ``0..K-1`` per sample.
    """
    y = np.asarray(y).ravel()
    n = y.size
    K = int(K)
    if K < 2:
        raise InputError("need at least 2 folds")
    if n < K:
        raise KTooLargeError(f"{K} folds requested for {n} samples")
    rng = make_rng(seed)
    strata = np.unique(y) if stratify else [None]
    folds = np.empty(n, dtype=int)
    offset = 0
    for s in strata:
        members = np.arange(n) if s is None else np.flatnonzero(y == s)
        members = rng.permutation(members)
        folds[members] = (offset + np.arange(members.size)) % K
        offset = (offset + members.size) % K
    return folds


@dataclass
class CvPath:
    """Cross-validated error curve over candidate screened sizes.

    ``fold_errors[g, k]`` is the held-out error of grid value ``g`` on fold
    ``k`` (NaN when the fold was skipped). Errors are MSE for Gaussian and
    1 - AUC for binomial responses.
    """

    grid: list
    mean_error: np.ndarray
    se: np.ndarray
    folds: int
    fold_errors: np.ndarray = None
    flags: list = field(default_factory=list)

    def as_dict(self):
        def num(v):
            return float(v) if np.isfinite(v) else None

        return {
            "grid": [int(m) for m in self.grid],
            "mean_error": [num(v) for v in self.mean_error],
            "se": [num(v) for v in self.se],
            "folds": int(self.folds),
            "flags": list(self.flags),
        }


def _summarize(errors):
    mean = np.empty(errors.shape[0])
    se = np.empty(errors.shape[0])
    for g, row in enumerate(errors):
        row = row[~np.isnan(row)]
        if row.size == 0 or not np.all(np.isfinite(row)):
            mean[g], se[g] = np.inf, np.inf
            continue
        mean[g] = row.mean()
        se[g] = row.std(ddof=1) / np.sqrt(row.size) if row.size > 1 else 0.0
    return mean, se


def fold_models(X, y, train, grid, family=GAUSSIAN, cluster=SPECTRAL):
    """Fit one model per grid value using only the rows selected by ``train``.

    Yields ``(m, model_or_exception)``; screening runs once and is shared by
    all grid values.
    """
    names = _names(None, X.shape[1])
    try:
        effects = univariate_effects(X[train], y[train], family)
    except SLRError as exc:
        for m in grid:
            yield m, exc
        return
    for m in grid:
        try:
            yield m, _fit_from_effects(X[train], y[train], effects, m, family, cluster, names)
        except SLRError as exc:
            yield m, exc


def _fold_errors(X, y, folds, k, grid, family, cluster):
    """Held-out errors of every grid value for fold ``k``, plus any flags."""
    train, test = folds != k, folds == k
    flags = []
    worst = np.inf if family == GAUSSIAN else 1.0
    out = np.full(len(grid), np.nan)
    if family == BINOMIAL and np.unique(y[test]).size < 2:
        flags.append(f"fold {k}: held-out fold has a single class, skipped")
        return out, flags
    for g, (m, model) in enumerate(fold_models(X, y, train, grid, family, cluster)):
        if isinstance(model, SLRError):
            flags.append(f"fold {k}, m={m}: fit failed ({type(model).__name__})")
            out[g] = worst
            continue
        pred = predict(model, X[test])
        out[g] = mse(y[test], pred) if family == GAUSSIAN else 1.0 - auc(pred, y[test])
    return out, flags


def cv_path(X, y, grid=None, K=10, family=GAUSSIAN, cluster=SPECTRAL, seed=0, folds=None):
    """K-fold cross-validation error for each screened size in ``grid``.

    Screening, clustering and the balance fit all see only the training
    folds. A fit that fails records the worst possible error for that cell
    (infinity for MSE, 1 for 1 - AUC); binomial folds whose held-out part
    has one class are skipped.

    Parameters
    ----------
    folds : array_like of int, optional
        Precomputed fold assignment; overrides ``K`` and ``seed``.
    """
    family = check_family(family)
    cluster = check_method(cluster)
    X = check_compositions(X)
    y = np.asarray(y, dtype=float).ravel()
    n, p = X.shape
    if y.size != n:
        raise InputError(f"response has length {y.size}, expected {n}")
    if family == BINOMIAL:
        check_binary(y)
    grid = check_grid(default_grid(p) if grid is None else grid, p)
    if folds is None:
        folds = stratified_kfold(y, K, seed, stratify=family == BINOMIAL)
    folds = np.asarray(folds, dtype=int)
    K = int(folds.max()) + 1
    errors = np.empty((len(grid), K))
    flags = []
    for k in range(K):
        errors[:, k], fk = _fold_errors(X, y, folds, k, grid, family, cluster)
        flags.extend(fk)
    mean, se = _summarize(errors)
    return CvPath(grid=grid, mean_error=mean, se=se, folds=K, fold_errors=errors, flags=flags)


def select_one_se(path):
    """Smallest grid value whose mean error is within one SE of the minimum.

    The SE used is the one at the minimizer; ties at the minimum go to the
    smaller size.
    """
    grid = list(getattr(path, "grid"))
    mean = np.asarray(path.mean_error, dtype=float)
    se = np.asarray(path.se, dtype=float)
    if not grid:
        raise InputError("empty CV path")
    best = int(np.argmin(mean))  # first occurrence = smallest m
    if not np.isfinite(mean[best]):
        return grid[0]
    band = mean[best] + se[best]
    for g, m in enumerate(grid):
        if mean[g] <= band:
            return m
    return grid[best]


def fit_cv(X, y, grid=None, K=10, family=GAUSSIAN, cluster=SPECTRAL, seed=0, feature_names=None):
    """Choose the screened size by CV and the one-SE rule, then refit on all data.

    Returns
    -------
    model : SlrModel
    path : CvPath
    """
    path = cv_path(X, y, grid=grid, K=K, family=family, cluster=cluster, seed=seed)
    m = select_one_se(path)
    model = fit_slr(X, y, m, family=family, cluster=cluster, feature_names=feature_names)
    return model, path
