"""Prediction and variable-selection metrics."""

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .exceptions import LengthMismatchError, OneClassOnlyError

__all__ = ["SelectionReport", "mse", "auc", "selection_metrics", "l2_error"]


def _pair(a, b):
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise LengthMismatchError(f"lengths differ: {a.size} vs {b.size}")
    return a, b


def mse(y, yhat):
    """Mean squared prediction error."""
    y, yhat = _pair(y, yhat)
    if y.size == 0:
        raise LengthMismatchError("mse of empty vectors")
    r = y - yhat
    return float(r @ r / r.size)


def auc(scores, labels):
    """Area under the ROC curve via the Mann-Whitney rank-sum statistic.

    Tied scores count one half, using mid-ranks.
    """
    scores, labels = _pair(scores, labels)
    pos = labels == 1
    n1 = int(pos.sum())
    n0 = labels.size - n1
    if n1 == 0 or n0 == 0:
        raise OneClassOnlyError("AUC needs both classes")
    ranks = rankdata(scores)
    u = ranks[pos].sum() - n1 * (n1 + 1) / 2.0
    return float(u / (n1 * n0))


@dataclass(frozen=True)
class SelectionReport:
    """Support recovery counts and rates.

    Rates whose denominator is empty are reported as 0 and listed in
    ``undefined``.
    """

    tp: int
    fp: int
    fn: int
    tn: int
    fpr: float
    tpr: float
    precision: float
    f1: float
    undefined: tuple = ()

    @property
    def degenerate(self):
        return bool(self.undefined)

    def as_dict(self):
        return {
            "tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn,
            "fpr": self.fpr, "tpr": self.tpr, "precision": self.precision,
            "f1": self.f1, "undefined": list(self.undefined),
        }


def selection_metrics(beta_hat, beta_true, tol=0.0) -> SelectionReport:
    """Compare the nonzero pattern of ``beta_hat`` with that of ``beta_true``.

    An entry counts as selected when its magnitude exceeds ``tol``.
    """
    beta_hat, beta_true = _pair(beta_hat, beta_true)
    sel = np.abs(beta_hat) > tol
    act = beta_true != 0
    tp = int(np.sum(sel & act))
    fp = int(np.sum(sel & ~act))
    fn = int(np.sum(~sel & act))
    tn = int(np.sum(~sel & ~act))
    undefined = []

    def ratio(num, den, name):
        if den == 0:
            undefined.append(name)
            return 0.0
        return num / den

    fpr = ratio(fp, fp + tn, "fpr")
    tpr = ratio(tp, tp + fn, "tpr")
    precision = ratio(tp, tp + fp, "precision")
    f1 = 0.0 if tp == 0 else 2 * precision * tpr / (precision + tpr)
    return SelectionReport(tp, fp, fn, tn, fpr, tpr, precision, f1, tuple(undefined))


def l2_error(beta_hat, beta_true):
    """Euclidean distance between coefficient vectors."""
    beta_hat, beta_true = _pair(beta_hat, beta_true)
    return float(np.linalg.norm(beta_hat - beta_true))
