"""Exhaustive search for the best single balance (small ``p`` only)."""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .coda import BalancePartition, check_compositions
from .exceptions import ConstantBalanceError, InputError, PTooLargeError
from .glm import GAUSSIAN, check_binary, check_family, constant_columns, logistic_irls

__all__ = ["OracleResult", "candidate_count", "enumerate_partitions", "exhaustive_best_balance"]

PLUS, MINUS, ZERO = 0, 1, 2
# criteria closer than this fraction of the intercept-only criterion are ties
TIE_RTOL = 1e-9


@dataclass(frozen=True)
class OracleResult:
    """Best balance found by full enumeration.

    ``criterion`` is the in-sample residual sum of squares (Gaussian) or
    deviance (binomial); ``ties`` counts candidates tied with the optimum.
    The partition is oriented so that ``theta1 >= 0``.
    """

    partition: BalancePartition
    criterion: float
    ties: int
    n_candidates: int
    theta0: float
    theta1: float


def candidate_count(p):
    """Number of balances on ``p`` variables, counting a swap as the same."""
    return (3 ** p - 2 ** (p + 1) + 1) // 2


def enumerate_partitions(p):
    """Sign codes of all balances on ``p`` variables, in lexicographic order.

    Each row assigns every variable to PLUS (0), MINUS (1) or ZERO (2).
    Only the representative whose first active variable is PLUS is kept.
    The ordering PLUS < MINUS < ZERO makes larger balances sort first among
    otherwise equal prefixes.
    """
    codes = np.array(list(product((PLUS, MINUS, ZERO), repeat=p)), dtype=np.int8)
    has_plus = (codes == PLUS).any(axis=1)
    has_minus = (codes == MINUS).any(axis=1)
    first_active = np.argmax(codes != ZERO, axis=1)
    canonical = codes[np.arange(len(codes)), first_active] == PLUS
    return codes[has_plus & has_minus & canonical]


def _weights(codes):
    plus = codes == PLUS
    minus = codes == MINUS
    return plus / plus.sum(axis=1, keepdims=True) - minus / minus.sum(axis=1, keepdims=True)


def exhaustive_best_balance(X, y, family=GAUSSIAN, max_p=10) -> OracleResult:
    """Minimize the in-sample loss of the one-balance GLM over every balance.

    Candidates whose balance is constant get the intercept-only criterion.
    Ties (criteria within a relative 1e-9 of the optimum) are common when the
    response is an exact function of the balance, since any balance
    proportional to the same signal fits perfectly. They are broken first by
    the largest sample variance of the balance and then by the
    lexicographically smallest sign code.
    """
    family = check_family(family)
    X = check_compositions(X)
    y = np.asarray(y, dtype=float).ravel()
    n, p = X.shape
    if p > max_p:
        raise PTooLargeError(f"exhaustive search is limited to p <= {max_p}, got {p}")
    if y.size != n:
        raise InputError(f"response has length {y.size}, expected {n}")
    logx = np.log(X)
    codes = enumerate_partitions(p)
    B = logx @ _weights(codes).T
    const = constant_columns(B, scale=np.max(np.abs(logx)))

    if family == GAUSSIAN:
        yc = y - y.mean()
        null = float(yc @ yc)
        Bc = B - B.mean(axis=0)
        sbb = np.einsum("ij,ij->j", Bc, Bc)
        sby = yc @ Bc
        slope = np.zeros(len(codes))
        slope[~const] = sby[~const] / sbb[~const]
        intercept = y.mean() - slope * B.mean(axis=0)
        crit = np.full(len(codes), null)
        resid = y[:, None] - intercept[~const] - slope[~const] * B[:, ~const]
        crit[~const] = np.einsum("ij,ij->j", resid, resid)
    else:
        y = check_binary(y)
        fit = logistic_irls(B, y, skip=const)
        logit0 = np.log(y.mean() / (1.0 - y.mean()))
        slope = np.where(const, 0.0, fit.slope)
        intercept = np.where(const, logit0, fit.intercept)
        eta = intercept + slope * B
        # deviance = 2 * sum(log(1 + e^eta) - y * eta)
        crit = 2.0 * (np.logaddexp(0.0, eta) - y[:, None] * eta).sum(axis=0)
        null = 2.0 * float(np.sum(np.logaddexp(0.0, logit0) - y * logit0))

    if np.all(const):
        raise ConstantBalanceError("every candidate balance is constant over the samples")
    best = float(crit.min())
    tied = np.flatnonzero(crit <= best + TIE_RTOL * max(null, 1e-300))
    # among tied optima prefer the balance with the largest spread, then the
    # smallest sign code
    spread = np.var(B[:, tied], axis=0)
    widest = tied[spread >= spread.max() * (1.0 - TIE_RTOL)]
    k = int(widest[0])
    code = codes[k]
    part = BalancePartition(np.flatnonzero(code == PLUS), np.flatnonzero(code == MINUS))
    t0, t1 = float(intercept[k]), float(slope[k])
    if t1 < 0:
        part, t1 = part.swapped(), -t1
    return OracleResult(
        partition=part,
        criterion=float(crit[k]),
        ties=int(tied.size),
        n_candidates=int(len(codes)),
        theta0=t0,
        theta1=t1,
    )
