"""Latent-variable generator for compositions and responses.

A latent ``u ~ Uniform(-0.5, 0.5)`` drives both the log-ratios of the
active variables against the last (inactive) part and the response. The
log-ratio loadings are ``1/|I+|`` on the numerator set, ``-1/|I-|`` on the
denominator set and zero elsewhere.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy.special import expit

from .coda import BalancePartition, inv_alr
from .exceptions import InputError
from .glm import GAUSSIAN, check_family
from .model_selection import make_rng

__all__ = [
    "CASES",
    "SimConfig",
    "SimDataset",
    "alpha_coefficients",
    "simulate_dataset",
    "true_beta",
]

# 0-based active sets of the two reference scenarios
CASES = {
    "i": ((0, 1, 2), (3, 4, 5)),
    "ii": ((0, 1, 2, 3, 4), (5,)),
}


@dataclass(frozen=True)
class SimConfig:
    n: int = 100
    p: int = 30
    plus_set: tuple = CASES["i"][0]
    minus_set: tuple = CASES["i"][1]
    sigma_eps: float = 0.1
    sigma_y: float = 0.1
    theta1_true: float = 0.5
    binary_scale: float = 6.0
    family: str = GAUSSIAN
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "plus_set", tuple(int(j) for j in self.plus_set))
        object.__setattr__(self, "minus_set", tuple(int(j) for j in self.minus_set))
        object.__setattr__(self, "family", check_family(self.family))
        if self.n < 1 or self.p < 3:
            raise InputError("need n >= 1 and p >= 3")
        part = BalancePartition(self.plus_set, self.minus_set)
        if max(part.active) >= self.p - 1:
            raise InputError(f"active indices must be < p-1 = {self.p - 1} (last part is the reference)")
        if self.sigma_eps < 0 or self.sigma_y < 0:
            raise InputError("noise standard deviations must be non-negative")

    @classmethod
    def for_case(cls, case, **kw):
        plus, minus = CASES[case]
        return cls(plus_set=plus, minus_set=minus, **kw)

    @property
    def partition(self):
        return BalancePartition(self.plus_set, self.minus_set)


@dataclass(frozen=True)
class SimDataset:
    X: np.ndarray
    y: np.ndarray
    u: np.ndarray
    beta_true: np.ndarray
    config: SimConfig


def alpha_coefficients(p, plus_set, minus_set):
    """Loadings of the ``p - 1`` log-ratios (against the last part) on ``u``."""
    alpha = np.zeros(int(p) - 1)
    plus, minus = list(plus_set), list(minus_set)
    alpha[plus] = 1.0 / len(plus)
    alpha[minus] = -1.0 / len(minus)
    return alpha


def true_beta(cfg: SimConfig):
    """Log-contrast coefficients implied by the generator.

    The balance of the true sets equals ``(c1 + c2) u`` plus noise, with
    ``c1 = 1/|I+|`` and ``c2 = 1/|I-|``, so the response's slope on that
    balance is ``theta1_true / (c1 + c2)``. For binary responses the
    effect on the logit scale, ``binary_scale``, takes the place of
    ``theta1_true``.
    """
    c1, c2 = 1.0 / len(cfg.plus_set), 1.0 / len(cfg.minus_set)
    effect = cfg.theta1_true if cfg.family == GAUSSIAN else cfg.binary_scale
    theta = effect / (c1 + c2)
    beta = np.zeros(cfg.p)
    beta[list(cfg.plus_set)] = theta * c1
    beta[list(cfg.minus_set)] = -theta * c2
    return beta


def simulate_dataset(cfg: SimConfig, *stream) -> SimDataset:
    """Draw one dataset.

    Extra integer ``stream`` ids select an independent sub-stream of
    ``cfg.seed``, e.g. ``simulate_dataset(cfg, rep, 0)`` for the training
    set of replication ``rep``.
    """
    rng = make_rng(cfg.seed, *stream)
    n, p = cfg.n, cfg.p
    u = rng.uniform(-0.5, 0.5, size=n)
    eps = rng.normal(0.0, 1.0, size=(n, p - 1)) * cfg.sigma_eps
    w = np.outer(u, alpha_coefficients(p, cfg.plus_set, cfg.minus_set)) + eps
    X = inv_alr(w)
    if cfg.family == GAUSSIAN:
        y = cfg.theta1_true * u + rng.normal(0.0, 1.0, size=n) * cfg.sigma_y
    else:
        y = (rng.uniform(size=n) < expit(cfg.binary_scale * u)).astype(float)
    return SimDataset(X=X, y=y, u=u, beta_true=true_beta(cfg), config=cfg)


def with_seed(cfg: SimConfig, seed):
    return replace(cfg, seed=int(seed))
