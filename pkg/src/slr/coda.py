"""Compositional data primitives.

Compositions are plain numpy arrays: a single composition is a 1-D array of
strictly positive parts summing to one, and a composition matrix is a 2-D
array with one composition per row. Zeros are rejected here; replacing them
is the caller's job (see :func:`slr.io.load_dataset`).
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    ExpOverflowError,
    IndexOutOfRangeError,
    InputError,
    SubsetTooSmallError,
    TooShortError,
    ZeroEntryError,
)

__all__ = [
    "BalancePartition",
    "VariationMatrix",
    "closure",
    "check_compositions",
    "clr",
    "alr",
    "inv_alr",
    "balance",
    "variation_matrix",
]

SUM_TOL = 1e-9


@dataclass(frozen=True)
class BalancePartition:
    """Numerator set ``plus`` and denominator set ``minus`` of a balance.

    Indices are stored as sorted tuples; the variables in neither set form
    the inactive complement.
    """

    plus: tuple
    minus: tuple

    def __init__(self, plus: Iterable[int], minus: Iterable[int]):
        plus = tuple(sorted(int(j) for j in plus))
        minus = tuple(sorted(int(j) for j in minus))
        if not plus or not minus:
            raise InputError("both sides of a balance must be nonempty")
        if len(set(plus)) != len(plus) or len(set(minus)) != len(minus):
            raise InputError("duplicate index in balance partition")
        if set(plus) & set(minus):
            raise InputError("numerator and denominator sets overlap")
        if min(plus + minus) < 0:
            raise IndexOutOfRangeError("negative index in balance partition")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    def check(self, p: int) -> "BalancePartition":
        top = max(self.plus + self.minus)
        if top >= p:
            raise IndexOutOfRangeError(f"index {top} out of range for p={p}")
        return self

    def swapped(self) -> "BalancePartition":
        return BalancePartition(self.minus, self.plus)

    @property
    def active(self) -> tuple:
        return tuple(sorted(self.plus + self.minus))

    def relabel(self, mapping: Sequence[int]) -> "BalancePartition":
        """Map every index ``j`` to ``mapping[j]``."""
        return BalancePartition([mapping[j] for j in self.plus], [mapping[j] for j in self.minus])


@dataclass(frozen=True)
class VariationMatrix:
    """Pairwise Aitchison variation over a subset of variables.

    ``values[a, b]`` is the variation between original variables
    ``index_map[a]`` and ``index_map[b]``.
    """

    values: np.ndarray
    index_map: tuple

    @property
    def size(self) -> int:
        return len(self.index_map)


def _as_positive(x, what="composition"):
    x = np.asarray(x, dtype=float)
    if x.ndim not in (1, 2):
        raise InputError(f"{what} must be 1-D or 2-D, got {x.ndim}-D")
    if x.shape[-1] < 2:
        raise TooShortError(f"{what} needs at least 2 parts, got {x.shape[-1]}")
    if not np.all(np.isfinite(x)):
        raise InputError(f"{what} contains non-finite values")
    bad = np.argwhere(x <= 0)
    if bad.size:
        raise ZeroEntryError(
            f"{what} has a non-positive entry at {tuple(int(i) for i in bad[0])}; "
            "apply a pseudocount first"
        )
    return x


def closure(raw):
    """Scale each composition (row) to unit sum.

    Parameters
    ----------
    raw : array_like
        1-D vector or 2-D matrix (rows = samples) of strictly positive
        abundances.

    Returns
    -------
    numpy.ndarray
        Proportions of the same shape, each row summing to one.

    Raises
    ------
    ZeroEntryError
        If any entry is zero or negative.
    TooShortError
        If there are fewer than two parts.
    """
    x = _as_positive(raw)
    return x / x.sum(axis=-1, keepdims=True)


def check_compositions(X, close=True):
    """Validate a positive 2-D sample matrix, returning it closed (by default)."""
    X = _as_positive(X, "composition matrix")
    if X.ndim != 2:
        raise InputError("expected a 2-D composition matrix (rows = samples)")
    if close:
        X = X / X.sum(axis=1, keepdims=True)
    return X


def clr(x):
    """Centered log-ratio transform along the last axis."""
    logx = np.log(_as_positive(x))
    return logx - logx.mean(axis=-1, keepdims=True)


def alr(x):
    """Additive log-ratio transform with the last part as reference."""
    logx = np.log(_as_positive(x))
    return logx[..., :-1] - logx[..., -1:]


def inv_alr(w):
    """Map log-ratios against an implicit last part back onto the simplex.

    Entries are shifted by ``max(w, 0)`` before exponentiating, which leaves
    the result unchanged but keeps every exponent non-positive.
    """
    w = np.asarray(w, dtype=float)
    if not np.all(np.isfinite(w)):
        raise ExpOverflowError("inv_alr requires finite log-ratios")
    full = np.concatenate([w, np.zeros(w.shape[:-1] + (1,))], axis=-1)
    shift = np.maximum(w.max(axis=-1, keepdims=True), 0.0)
    e = np.exp(full - shift)
    return e / e.sum(axis=-1, keepdims=True)


def balance(x, part: BalancePartition):
    """Log ratio of the geometric means of ``part.plus`` over ``part.minus``.

    Works on a single composition or row-wise on a matrix. No normalizing
    constant is applied.
    """
    x = _as_positive(x)
    part.check(x.shape[-1])
    logx = np.log(x)
    return logx[..., list(part.plus)].mean(axis=-1) - logx[..., list(part.minus)].mean(axis=-1)


def variation_matrix(X, subset=None) -> VariationMatrix:
    """Variation matrix of the variables in ``subset`` (all if ``None``).

    Entry ``(j, k)`` is the mean squared deviation (divisor ``n``) of
    ``log(x_j / x_k)`` over the samples.
    """
    X = _as_positive(X, "composition matrix")
    if X.ndim != 2:
        raise InputError("expected a 2-D composition matrix")
    n, p = X.shape
    idx = list(range(p)) if subset is None else [int(j) for j in subset]
    if len(idx) < 2:
        raise SubsetTooSmallError("variation matrix needs at least 2 variables")
    if n < 2:
        raise SubsetTooSmallError("variation matrix needs at least 2 samples")
    if min(idx) < 0 or max(idx) >= p:
        raise IndexOutOfRangeError(f"subset index out of range for p={p}")
    logx = np.log(X[:, idx])
    diff = logx[:, :, None] - logx[:, None, :]
    diff -= diff.mean(axis=0)
    values = np.einsum("ijk,ijk->jk", diff, diff) / n
    return VariationMatrix(values=values, index_map=tuple(idx))
