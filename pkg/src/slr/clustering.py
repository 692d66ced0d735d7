"""Two-group clustering of variables from a variation (dissimilarity) matrix."""

from dataclasses import dataclass

import numpy as np

from .coda import VariationMatrix
from .exceptions import InputError
from .linalg import jacobi_eigh

__all__ = [
    "HIERARCHICAL",
    "SPECTRAL",
    "TwoClusterResult",
    "cluster_two",
    "complete_linkage_two",
    "fiedler_vector",
    "spectral_two",
]

HIERARCHICAL = "hierarchical"
SPECTRAL = "spectral"
METHODS = (HIERARCHICAL, SPECTRAL)


@dataclass(frozen=True)
class TwoClusterResult:
    """Split of the screened variables into two nonempty groups.

    Groups hold original variable indices (via the variation matrix's
    ``index_map``). ``group_a`` is the group holding the first screened
    variable. ``degenerate`` is set when the spectral split had to be forced.
    """

    group_a: tuple
    group_b: tuple
    method: str
    degenerate: bool = False


def check_method(method):
    method = str(method).lower()
    if method not in METHODS:
        raise InputError(f"cluster method must be one of {METHODS}, got {method!r}")
    return method


def complete_linkage_two(D):
    """Agglomerative complete-linkage clustering stopped at two clusters.

    Among equally close cluster pairs the one with the smallest
    (lowest-member) labels merges first. Returns a boolean mask marking the
    cluster that contains index 0.
    """
    D = np.asarray(D, dtype=float)
    m = D.shape[0]
    clusters = [[j] for j in range(m)]
    # inter-cluster distance, kept in sync as clusters merge
    dist = D.copy()
    np.fill_diagonal(dist, np.inf)
    alive = list(range(m))
    while len(alive) > 2:
        sub = dist[np.ix_(alive, alive)]
        best = sub.min()
        # alive is sorted by lowest member, so the first hit in row-major
        # order over the upper triangle is the smallest label pair
        rows, cols = np.nonzero(np.triu(sub == best, k=1))
        a, b = alive[rows[0]], alive[cols[0]]
        clusters[a].extend(clusters[b])
        clusters[b] = []
        merged = np.maximum(dist[a], dist[b])
        dist[a, :] = merged
        dist[:, a] = merged
        dist[a, a] = np.inf
        alive.remove(b)
    mask = np.zeros(m, dtype=bool)
    mask[clusters[alive[0]]] = True
    return mask


def _similarity(D):
    D = np.asarray(D, dtype=float)
    S = D.max() - D
    np.fill_diagonal(S, 0.0)
    return S


def fiedler_vector(S, tol=1e-12):
    """Second eigenpair of the unnormalized Laplacian of similarity ``S``.

    The constant eigenvector is lifted out of the way by adding a multiple of
    ``11^T / m`` that exceeds the spectrum, so the smallest remaining
    eigenvector is orthogonal to the all-ones vector by construction. The
    sign is fixed so the first non-negligible entry is positive.

    Returns
    -------
    lam : float
    v : ndarray of shape (m,)
    """
    S = np.asarray(S, dtype=float)
    m = S.shape[0]
    L = np.diag(S.sum(axis=1)) - S
    lift = 2.0 * np.trace(L) + 1.0
    w, V = jacobi_eigh(L + lift * np.full((m, m), 1.0 / m), tol=tol)
    v = V[:, 0]
    v = v - v.mean()
    v /= np.linalg.norm(v)
    big = np.flatnonzero(np.abs(v) > 1e-12 * np.abs(v).max())
    if v[big[0]] < 0:
        v = -v
    return float(v @ L @ v), v


def spectral_two(D):
    """Sign split of the Fiedler vector of ``max(D) - D``.

    Returns ``(mask, degenerate)`` where ``mask`` marks the cluster that
    contains index 0. If every entry has the same sign, the largest-magnitude
    entry is split off on its own and ``degenerate`` is True.
    """
    D = np.asarray(D, dtype=float)
    m = D.shape[0]
    _, v = fiedler_vector(_similarity(D))
    pos = v > 0
    degenerate = False
    if pos.all() or not pos.any():
        degenerate = True
        pos = np.zeros(m, dtype=bool)
        pos[int(np.argmax(np.abs(v)))] = True
    if not pos[0]:
        pos = ~pos
    return pos, degenerate


def cluster_two(A, method=SPECTRAL) -> TwoClusterResult:
    """Partition the variables of a variation matrix into two groups."""
    method = check_method(method)
    if isinstance(A, VariationMatrix):
        values, index_map = A.values, A.index_map
    else:
        values = np.asarray(A, dtype=float)
        index_map = tuple(range(values.shape[0]))
    m = values.shape[0]
    if values.ndim != 2 or values.shape[1] != m:
        raise InputError("variation matrix must be square")
    if m < 2:
        raise InputError("need at least two variables to cluster")
    degenerate = False
    if m == 2:
        mask = np.array([True, False])
    elif method == HIERARCHICAL:
        mask = complete_linkage_two(values)
    else:
        mask, degenerate = spectral_two(values)
    idx = np.asarray(index_map)
    return TwoClusterResult(
        group_a=tuple(int(j) for j in idx[mask]),
        group_b=tuple(int(j) for j in idx[~mask]),
        method=method,
        degenerate=degenerate,
    )
