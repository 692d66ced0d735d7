"""Dense symmetric eigensolver (cyclic Jacobi, round-robin ordering)."""

import numpy as np

__all__ = ["jacobi_eigh"]


def _round_robin(m):
    """Pairings for one sweep: each round is a set of disjoint index pairs."""
    players = list(range(m)) + ([-1] if m % 2 else [])
    k = len(players)
    rounds = []
    for _ in range(k - 1):
        pairs = [(players[i], players[k - 1 - i]) for i in range(k // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a >= 0 and b >= 0]
        rounds.append((np.array([a for a, _ in pairs]), np.array([b for _, b in pairs])))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(A, tol=1e-12, max_sweeps=100):
    """Eigen-decomposition of a real symmetric matrix by Jacobi rotations.

    Each sweep visits every off-diagonal pair once; pairs are grouped into
    rounds of disjoint rotations that are applied together. Iteration stops
    when the off-diagonal Frobenius norm is below ``tol`` times the norm of
    ``A``.

    Returns
    -------
    w : ndarray of shape (m,)
        Eigenvalues in ascending order.
    V : ndarray of shape (m, m)
        Orthonormal eigenvectors as columns, ``A @ V[:, i] = w[i] * V[:, i]``.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("jacobi_eigh expects a square matrix")
    m = A.shape[0]
    A = 0.5 * (A + A.T)
    V = np.eye(m)
    if m == 1:
        return A.diagonal().copy(), V
    scale = np.linalg.norm(A)
    if scale == 0.0:
        return np.zeros(m), V
    rounds = _round_robin(m)
    offmask = ~np.eye(m, dtype=bool)
    for _ in range(max_sweeps):
        if np.sqrt(np.sum(A[offmask] ** 2)) <= tol * scale:
            break
        for P, Q in rounds:
            apq = A[P, Q]
            nz = apq != 0.0
            if not nz.any():
                continue
            P, Q, apq = P[nz], Q[nz], apq[nz]
            theta = (A[Q, Q] - A[P, P]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            J = np.eye(m)
            J[P, P] = c
            J[Q, Q] = c
            J[P, Q] = s
            J[Q, P] = -s
            A = J.T @ A @ J
            A = 0.5 * (A + A.T)
            A[P, Q] = 0.0
            A[Q, P] = 0.0
            V = V @ J
    w = A.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]
