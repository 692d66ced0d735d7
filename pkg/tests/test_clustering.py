from itertools import combinations

import numpy as np
import pytest
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import squareform

from slr.clustering import cluster_two, complete_linkage_two, fiedler_vector
from slr.coda import VariationMatrix
from slr.linalg import jacobi_eigh

METHODS = ["spectral", "hierarchical"]


def random_symmetric(rng, m):
    B = rng.normal(size=(m, m))
    return B + B.T


@pytest.mark.parametrize("m", [1, 2, 3, 6, 11, 30])
def test_jacobi_matches_lapack(rng, m):
    A = random_symmetric(rng, m)
    w, V = jacobi_eigh(A)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(A), atol=1e-10)
    np.testing.assert_allclose(V.T @ V, np.eye(m), atol=1e-12)
    np.testing.assert_allclose(A @ V, V * w, atol=1e-10)


def test_jacobi_zero_and_diagonal():
    w, V = jacobi_eigh(np.zeros((3, 3)))
    np.testing.assert_array_equal(w, 0)
    w, V = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_array_equal(w, [-1.0, 2.0, 3.0])


def block_matrix(within, between, labels):
    labels = np.asarray(labels)
    A = np.where(labels[:, None] == labels[None, :], within, between).astype(float)
    np.fill_diagonal(A, 0.0)
    return A


def as_sets(res):
    return {frozenset(res.group_a), frozenset(res.group_b)}


def min_cut_partition(A, labels_ok):
    """Brute force: the 2-partition maximizing the smallest between-group entry
    over the largest within-group entry (the unique block split)."""
    m = A.shape[0]
    best, best_gap = None, -np.inf
    for r in range(1, m // 2 + 1):
        for g in combinations(range(m), r):
            mask = np.zeros(m, bool)
            mask[list(g)] = True
            within = A[np.equal.outer(mask, mask) & ~np.eye(m, dtype=bool)]
            between = A[np.not_equal.outer(mask, mask)]
            gap = between.min() - (within.max() if within.size else 0.0)
            if gap > best_gap:
                best, best_gap = mask, gap
    return {frozenset(np.flatnonzero(best)), frozenset(np.flatnonzero(~best))}


@pytest.mark.parametrize("method", METHODS)
def test_two_variables(method):
    res = cluster_two(VariationMatrix(np.array([[0, 1.0], [1.0, 0]]), (4, 9)), method)
    assert (res.group_a, res.group_b) == ((4,), (9,))


@pytest.mark.parametrize("method", METHODS)
def test_population_block_example(method):
    # 2*sigma_eps^2 within, (c1+c2)^2 sigma_u^2 + 2 sigma_eps^2 between
    A = block_matrix(0.02, 0.02 + (2 / 3) ** 2 / 12, [0, 0, 1, 1])
    res = cluster_two(A, method)
    assert as_sets(res) == {frozenset({0, 1}), frozenset({2, 3})}
    assert as_sets(res) == min_cut_partition(A, None)


@pytest.mark.parametrize("method", METHODS)
def test_perfect_tie_is_valid_and_deterministic(method):
    A = block_matrix(1.0, 1.0, [0] * 5)
    r1, r2 = cluster_two(A, method), cluster_two(A, method)
    assert r1 == r2
    assert r1.group_a and r1.group_b
    assert sorted(r1.group_a + r1.group_b) == list(range(5))


@pytest.mark.parametrize("method", METHODS)
def test_random_block_structures_are_recovered(rng, method):
    for _ in range(300):
        m = int(rng.integers(2, 11))
        labels = np.zeros(m, int)
        labels[rng.choice(m, int(rng.integers(1, m)), replace=False)] = 1
        cut = rng.uniform(0.05, 0.95)
        A = np.where(labels[:, None] == labels[None, :],
                     rng.uniform(0, cut, (m, m)), rng.uniform(cut + 1e-6, 1, (m, m)))
        A = np.triu(A, 1)
        A = A + A.T
        truth = {frozenset(np.flatnonzero(labels == 0)), frozenset(np.flatnonzero(labels == 1))}
        res = cluster_two(A, method)
        assert as_sets(res) == truth
        if m <= 8:
            assert min_cut_partition(A, None) == truth


@pytest.mark.parametrize("method", METHODS)
def test_groups_nonempty_and_cover(rng, method):
    for _ in range(100):
        m = int(rng.integers(2, 15))
        A = np.abs(random_symmetric(rng, m))
        np.fill_diagonal(A, 0)
        res = cluster_two(A, method)
        assert res.group_a and res.group_b
        assert sorted(res.group_a + res.group_b) == list(range(m))
        assert 0 in res.group_a


@pytest.mark.parametrize("method", METHODS)
def test_permutation_equivariance(rng, method):
    for _ in range(50):
        m = int(rng.integers(3, 12))
        A = np.abs(random_symmetric(rng, m))
        np.fill_diagonal(A, 0)
        perm = rng.permutation(m)
        base = as_sets(cluster_two(A, method))
        permuted = cluster_two(A[np.ix_(perm, perm)], method)
        relabeled = {frozenset(int(perm[j]) for j in g) for g in as_sets(permuted)}
        assert relabeled == base


def test_complete_linkage_matches_scipy(rng):
    for _ in range(100):
        m = int(rng.integers(3, 15))
        A = np.abs(random_symmetric(rng, m))
        np.fill_diagonal(A, 0)
        ref = fcluster(linkage(squareform(A), method="complete"), 2, criterion="maxclust")
        mask = complete_linkage_two(A)
        assert {frozenset(np.flatnonzero(mask)), frozenset(np.flatnonzero(~mask))} == {
            frozenset(np.flatnonzero(ref == 1)), frozenset(np.flatnonzero(ref == 2))
        }


def test_complete_linkage_ties_merge_smallest_first():
    # all distances equal: 0+1, then {0,1}+2, ... leaves the last index alone
    A = block_matrix(1.0, 1.0, [0] * 4)
    mask = complete_linkage_two(A)
    np.testing.assert_array_equal(mask, [True, True, True, False])


def test_fiedler_vector_properties(rng):
    for _ in range(50):
        m = int(rng.integers(3, 20))
        S = np.abs(random_symmetric(rng, m))
        np.fill_diagonal(S, 0)
        lam, v = fiedler_vector(S)
        L = np.diag(S.sum(1)) - S
        assert np.linalg.norm(L @ v - lam * v) < 1e-8
        assert abs(v.sum()) < 1e-8
        assert lam == pytest.approx(np.linalg.eigvalsh(L)[1], abs=1e-9)
        assert v[np.flatnonzero(np.abs(v) > 1e-12)[0]] > 0


def test_fiedler_disconnected_graph_separates_components():
    S = block_matrix(1.0, 0.0, [0, 0, 0, 1, 1])
    lam, v = fiedler_vector(S)
    assert lam == pytest.approx(0.0, abs=1e-12)
    assert np.all(v[:3] > 0) and np.all(v[3:] < 0)


def test_spectral_isolates_outlying_variable():
    A = block_matrix(0.0, 0.0, [0] * 4)
    A[0, 1:] = A[1:, 0] = 1.0
    res = cluster_two(A, "spectral")
    assert as_sets(res) == {frozenset({0}), frozenset({1, 2, 3})}
    # a vector orthogonal to the ones vector always has both signs
    assert not res.degenerate
