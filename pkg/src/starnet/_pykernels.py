"""Numpy implementations of the hot kernels.

These are the reference fallbacks for ``starnet._kernels``; both modules
expose the same functions with the same semantics.
"""
import numpy as np

_CHUNK_BITS = 16


def classical_bound(M):
    """max over b in {-1,+1}^k of sum_s |sum_t M[s,t] b_t|.

    The objective is even in b, so b_0 = +1 is fixed and only 2^(k-1)
    sign vectors are visited.
    """
    M = np.ascontiguousarray(M, dtype=np.float64)
    k = M.shape[1]
    free = k - 1
    chunk_bits = min(free, _CHUNK_BITS)
    low = np.arange(1 << chunk_bits, dtype=np.int64)
    low_signs = 1.0 - 2.0 * ((low[:, None] >> np.arange(chunk_bits)) & 1)
    # rows of M restricted to the low free bits, and the fixed b_0 column
    low_part = low_signs @ M[:, 1 : 1 + chunk_bits].T + M[:, 0]
    high_cols = M[:, 1 + chunk_bits :]
    n_high = free - chunk_bits
    best = -np.inf
    for hi in range(1 << n_high):
        hi_signs = 1.0 - 2.0 * ((hi >> np.arange(n_high)) & 1)
        rows = low_part + high_cols @ hi_signs
        best = max(best, float(np.abs(rows).sum(axis=1).max()))
    return best


def column_sums(M, U, W):
    """out[p] = sum_x M[x, p] * dot(U[x], W[p])."""
    M = np.asarray(M, dtype=np.float64)
    return ((M.T @ U) * W).sum(axis=1)


def column_sums_csc(indptr, indices, data, U, W):
    """column_sums on M stored column-compressed (indptr, row indices, values)."""
    cols = len(indptr) - 1
    col_of = np.repeat(np.arange(cols), np.diff(indptr))
    terms = data[:, None] * U[indices]
    weighted = np.stack([np.bincount(col_of, terms[:, c], minlength=cols) for c in range(3)], axis=1)
    return (weighted * W).sum(axis=1)
