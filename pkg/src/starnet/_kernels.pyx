# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``starnet._pykernels`` for the reference versions."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


def classical_bound(M):
    """max over b in {-1,+1}^k of sum_s |sum_t M[s,t] b_t|.

    Gray-code walk over b with b_0 = +1 fixed: each step flips one sign and
    updates the row sums in O(k).
    """
    cdef const double[:, ::1] m = np.ascontiguousarray(M, dtype=np.float64)
    cdef Py_ssize_t rows = m.shape[0], k = m.shape[1]
    cdef double[::1] r = np.zeros(rows, dtype=np.float64)
    cdef double[::1] b = np.ones(k, dtype=np.float64)
    cdef Py_ssize_t s, t, bit
    cdef unsigned long long step, total = 1ULL << (k - 1)
    cdef double acc, best, delta

    for s in range(rows):
        acc = 0.0
        for t in range(k):
            acc += m[s, t]
        r[s] = acc
    best = 0.0
    for s in range(rows):
        best += fabs(r[s])

    for step in range(1, total):
        # bit to flip is the lowest set bit of step; free bits are 1..k-1
        bit = 0
        while not (step >> bit) & 1ULL:
            bit += 1
        t = bit + 1
        delta = -2.0 * b[t]
        b[t] = -b[t]
        acc = 0.0
        for s in range(rows):
            r[s] += delta * m[s, t]
            acc += fabs(r[s])
        if acc > best:
            best = acc
    return best


def column_sums(M, U, W):
    """out[p] = sum_x M[x, p] * dot(U[x], W[p]); zero entries of M are skipped."""
    cdef const double[:, ::1] m = np.ascontiguousarray(M, dtype=np.float64)
    cdef const double[:, ::1] u = np.ascontiguousarray(U, dtype=np.float64)
    cdef const double[:, ::1] w = np.ascontiguousarray(W, dtype=np.float64)
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1], p, x
    cdef cnp.ndarray[cnp.float64_t, ndim=1] result = np.zeros(cols, dtype=np.float64)
    cdef double[::1] out = result
    cdef double mx, u0, u1, u2

    # row-major walk over M keeps the access contiguous
    for x in range(rows):
        u0 = u[x, 0]
        u1 = u[x, 1]
        u2 = u[x, 2]
        for p in range(cols):
            mx = m[x, p]
            if mx != 0.0:
                out[p] += mx * (u0 * w[p, 0] + u1 * w[p, 1] + u2 * w[p, 2])
    return result


def column_sums_csc(indptr, indices, data, U, W):
    """column_sums on M stored column-compressed (indptr, row indices, values)."""
    cdef const long long[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const long long[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const double[::1] val = np.ascontiguousarray(data, dtype=np.float64)
    cdef const double[:, ::1] u = np.ascontiguousarray(U, dtype=np.float64)
    cdef const double[:, ::1] w = np.ascontiguousarray(W, dtype=np.float64)
    cdef Py_ssize_t cols = ptr.shape[0] - 1, p, n, x
    cdef cnp.ndarray[cnp.float64_t, ndim=1] result = np.empty(cols, dtype=np.float64)
    cdef double s0, s1, s2, mx

    for p in range(cols):
        # sum_x M[x,p] U[x] first, then one dot product with W[p]
        s0 = s1 = s2 = 0.0
        for n in range(ptr[p], ptr[p + 1]):
            x = idx[n]
            mx = val[n]
            s0 += mx * u[x, 0]
            s1 += mx * u[x, 1]
            s2 += mx * u[x, 2]
        result[p] = s0 * w[p, 0] + s1 * w[p, 1] + s2 * w[p, 2]
    return result
