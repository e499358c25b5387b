"""Hot-kernel dispatch.

The compiled ``starnet._kernels`` extension is used when it was built;
otherwise the numpy versions from ``starnet._pykernels`` are used.
``BACKEND`` records which one was selected at import.
"""
import numpy as np

try:
    from ._kernels import classical_bound, column_sums, column_sums_csc

    BACKEND = "cython"
except ImportError:  # extension not built
    from ._pykernels import classical_bound, column_sums, column_sums_csc

    BACKEND = "python"

__all__ = ["BACKEND", "classical_bound", "column_sums", "column_sums_csc", "to_csc"]


def to_csc(M):
    """(indptr, indices, data) of the nonzeros of M, grouped by column."""
    M = np.asarray(M, dtype=np.float64)
    cols, rows = np.nonzero(M.T)
    indptr = np.searchsorted(cols, np.arange(M.shape[1] + 1)).astype(np.int64)
    return indptr, rows.astype(np.int64), M[rows, cols]
