"""Bipartite correlator Bell inequalities written as a structure matrix.

An inequality is sum_{s,t} M[s,t] <A^s B^t> <= C.  Settings are numbered
from 1 in the public API; arrays are of course 0-based internally.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._validation import unit_vectors
from .errors import (
    EnumerationTooLargeError,
    InvalidDimensionError,
    InvalidIndexError,
    InvalidPairError,
    InvalidSettingsError,
)

MAX_ENUMERATION_K = 20


@dataclass(frozen=True, eq=False)
class StructureMatrix:
    """A k x k structure matrix together with its classical bound C."""

    entries: np.ndarray
    classical_bound: float
    name: str = ""

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.float64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 2:
            raise InvalidDimensionError(f"structure matrix must be square with side >= 2, got {entries.shape}")
        if not self.classical_bound >= 0:
            raise InvalidDimensionError(f"classical bound must be nonnegative, got {self.classical_bound}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "classical_bound", float(self.classical_bound))

    @property
    def k(self):
        return self.entries.shape[0]

    def transpose(self):
        return StructureMatrix(self.entries.T, self.classical_bound, self.name)


@dataclass(frozen=True)
class SettingPair:
    s: int
    t: int


def chsh_matrix():
    return StructureMatrix([[1.0, 1.0], [1.0, -1.0]], 2.0, "chsh")


def gchsh_matrix(k):
    """Chained (generalized CHSH) matrix: transposed Jordan block minus E_1k.

    Ones on the diagonal and first subdiagonal, -1 in entry (1, k);
    classical bound 2(k-1).
    """
    if k < 2:
        raise InvalidDimensionError(f"gCHSH needs k >= 2, got {k}")
    entries = np.eye(k) + np.eye(k, k=-1)
    entries[0, k - 1] -= 1.0
    return StructureMatrix(entries, 2.0 * (k - 1), f"gchsh{k}")


def _check_pair(ntilde, s, t):
    if not 1 <= s < t <= ntilde:
        raise InvalidPairError(f"need 1 <= s < t <= {ntilde}, got (s, t) = ({s}, {t})")


def pair_index(ntilde, s, t):
    """Flat 1-based setting label of the pair setting A^{st}.

    l = s (ntilde - (s + 1) / 2) + t, evaluated in integers.
    """
    _check_pair(ntilde, s, t)
    return s * (2 * ntilde - s - 1) // 2 + t


def unpair_index(ntilde, l):
    lo, hi = ntilde + 1, ntilde * (ntilde + 1) // 2
    if not lo <= l <= hi:
        raise InvalidIndexError(f"pair label must lie in [{lo}, {hi}], got {l}")
    for s in range(1, ntilde):
        t = l - s * (2 * ntilde - s - 1) // 2
        if s < t <= ntilde:
            return SettingPair(s, t)
    raise InvalidIndexError(f"no pair maps to label {l}")  # unreachable for valid l


def vertesi_pairs(ntilde):
    """All (s, t) pairs in flat-label order."""
    return [unpair_index(ntilde, l) for l in range(ntilde + 1, ntilde * (ntilde + 1) // 2 + 1)]


def vertesi_matrix(ntilde):
    """Symmetric Vertesi inequality I_{n,n} with n = ntilde; k = n(n+1)/2, C = n^2."""
    if ntilde < 2:
        raise InvalidDimensionError(f"Vertesi parameter must be >= 2, got {ntilde}")
    k = ntilde * (ntilde + 1) // 2
    entries = np.zeros((k, k))
    entries[:ntilde, :ntilde] = 1.0
    for pair in vertesi_pairs(ntilde):
        col = pair_index(ntilde, pair.s, pair.t) - 1
        entries[pair.s - 1, col] = entries[col, pair.s - 1] = 1.0
        entries[pair.t - 1, col] = entries[col, pair.t - 1] = -1.0
    return StructureMatrix(entries, float(ntilde * ntilde), f"vertesi{ntilde}")


def classical_bound_exhaustive(M):
    """Exact local bound by enumerating Bob's deterministic strategies.

    For fixed b, Alice's best response takes the sign of each row sum, so
    the bound is max_b sum_s |sum_t M[s,t] b_t|.
    """
    entries = M.entries if isinstance(M, StructureMatrix) else np.asarray(M, dtype=np.float64)
    k = entries.shape[1]
    if k > MAX_ENUMERATION_K:
        raise EnumerationTooLargeError(
            f"k = {k} exceeds the enumeration limit {MAX_ENUMERATION_K}; supply a known bound"
        )
    return float(kernels.classical_bound(entries))


def bipartite_quantum_value(M, V, W):
    """Singlet value |sum_{s,t} M[s,t] v^s . w^t| for Bloch directions V, W."""
    V = unit_vectors(V, "alice vectors")
    W = unit_vectors(W, "bob vectors")
    if V.shape[0] != M.k or W.shape[0] != M.k:
        raise InvalidSettingsError(
            f"expected {M.k} vectors per party, got {V.shape[0]} and {W.shape[0]}"
        )
    return float(abs(np.sum(M.entries * (V @ W.T))))
