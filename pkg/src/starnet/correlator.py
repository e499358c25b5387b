"""Closed-form Alice-Bob correlator on one branch of sequential observers.

The branch starts in the singlet.  Alices 1..m-1 perform optimal weak
measurements with precision G and quality F (G^2 + F^2 = 1), each picking
one of k settings uniformly; Alice m measures sharply.  For the Alice at
position j,

    <A_j^x B^y> = -v_j^x . (K_j K_{j-1} ... K_1) w^y

with K_q = F_q I + (1 - F_q)/k T_q for q < j, K_j = G_j I for j < m, and
K_m = I.  T_q is the sum of outer products of position q's settings.
"""
from dataclasses import dataclass, field

import numpy as np

from ._validation import OPTIMALITY_TOL, unit_vectors
from .errors import InvalidParamsError, InvalidPositionError, InvalidSettingsError


@dataclass(frozen=True)
class WeakParams:
    G: float
    F: float

    def __post_init__(self):
        if not (0.0 <= self.G <= 1.0 and 0.0 <= self.F <= 1.0):
            raise InvalidParamsError(f"G and F must lie in [0, 1], got G={self.G}, F={self.F}")
        if abs(self.G * self.G + self.F * self.F - 1.0) > OPTIMALITY_TOL:
            raise InvalidParamsError(f"weak measurement is not optimal: G^2 + F^2 = {self.G**2 + self.F**2!r}")

    @classmethod
    def from_precision(cls, G):
        G = float(G)
        return cls(G, float(np.sqrt(max(0.0, 1.0 - G * G))))

    @classmethod
    def from_quality(cls, F):
        F = float(F)
        return cls(float(np.sqrt(max(0.0, 1.0 - F * F))), F)


SHARP = WeakParams(1.0, 0.0)


@dataclass(frozen=True, eq=False)
class BranchChain:
    """Weak-measurement parameters and settings of the m Alices on a branch.

    ``params[m-1]`` is kept for uniformity but never used: the last Alice
    always measures sharply.
    """

    params: tuple
    settings: tuple
    _T: tuple = field(init=False, repr=False)

    def __post_init__(self):
        params = tuple(self.params)
        settings = tuple(unit_vectors(s, f"settings[{q}]") for q, s in enumerate(self.settings))
        if len(params) != len(settings) or not params:
            raise InvalidSettingsError(f"got {len(params)} parameter sets for {len(settings)} positions")
        if any(not isinstance(p, WeakParams) for p in params):
            raise InvalidParamsError("params must be WeakParams instances")
        ks = {len(s) for s in settings}
        if len(ks) != 1:
            raise InvalidSettingsError(f"all positions need the same number of settings, got {sorted(ks)}")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "settings", settings)
        object.__setattr__(self, "_T", tuple(measurement_matrix(s) for s in settings))

    @classmethod
    def uniform(cls, m, vectors, params):
        """Chain of m identical Alices sharing ``vectors`` and ``params``."""
        return cls((params,) * m, (vectors,) * m)

    @property
    def m(self):
        return len(self.params)

    @property
    def k(self):
        return len(self.settings[0])

    def T(self, q):
        """Measurement matrix of the Alice at 1-based position q."""
        return self._T[q - 1]


def measurement_matrix(vectors):
    """T = sum_l v^l (v^l)^T for unit vectors v^l."""
    V = unit_vectors(vectors, "vectors")
    return V.T @ V


def k_factor(q, j, m, params, k, T):
    if not 1 <= q <= j <= m:
        raise InvalidPositionError(f"need 1 <= q <= j <= m, got q={q}, j={j}, m={m}")
    if q == j:
        return np.eye(3) if j == m else params.G * np.eye(3)
    return params.F * np.eye(3) + ((1.0 - params.F) / k) * np.asarray(T)


def propagator(chain, j):
    """Ordered product K_j K_{j-1} ... K_1 for the Alice at position j."""
    m = chain.m
    if not 1 <= j <= m:
        raise InvalidPositionError(f"picked position must lie in [1, {m}], got {j}")
    P = np.eye(3)
    for q in range(j, 0, -1):
        P = P @ k_factor(q, j, m, chain.params[q - 1], chain.k, chain.T(q))
    return P


def branch_correlator(chain, j, bob_vectors):
    """k x k table of <A_j^x B^y>, row x and column y (0-based storage)."""
    W = unit_vectors(bob_vectors, "bob vectors")
    if len(W) != chain.k:
        raise InvalidSettingsError(f"bob has {len(W)} settings, branch has {chain.k}")
    P = propagator(chain, j)
    return -(chain.settings[j - 1] @ P) @ W.T
