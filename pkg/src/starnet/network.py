"""Star-network correlations built from per-branch correlator tables.

With one Alice picked per branch (the picking function j), the network
correlation for a structure matrix M is

    S_j = sum_p |I^p_j|^(1/n),   I^p_j = prod_i sum_x M[x, p] <A_{i j_i}^x B_i^p>,

the product form following from the factorization of the n-partite
correlator over independent branches.  Violation means S_j > C.
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement, product
from types import MappingProxyType

import numpy as np

from . import kernels
from .bell import StructureMatrix
from .correlator import BranchChain, WeakParams, propagator
from .errors import InvalidInputError, InvalidSettingsError
from .kernels import to_csc
from .settings import MeasurementSettings

DEFAULT_STEPS = 1001
REFINE_TOL = 1e-6
# S - C must exceed this (relative to max(1, C)) to count as a violation,
# so that exact ties such as the (2,2,3) crossing stay non-violating.
VIOLATION_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class NetworkConfig:
    """Shape, inequality, and settings of an (n, m, k) star network.

    All branches and positions share ``settings``.  ``g_overrides`` maps a
    1-based (branch, position) to a fixed precision factor; every other
    intermediate Alice uses the swept uniform G.
    """

    n: int
    m: int
    inequality: StructureMatrix
    settings: MeasurementSettings
    g_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise InvalidInputError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        if self.inequality.k != self.settings.k:
            raise InvalidSettingsError(
                f"inequality has k={self.inequality.k} but settings have {self.settings.k} vectors"
            )
        overrides = {}
        for (i, q), g in dict(self.g_overrides).items():
            if not (1 <= i <= self.n and 1 <= q <= self.m):
                raise InvalidInputError(f"override position ({i}, {q}) outside the network")
            if not 0.0 <= g <= 1.0:
                raise InvalidInputError(f"G override must lie in [0, 1], got {g}")
            overrides[(int(i), int(q))] = float(g)
        object.__setattr__(self, "g_overrides", MappingProxyType(overrides))

    @cached_property
    def structure_csc(self):
        return to_csc(self.inequality.entries)

    @property
    def heterogeneous(self):
        return bool(self.g_overrides)

    @property
    def bound(self):
        return self.inequality.classical_bound

    def branch_chain(self, branch, G):
        params = tuple(
            WeakParams.from_precision(self.g_overrides.get((branch, q), G)) for q in range(1, self.m + 1)
        )
        return BranchChain(params, (self.settings.alice,) * self.m)

    def pickings(self):
        """Picking functions to evaluate; merged under branch permutation when uniform."""
        positions = range(1, self.m + 1)
        if self.heterogeneous:
            return list(product(positions, repeat=self.n))
        return list(combinations_with_replacement(positions, self.n))


def picking_label(picking):
    sep = "" if max(picking) < 10 else "-"
    return "S_" + sep.join(str(j) for j in picking)


def _check_tables(branch_tables, k=None):
    tables = [np.asarray(t, dtype=np.float64) for t in branch_tables]
    if not tables:
        raise InvalidInputError("need at least one branch table")
    k = k or tables[0].shape[0]
    for t in tables:
        if t.shape != (k, k):
            raise InvalidInputError(f"branch tables must be {k} x {k}, got {t.shape}")
    return tables


def branch_column_sums(M, table):
    """sum_x M[x, p] table[x, p] for every p (0-based output)."""
    return np.einsum("xp,xp->p", M.entries, table)


def i_p(M, branch_tables, p):
    """I^p as the product over branches of the M-weighted column sums; p is 1-based."""
    tables = _check_tables(branch_tables, M.k)
    if not 1 <= p <= M.k:
        raise InvalidInputError(f"setting p must lie in [1, {M.k}], got {p}")
    col = M.entries[:, p - 1]
    return float(np.prod([col @ t[:, p - 1] for t in tables]))


def multipartite_correlator(branch_tables, x, y):
    """prod_i table_i[x_i, y] with 1-based settings."""
    tables = _check_tables(branch_tables)
    if len(x) != len(tables):
        raise InvalidInputError(f"need one Alice setting per branch, got {len(x)} for {len(tables)}")
    k = tables[0].shape[0]
    if not (all(1 <= xi <= k for xi in x) and 1 <= y <= k):
        raise InvalidInputError(f"setting indices out of range 1..{k}: x={x}, y={y}")
    return float(np.prod([t[xi - 1, y - 1] for t, xi in zip(tables, x)]))


def value_from_column_sums(column_sums):
    """S from the per-branch column sums (an n x k array)."""
    sums = np.asarray(column_sums, dtype=np.float64)
    n = sums.shape[0]
    return float(np.sum(np.abs(np.prod(sums, axis=0)) ** (1.0 / n)))


def network_value(M, branch_tables):
    tables = _check_tables(branch_tables, M.k)
    return value_from_column_sums([branch_column_sums(M, t) for t in tables])


def _fused_column_sums(config, chain, j):
    # sum_x M[x,p] * (-(v_x P) . w_p) without forming the k x k table
    U = config.settings.alice @ propagator(chain, j)
    return -kernels.column_sums_csc(*config.structure_csc, U, config.settings.bob)


def network_values_at(config, G, pickings=None):
    """S for each picking at uniform precision G; dict picking -> S."""
    pickings = config.pickings() if pickings is None else pickings
    chains = {}
    cache = {}
    out = {}
    for picking in pickings:
        if len(picking) != config.n or not all(1 <= j <= config.m for j in picking):
            raise InvalidInputError(f"invalid picking {picking} for n={config.n}, m={config.m}")
        rows = []
        for i, j in enumerate(picking, start=1):
            # branches differ only through overrides; share work otherwise
            key = (i if config.heterogeneous else 0, j)
            if key not in cache:
                if key[0] not in chains:
                    chains[key[0]] = config.branch_chain(max(key[0], 1), G)
                cache[key] = _fused_column_sums(config, chains[key[0]], j)
            rows.append(cache[key])
        out[tuple(picking)] = value_from_column_sums(rows)
    return out


def network_S(config, G, picking):
    return network_values_at(config, G, [tuple(picking)])[tuple(picking)]


@dataclass(frozen=True, eq=False)
class SweepReport:
    config: NetworkConfig
    g_grid: np.ndarray
    values: dict
    bound: float
    windows: dict
    simultaneous: list

    def labels(self):
        return [picking_label(p) for p in self.values]


def _violates(S, bound):
    return S - bound > VIOLATION_RTOL * max(1.0, bound)


def _bisect(pred, inside, outside, tol):
    """Boundary between a point where pred holds and one where it does not."""
    while abs(inside - outside) > tol:
        mid = 0.5 * (inside + outside)
        if pred(mid):
            inside = mid
        else:
            outside = mid
    return 0.5 * (inside + outside)


def _intervals(grid, mask, pred, tol):
    out = []
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return out
    runs = np.split(idx, np.flatnonzero(np.diff(idx) > 1) + 1)
    for run in runs:
        a, b = int(run[0]), int(run[-1])
        lo = grid[a] if a == 0 else _bisect(pred, grid[a], grid[a - 1], tol)
        hi = grid[b] if b == len(grid) - 1 else _bisect(pred, grid[b], grid[b + 1], tol)
        out.append((float(lo), float(hi)))
    return out


def violation_window(report, tol=REFINE_TOL):
    """Maximal G-intervals on which every picking violates simultaneously."""
    config, bound = report.config, report.bound
    pickings = list(report.values)
    stacked = np.vstack([report.values[p] for p in pickings])
    mask = np.array([_violates(s, bound) for s in stacked.min(axis=0)])

    def pred(G):
        return _violates(min(network_values_at(config, G, pickings).values()), bound)

    return _intervals(report.g_grid, mask, pred, tol)


def sweep(config, g_min=0.0, g_max=1.0, steps=DEFAULT_STEPS, tol=REFINE_TOL):
    """Evaluate every picking on a uniform G grid and locate violation windows."""
    if not (0.0 <= g_min < g_max <= 1.0) or steps < 2:
        raise InvalidInputError(f"need 0 <= g_min < g_max <= 1 and steps >= 2, got {g_min}, {g_max}, {steps}")
    grid = np.linspace(g_min, g_max, steps)
    pickings = config.pickings()
    values = {p: np.empty(steps) for p in pickings}
    for n, G in enumerate(grid):
        for p, S in network_values_at(config, G, pickings).items():
            values[p][n] = S
    bound = config.bound

    windows = {}
    for p in pickings:
        mask = np.array([_violates(s, bound) for s in values[p]])
        windows[p] = _intervals(grid, mask, lambda G, p=p: _violates(network_S(config, G, p), bound), tol)

    report = SweepReport(config, grid, values, bound, windows, [])
    object.__setattr__(report, "simultaneous", violation_window(report, tol))
    return report
