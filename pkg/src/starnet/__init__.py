"""Star-network nonlocality sharing under sequential optimal weak measurements."""
from .bell import (
    SettingPair,
    StructureMatrix,
    bipartite_quantum_value,
    chsh_matrix,
    classical_bound_exhaustive,
    gchsh_matrix,
    pair_index,
    unpair_index,
    vertesi_matrix,
)
from .correlator import BranchChain, WeakParams, branch_correlator, k_factor, measurement_matrix
from .kernels import BACKEND
from .network import (
    NetworkConfig,
    SweepReport,
    i_p,
    multipartite_correlator,
    network_value,
    sweep,
    violation_window,
)
from .oracle import oracle_correlator
from .settings import (
    MeasurementSettings,
    circle_points,
    complete_vertesi_settings,
    gchsh_settings,
    vertesi_primary_vectors,
    vertesi_settings,
)

__version__ = "0.1.0"
