import numpy as np

from .errors import InvalidSettingsError

UNIT_NORM_TOL = 1e-9
OPTIMALITY_TOL = 1e-12


def unit_vectors(vectors, name="vectors"):
    """Return ``vectors`` as a read-only (k, 3) float array of unit rows."""
    arr = np.array(vectors, dtype=np.float64)
    if arr.ndim == 1 and arr.shape == (3,):
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] == 0:
        raise InvalidSettingsError(f"{name} must be a non-empty list of 3-vectors, got shape {arr.shape}")
    norms = np.linalg.norm(arr, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1.0) > UNIT_NORM_TOL)
    if bad.size:
        i = int(bad[0])
        raise InvalidSettingsError(f"{name}[{i}] has norm {norms[i]!r}, expected 1")
    arr.setflags(write=False)
    return arr


def unit_vector(v, name="vector"):
    return unit_vectors(np.asarray(v, dtype=np.float64).reshape(1, 3), name)[0]
