"""Brute-force density-matrix simulation of one branch.

Deliberately naive: explicit 2x2 / 4x4 complex matrices, unnormalized
states, and nested enumeration over every outcome and intermediate
setting.  It shares no algebra with :mod:`starnet.correlator` and exists
to check it.
"""
import numpy as np

from ._validation import unit_vector
from .errors import InvalidPositionError, InvalidSettingsError, OracleTooLargeError

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

MAX_INTERMEDIATE = 6
MAX_LEAVES = 1 << 20

PSD_TOL = -1e-10


def bloch_operator(v):
    """v . sigma."""
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z


def projector(v, outcome):
    return 0.5 * (I2 + outcome * bloch_operator(v))


def singlet():
    rho = np.kron(I2, I2).astype(complex)
    for s in PAULI:
        rho -= np.kron(s, s)
    return rho / 4.0


def partial_trace_second(rho4):
    return np.einsum("ijkj->ik", rho4.reshape(2, 2, 2, 2))


def bob_reduce(w, b):
    """Alice's unnormalized state after Bob obtains outcome b along w."""
    w = unit_vector(w, "bob vector")
    Mb = np.kron(I2, projector(w, b))
    return partial_trace_second(Mb @ singlet() @ Mb.conj().T)


def weak_update(rho, v, a, params):
    Mp = projector(v, +1)
    Mm = projector(v, -1)
    G, F = params.G, params.F
    return (
        0.5 * F * rho
        + 0.5 * (1 + a * G - F) * (Mp @ rho @ Mp.conj().T)
        + 0.5 * (1 - a * G - F) * (Mm @ rho @ Mm.conj().T)
    )


def sharp_update(rho, v, a):
    Ma = projector(v, a)
    return Ma @ rho @ Ma.conj().T


def _check_enumerable(chain, j):
    if not 1 <= j <= chain.m:
        raise InvalidPositionError(f"picked position must lie in [1, {chain.m}], got {j}")
    depth = j - 1
    if depth > MAX_INTERMEDIATE or (2 * chain.k) ** depth > MAX_LEAVES:
        raise OracleTooLargeError(f"{(2 * chain.k) ** depth} intermediate branches at depth {depth}")


def _intermediate_states(chain, j, rho0):
    """Yield every unnormalized state after Alices 1..j-1, in fixed order."""
    stack = [(0, rho0)]
    # depth-first, explicit stack keeps the visiting order deterministic
    while stack:
        q, rho = stack.pop()
        if q == j - 1:
            yield rho
            continue
        vectors = chain.settings[q]
        params = chain.params[q]
        children = []
        for x in range(chain.k):
            for a in (+1, -1):
                children.append((q + 1, weak_update(rho, vectors[x], a, params)))
        stack.extend(reversed(children))


def _picked_expectation(chain, j, rho, v):
    """sum over a_j of a_j tr(rho_j)."""
    total = 0.0
    for a in (+1, -1):
        if j == chain.m:
            out = sharp_update(rho, v, a)
        else:
            out = weak_update(rho, v, a, chain.params[j - 1])
        total += a * np.trace(out).real
    return total


def oracle_correlator(chain, j, x, y, bob_vectors):
    """<A_j^x B^y> by full enumeration; x and y are 1-based."""
    _check_enumerable(chain, j)
    if not (1 <= x <= chain.k and 1 <= y <= len(bob_vectors)):
        raise InvalidSettingsError(f"setting indices out of range: x={x}, y={y}")
    w = bob_vectors[y - 1]
    v = chain.settings[j - 1][x - 1]
    total = 0.0
    for b in (+1, -1):
        for rho in _intermediate_states(chain, j, bob_reduce(w, b)):
            total += b * _picked_expectation(chain, j, rho, v)
    return total / chain.k ** (j - 1)


def oracle_table(chain, j, bob_vectors):
    """All k x k oracle correlators, sharing the enumeration across x."""
    _check_enumerable(chain, j)
    k = chain.k
    if len(bob_vectors) != k:
        raise InvalidSettingsError(f"bob has {len(bob_vectors)} settings, branch has {k}")
    picked = chain.settings[j - 1]
    table = np.zeros((k, k))
    for y in range(k):
        for b in (+1, -1):
            for rho in _intermediate_states(chain, j, bob_reduce(bob_vectors[y], b)):
                for x in range(k):
                    table[x, y] += b * _picked_expectation(chain, j, rho, picked[x])
    return table / k ** (j - 1)


def branch_states(chain, w, b, depth):
    """All unnormalized states after Alices 1..depth (intermediate, weak) for Bob outcome b."""
    return list(_intermediate_states(chain, depth + 1, bob_reduce(w, b)))


def is_physical(rho, max_trace=1.0 + 1e-10):
    """Hermitian, PSD within tolerance, and trace in [0, max_trace]."""
    if not np.allclose(rho, rho.conj().T, atol=1e-12):
        return False
    if np.linalg.eigvalsh(rho).min() < PSD_TOL:
        return False
    tr = np.trace(rho)
    return abs(tr.imag) < 1e-12 and -1e-12 <= tr.real <= max_trace
