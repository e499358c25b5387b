import numpy as np
import pytest
from conftest import random_unit

from starnet.correlator import SHARP, BranchChain, WeakParams, branch_correlator
from starnet.errors import InvalidSettingsError, OracleTooLargeError
from starnet.oracle import (
    bloch_operator,
    bob_reduce,
    branch_states,
    is_physical,
    oracle_correlator,
    oracle_table,
    sharp_update,
    singlet,
    weak_update,
)
from starnet.settings import vertesi_settings


def test_singlet():
    rho = singlet()
    assert np.trace(rho).real == pytest.approx(1)
    np.testing.assert_allclose(rho @ rho, rho, atol=1e-15)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(rho)), [0, 0, 0, 1], atol=1e-15)


def test_singlet_anticorrelation(rng):
    for a, b in zip(random_unit(rng, 5), random_unit(rng, 5)):
        op = np.kron(bloch_operator(a), bloch_operator(b))
        assert np.trace(op @ singlet()).real == pytest.approx(-a @ b, abs=1e-14)


def test_bob_reduce(rng):
    np.testing.assert_allclose(bob_reduce((0, 0, 1), +1), np.diag([0, 0.5]), atol=1e-15)
    for w in random_unit(rng, 4):
        for b in (+1, -1):
            rho = bob_reduce(w, b)
            assert np.trace(rho).real == pytest.approx(0.5)
            bloch = [np.trace(rho @ bloch_operator(e)).real / np.trace(rho).real for e in np.eye(3)]
            np.testing.assert_allclose(bloch, -b * w, atol=1e-14)


def test_bob_reduce_rejects():
    with pytest.raises(InvalidSettingsError):
        bob_reduce((1, 1, 0), +1)


def _random_state(rng):
    A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = A @ A.conj().T
    return rho / np.trace(rho) * rng.uniform(0.2, 1.0)


def test_weak_update_limits(rng):
    rho = _random_state(rng)
    v = random_unit(rng, 1)[0]
    none = WeakParams(0.0, 1.0)
    np.testing.assert_allclose(weak_update(rho, v, +1, none) + weak_update(rho, v, -1, none), rho, atol=1e-15)
    for a in (+1, -1):
        np.testing.assert_allclose(weak_update(rho, v, a, SHARP), sharp_update(rho, v, a), atol=1e-15)


def test_weak_update_completeness_and_A3(rng):
    for _ in range(20):
        rho = _random_state(rng)
        v = random_unit(rng, 1)[0]
        p = WeakParams.from_quality(rng.uniform())
        plus, minus = weak_update(rho, v, +1, p), weak_update(rho, v, -1, p)
        assert np.trace(plus + minus).real == pytest.approx(np.trace(rho).real, abs=1e-14)
        signed = np.trace(plus).real - np.trace(minus).real
        assert signed == pytest.approx(p.G * np.trace(bloch_operator(v) @ rho).real, abs=1e-14)


def test_sharp_update(rng):
    rho = _random_state(rng)
    v = random_unit(rng, 1)[0]
    tr = np.trace(sharp_update(rho, v, +1) + sharp_update(rho, v, -1)).real
    assert tr == pytest.approx(np.trace(rho).real, abs=1e-14)
    np.testing.assert_allclose(sharp_update(np.eye(2) / 2, (0, 0, 1), +1), np.diag([0.5, 0]), atol=1e-15)
    once = sharp_update(rho, v, -1)
    np.testing.assert_allclose(sharp_update(once, v, -1), once, atol=1e-15)


def test_chain_states_physical_and_conserve_probability(rng):
    k, m = 3, 4
    params = tuple(WeakParams.from_quality(f) for f in rng.uniform(0, 1, m))
    chain = BranchChain(params, tuple(random_unit(rng, k) for _ in range(m)))
    w = random_unit(rng, 1)[0]
    for depth in range(m):
        states = branch_states(chain, w, +1, depth) + branch_states(chain, w, -1, depth)
        assert all(is_physical(s) for s in states)
        # each intermediate setting is chosen with probability 1/k
        total = sum(np.trace(s).real for s in states) / k**depth
        assert total == pytest.approx(1.0, abs=1e-12)


def test_m1_sharp(rng):
    V, W = random_unit(rng, 2), random_unit(rng, 2)
    chain = BranchChain.uniform(1, V, SHARP)
    for x in (1, 2):
        for y in (1, 2):
            assert oracle_correlator(chain, 1, x, y, W) == pytest.approx(-V[x - 1] @ W[y - 1], abs=1e-14)


def test_m2_j1_G06(rng):
    V, W = random_unit(rng, 3), random_unit(rng, 3)
    chain = BranchChain.uniform(2, V, WeakParams.from_precision(0.6))
    assert oracle_correlator(chain, 1, 2, 3, W) == pytest.approx(-0.6 * V[1] @ W[2], abs=1e-14)


def test_vertesi_ntilde2_matches_analytic():
    s = vertesi_settings(2)
    chain = BranchChain.uniform(2, s.alice, WeakParams.from_precision(0.77))
    for j in (1, 2):
        np.testing.assert_allclose(oracle_table(chain, j, s.bob), branch_correlator(chain, j, s.bob), atol=1e-10)


def test_single_entry_matches_table(rng):
    chain = BranchChain.uniform(3, random_unit(rng, 2), WeakParams.from_precision(0.5))
    W = random_unit(rng, 2)
    table = oracle_table(chain, 3, W)
    assert oracle_correlator(chain, 3, 2, 1, W) == pytest.approx(table[1, 0], abs=1e-15)


def test_values_bounded(rng):
    chain = BranchChain.uniform(3, random_unit(rng, 3), WeakParams.from_precision(0.9))
    W = random_unit(rng, 3)
    for j in (1, 2, 3):
        assert np.abs(oracle_table(chain, j, W)).max() <= 1 + 1e-12


def test_too_large(rng):
    chain = BranchChain.uniform(8, random_unit(rng, 2), WeakParams.from_precision(0.5))
    with pytest.raises(OracleTooLargeError):
        oracle_correlator(chain, 8, 1, 1, random_unit(rng, 2))
    big = BranchChain.uniform(4, random_unit(rng, 200), WeakParams.from_precision(0.5))
    with pytest.raises(OracleTooLargeError):
        oracle_table(big, 4, random_unit(rng, 200))


def test_deterministic(rng):
    chain = BranchChain.uniform(3, random_unit(rng, 3), WeakParams.from_precision(0.5))
    W = random_unit(rng, 3)
    assert np.array_equal(oracle_table(chain, 3, W), oracle_table(chain, 3, W))
