import numpy as np
import pytest
from conftest import random_unit
from hypothesis import given, settings
from hypothesis import strategies as st

from starnet.correlator import (
    SHARP,
    BranchChain,
    WeakParams,
    branch_correlator,
    k_factor,
    measurement_matrix,
    propagator,
)
from starnet.errors import InvalidParamsError, InvalidPositionError, InvalidSettingsError
from starnet.settings import gchsh_settings, vertesi_settings


@pytest.mark.parametrize("k", range(2, 9))
def test_T_for_gchsh(k):
    np.testing.assert_allclose(measurement_matrix(gchsh_settings(k).alice), np.diag([k / 2, 0, k / 2]), atol=1e-13)


def test_T_for_vertesi_ntilde2():
    np.testing.assert_allclose(measurement_matrix(vertesi_settings(2).alice), np.diag([1.5, 1.5, 0]), atol=1e-15)


def test_T_for_vertesi_ntilde3_isotropic():
    np.testing.assert_allclose(measurement_matrix(vertesi_settings(3).alice), 2 * np.eye(3), atol=1e-14)


def test_T_single_vector():
    np.testing.assert_array_equal(measurement_matrix([(1, 0, 0)]), np.diag([1.0, 0, 0]))


def test_T_invariants(rng):
    for k in (1, 3, 7, 465):
        T = measurement_matrix(random_unit(rng, k))
        np.testing.assert_allclose(T, T.T, atol=1e-12)
        assert np.linalg.eigvalsh(T).min() > -1e-12
        assert np.trace(T) == pytest.approx(k, abs=1e-9)


def test_measurement_matrix_rejects_non_unit():
    with pytest.raises(InvalidSettingsError):
        measurement_matrix([(1, 1, 0)])


def test_k_factor_cases():
    p = WeakParams.from_precision(0.6)
    T = np.diag([1.0, 2.0, 0.0])
    np.testing.assert_array_equal(k_factor(3, 3, 3, p, 3, T), np.eye(3))
    np.testing.assert_allclose(k_factor(2, 2, 3, p, 3, T), 0.6 * np.eye(3))
    np.testing.assert_array_equal(k_factor(1, 1, 2, WeakParams(0.0, 1.0), 3, T), np.zeros((3, 3)))
    np.testing.assert_array_equal(k_factor(1, 2, 2, WeakParams(0.0, 1.0), 3, T), np.eye(3))
    np.testing.assert_allclose(k_factor(1, 2, 2, p, 3, T), 0.8 * np.eye(3) + (0.2 / 3) * T)


@pytest.mark.parametrize("q,j,m", [(2, 1, 2), (0, 1, 2), (1, 3, 2)])
def test_k_factor_rejects(q, j, m):
    with pytest.raises(InvalidPositionError):
        k_factor(q, j, m, SHARP, 2, np.eye(3))


def test_weak_params():
    assert WeakParams.from_precision(0.6).F == pytest.approx(0.8)
    assert WeakParams.from_quality(0.8).G == pytest.approx(0.6)
    with pytest.raises(InvalidParamsError):
        WeakParams(0.5, 0.5)
    with pytest.raises(InvalidParamsError):
        WeakParams(1.1, 0.0)


def test_chain_validation(rng):
    V = random_unit(rng, 3)
    with pytest.raises(InvalidSettingsError):
        BranchChain((SHARP,), (V, V))
    with pytest.raises(InvalidSettingsError):
        BranchChain((SHARP, SHARP), (V, random_unit(rng, 2)))
    with pytest.raises(InvalidParamsError):
        BranchChain((0.5,), (V,))


def test_m2_j1_is_G_times_singlet(rng):
    V, W = random_unit(rng, 3), random_unit(rng, 3)
    chain = BranchChain.uniform(2, V, WeakParams.from_precision(0.6))
    np.testing.assert_allclose(branch_correlator(chain, 1, W), -0.6 * V @ W.T, atol=1e-15)


def test_m2_j2_formula(rng):
    V, W = random_unit(rng, 4), random_unit(rng, 4)
    p = WeakParams.from_precision(0.3)
    chain = BranchChain.uniform(2, V, p)
    K = p.F * np.eye(3) + (1 - p.F) / 4 * (V.T @ V)
    np.testing.assert_allclose(branch_correlator(chain, 2, W), -V @ K @ W.T, atol=1e-15)


def test_single_sharp_alice(rng):
    V, W = random_unit(rng, 2), random_unit(rng, 2)
    chain = BranchChain.uniform(1, V, SHARP)
    np.testing.assert_allclose(branch_correlator(chain, 1, W), -V @ W.T, atol=1e-15)


def test_propagator_order():
    # K_2 K_1 with distinct T_q: order matters for non-commuting T
    Va = np.array([(1.0, 0, 0), (0, 1.0, 0)])
    Vb = np.array([(1.0, 0, 0), (np.sqrt(0.5), 0, np.sqrt(0.5))])
    p1, p2 = WeakParams.from_precision(0.7), WeakParams.from_precision(0.4)
    chain = BranchChain((p1, p2, SHARP), (Va, Vb, Va))
    K1 = p1.F * np.eye(3) + (1 - p1.F) / 2 * (Va.T @ Va)
    K2 = p2.F * np.eye(3) + (1 - p2.F) / 2 * (Vb.T @ Vb)
    np.testing.assert_allclose(propagator(chain, 3), K2 @ K1, atol=1e-15)
    np.testing.assert_allclose(propagator(chain, 2), 0.4 * K1, atol=1e-15)


def test_branch_correlator_rejects(rng):
    chain = BranchChain.uniform(2, random_unit(rng, 3), SHARP)
    with pytest.raises(InvalidSettingsError):
        branch_correlator(chain, 1, random_unit(rng, 2))
    with pytest.raises(InvalidPositionError):
        branch_correlator(chain, 3, random_unit(rng, 3))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 8), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_entries_bounded(k, m, seed):
    rng = np.random.default_rng(seed)
    params = tuple(WeakParams.from_quality(f) for f in rng.uniform(0, 1, m))
    chain = BranchChain(params, tuple(random_unit(rng, k) for _ in range(m)))
    W = random_unit(rng, k)
    for j in range(1, m + 1):
        assert np.abs(branch_correlator(chain, j, W)).max() <= 1 + 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 1), st.integers(0, 2**32 - 1))
def test_first_position_linear_in_G(G, seed):
    rng = np.random.default_rng(seed)
    V, W = random_unit(rng, 3), random_unit(rng, 3)
    weak = BranchChain.uniform(2, V, WeakParams.from_precision(G))
    sharp_first = BranchChain.uniform(2, V, SHARP)
    np.testing.assert_allclose(branch_correlator(weak, 1, W), G * branch_correlator(sharp_first, 1, W), atol=1e-15)


@pytest.mark.parametrize("k", range(2, 9))
@pytest.mark.parametrize("m", [1, 2, 3])
def test_gchsh_closed_form(k, m):
    s = gchsh_settings(k)
    G = 0.37
    p = WeakParams.from_precision(G)
    chain = BranchChain.uniform(m, s.alice, p)
    x = np.arange(1, k + 1)[:, None]
    y = np.arange(1, k + 1)[None, :]
    angle = -np.cos(np.pi * (2 * y - 2 * x + 1) / (2 * k))
    for j in range(1, m + 1):
        factor = (1.0 if j == m else G) * ((1 + p.F) / 2) ** (j - 1)
        np.testing.assert_allclose(branch_correlator(chain, j, s.bob), angle * factor, atol=1e-12)
