from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmme.qlinalg import (
    IDENTITY,
    KET_0,
    KET_1,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BlochVector,
    DensityMatrix,
    anticommutator,
    bloch_of,
    commutator,
    dagger,
    is_hermitian,
    is_unitary,
    state_of,
    trace_distance,
    unitary_fidelity,
)

finite = st.floats(-5, 5, allow_nan=False)


def test_dagger_examples():
    assert np.array_equal(dagger(SIGMA_Y), SIGMA_Y)
    assert np.array_equal(dagger(IDENTITY), IDENTITY)
    assert np.array_equal(dagger(np.array([[0, 1], [0, 0]])), np.array([[0, 0], [1, 0]]))


def test_commutator_examples():
    assert np.allclose(commutator(SIGMA_X, SIGMA_Y), 2j * SIGMA_Z, atol=0)
    assert np.array_equal(commutator(SIGMA_Z, SIGMA_Z), np.zeros((2, 2)))
    assert np.allclose(commutator(SIGMA_Z, SIGMA_X), 2j * SIGMA_Y, atol=0)
    assert np.allclose(anticommutator(SIGMA_X, SIGMA_Y), 0)


def test_basis_convention():
    assert np.allclose(SIGMA_Z @ KET_1, KET_1)
    assert np.allclose(SIGMA_Z @ KET_0, -KET_0)


def test_constants_are_read_only():
    with pytest.raises(ValueError):
        SIGMA_X[0, 0] = 1


@pytest.mark.parametrize(
    "rho, expected",
    [
        (np.diag([1.0, 0.0]), (0, 0, 1)),
        (0.5 * np.ones((2, 2)), (1, 0, 0)),
        (0.5 * np.eye(2), (0, 0, 0)),
    ],
)
def test_bloch_examples(rho, expected):
    assert np.allclose(bloch_of(DensityMatrix(rho)).as_array(), expected, atol=1e-15)


def test_state_of_rejects_outside_ball():
    with pytest.raises(ValueError):
        state_of((1.0, 0.1, 0.0))
    state_of((1.0 + 5e-8, 0.0, 0.0))  # tolerated


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([0.6, 0.6]))
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(3) / 3)
    rho = DensityMatrix.from_ket([1, 1j])
    assert np.allclose(bloch_of(rho).as_array(), (0, 1, 0))
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 0


def random_hermitian(vals):
    a = np.array(vals[:4]) + 1j * np.array(vals[4:])
    m = a.reshape(2, 2)
    return m + dagger(m)


@settings(max_examples=100, deadline=None)
@given(st.lists(finite, min_size=8, max_size=8))
def test_hermitian_dagger_and_commutator_antisymmetry(vals):
    m = random_hermitian(vals)
    assert np.max(np.abs(dagger(m) - m)) <= 1e-14
    assert is_hermitian(m)
    n = random_hermitian(vals[::-1])
    assert np.max(np.abs(commutator(m, n) + commutator(n, m))) <= 1e-14


@settings(max_examples=200, deadline=None)
@given(
    st.floats(0, 1),
    st.floats(0, np.pi),
    st.floats(0, 2 * np.pi),
)
def test_bloch_round_trip(r, theta, phi):
    b = (r * np.sin(theta) * np.cos(phi), r * np.sin(theta) * np.sin(phi), r * np.cos(theta))
    back = bloch_of(state_of(b)).as_array()
    assert np.max(np.abs(back - b)) <= 1e-12


def test_bloch_vector_helpers():
    b = BlochVector(0.6, 0.0, 0.8)
    assert tuple(b) == (0.6, 0.0, 0.8)
    assert b.norm == pytest.approx(1.0)


def test_trace_distance_and_fidelity():
    up, down = np.diag([1.0, 0]), np.diag([0, 1.0])
    assert trace_distance(up, down) == pytest.approx(1.0)
    assert trace_distance(up, up) == 0.0
    u = np.exp(0.3j) * SIGMA_X
    assert is_unitary(u)
    assert unitary_fidelity(SIGMA_X, u) == pytest.approx(1.0)
    assert unitary_fidelity(SIGMA_X, SIGMA_Z) == pytest.approx(0.0)
