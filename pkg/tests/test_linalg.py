import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudolab import linalg as L

ZERO = np.array([1, 0], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)


def test_trace_distance_and_fidelity_closed_forms():
    rho, sigma = L.ket_to_dm(ZERO), L.ket_to_dm(PLUS)
    assert L.trace_distance(rho, sigma) == pytest.approx(0.7071067811865476, abs=1e-12)
    assert L.fidelity(rho, sigma) == pytest.approx(0.5, abs=1e-12)
    # (sqrt(.45) + sqrt(.05))^2 = 0.8
    assert L.fidelity(np.diag([0.5, 0.5]), np.diag([0.9, 0.1])) == pytest.approx(0.8, abs=1e-12)
    assert L.root_fidelity(np.diag([0.5, 0.5]), np.diag([0.9, 0.1])) == pytest.approx(math.sqrt(0.8), abs=1e-12)


def test_entropies():
    assert L.von_neumann_entropy(np.diag([0.5, 0.25, 0.25])) == pytest.approx(1.5, abs=1e-12)
    assert L.von_neumann_entropy(L.ket_to_dm(PLUS)) == pytest.approx(0.0, abs=1e-12)
    assert L.relative_entropy(np.diag([0.5, 0.5]), np.diag([0.9, 0.1])) == pytest.approx(0.7369655941662061, abs=1e-10)
    assert L.relative_entropy(np.diag([0.5, 0.5]), np.diag([1.0, 0.0])) == math.inf
    assert L.relative_entropy(np.diag([1.0, 0.0]), np.diag([1.0, 0.0])) == pytest.approx(0.0, abs=1e-12)


def test_entanglement_entropy_of_partially_entangled_state():
    t = math.pi / 8
    psi = np.array([math.cos(t), 0, 0, math.sin(t)], dtype=complex)
    assert L.entanglement_entropy(psi, (2, 2)) == pytest.approx(0.6008760366928562, abs=1e-10)
    rA = L.partial_trace(L.ket_to_dm(psi), (2, 2), 0)
    assert L.von_neumann_entropy(rA) == pytest.approx(0.6008760366928562, abs=1e-10)


def test_partial_trace_of_product_and_order():
    rng = np.random.default_rng(0)
    a, b, c = (L.rand_density_matrix(d, rng) for d in (2, 3, 2))
    full = L.tensor_product(a, b, c)
    assert np.allclose(L.partial_trace(full, (2, 3, 2), [1]), b)
    assert np.allclose(L.partial_trace(full, (2, 3, 2), [2, 0]), np.kron(c, a))


def test_partial_transpose_of_bell_state_has_negative_eigenvalue():
    phi = L.ket_to_dm(L.bell_state())
    assert np.linalg.eigvalsh(L.partial_transpose(phi, (2, 2)))[0] == pytest.approx(-0.5, abs=1e-12)


def test_permute_subsystems_swap():
    a, b = np.diag([1.0, 0.0]), np.diag([0.2, 0.3, 0.5])
    assert np.allclose(L.permute_subsystems(np.kron(a, b), (2, 3), [1, 0]), np.kron(b, a))


def test_helstrom_on_orthogonal_and_identical_states():
    povm, p = L.helstrom_measurement(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    assert p == pytest.approx(1.0)
    povm, p = L.helstrom_measurement(np.eye(2) / 2, np.eye(2) / 2)
    assert p == pytest.approx(0.5)
    povm, p = L.helstrom_measurement(L.ket_to_dm(ZERO), L.ket_to_dm(PLUS))
    assert p == pytest.approx(0.5 * (1 + 1 / math.sqrt(2)), abs=1e-12)


@pytest.mark.parametrize("bad, word", [
    (np.diag([0.49, 0.49]), "trace"),
    (np.array([[0.5, 0.1], [0.0, 0.5]]), "hermiticity"),
    (np.diag([1.2, -0.2]), "positiv"),
])
def test_validation_messages(bad, word):
    with pytest.raises(L.InvalidStateError, match=f"(?i){word}"):
        L.validate_density_matrix(bad)


def test_bipartite_state_dimension_mismatch():
    with pytest.raises(L.DimensionError):
        L.BipartiteState(np.eye(4) / 4, 2, 3)


def test_small_negative_eigenvalues_are_clamped():
    rho = np.diag([1.0 + 5e-11, -5e-11])
    assert L.von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-9)


def test_log2_frechet_derivative_matches_finite_difference():
    rng = np.random.default_rng(3)
    sigma = L.rand_density_matrix(3, rng)
    X = L.hermitian_part(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))

    def log2m(s):
        w, v = np.linalg.eigh(s)
        return v @ np.diag(np.log2(w)) @ v.conj().T

    h = 1e-6
    fd = (log2m(sigma + h * X) - log2m(sigma - h * X)) / (2 * h)
    assert np.allclose(L.log2_frechet_derivative(sigma, X), fd, atol=1e-6)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 4, 6]))
def test_metric_properties(seed, d):
    rng = np.random.default_rng(seed)
    a, b, c = (L.rand_density_matrix(d, rng) for _ in range(3))
    dab = L.trace_distance(a, b)
    assert 0 <= dab <= 1 + 1e-12
    assert dab == pytest.approx(L.trace_distance(b, a), abs=1e-12)
    assert dab <= L.trace_distance(a, c) + L.trace_distance(c, b) + 1e-12
    F = L.fidelity(a, b)
    assert 0 <= F <= 1 + 1e-12
    assert F == pytest.approx(L.fidelity(b, a), abs=1e-9)
    assert L.fidelity(a, a) == pytest.approx(1.0, abs=1e-9)
    assert L.relative_entropy(a, b) >= -1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_unitary_invariance_and_data_processing(seed):
    rng = np.random.default_rng(seed)
    d = 4
    a, b = L.rand_density_matrix(d, rng), L.rand_density_matrix(d, rng)
    U = L.rand_unitary(d, rng)
    Ua, Ub = U @ a @ U.conj().T, U @ b @ U.conj().T
    assert L.trace_distance(Ua, Ub) == pytest.approx(L.trace_distance(a, b), abs=1e-10)
    assert L.von_neumann_entropy(Ua) == pytest.approx(L.von_neumann_entropy(a), abs=1e-10)
    # partial trace is a channel: distance and relative entropy can only shrink
    ra, rb = L.partial_trace(a, (2, 2), 0), L.partial_trace(b, (2, 2), 0)
    assert L.trace_distance(ra, rb) <= L.trace_distance(a, b) + 1e-12
    assert L.relative_entropy(ra, rb) <= L.relative_entropy(a, b) + 1e-9
