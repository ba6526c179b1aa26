import math

import numpy as np
import pytest

from pseudolab import linalg as L
from pseudolab import resource as R


def test_coherence_closed_form():
    oracle = R.coherence_oracle(4)
    plus4 = np.full(4, 0.5, dtype=complex)
    b = R.relative_entropy_of_resource(L.ket_to_dm(plus4), oracle)
    assert b.lower == pytest.approx(2.0, abs=1e-12) and b.width == 0
    assert oracle.contains(b.witness)
    assert R.relative_entropy_of_resource(np.diag([0.1, 0.2, 0.3, 0.4]), oracle).upper == pytest.approx(0, abs=1e-12)


def test_coherence_oracle_rejects_small_diameter():
    with pytest.raises(ValueError):
        R.coherence_oracle(8, kappa=2.0)


def test_bell_bracket_contains_one():
    oracle = R.separability_oracle(2, 2)
    b = oracle.closest_free(L.ket_to_dm(L.bell_state()))
    assert b.contains(1.0, 1e-9)
    assert b.width <= 1e-6


def test_partially_entangled_pure_state_bracket():
    t = math.pi / 8
    psi = np.array([math.cos(t), 0, 0, math.sin(t)], dtype=complex)
    b = R.separability_oracle(2, 2).closest_free(L.ket_to_dm(psi))
    assert b.contains(0.6008760366928562, 1e-9)
    assert b.width <= 1e-4


def test_separable_mixture_has_near_zero_bracket():
    rng = np.random.default_rng(5)
    rho = sum(w * np.kron(L.rand_density_matrix(2, rng), L.rand_density_matrix(2, rng))
              for w in rng.dirichlet(np.ones(3)))
    b = R.separability_oracle(2, 2).closest_free(rho)
    assert b.lower == 0.0
    assert b.upper <= 1e-5


def test_werner_like_state_bracket():
    # p Phi + (1-p) I/4 with p = 0.8: E_R = 1 - h((1+3p)/4) for isotropic two-qubit states
    p = 0.8
    rho = p * L.ket_to_dm(L.bell_state()) + (1 - p) * np.eye(4) / 4
    f = (1 + 3 * p) / 4
    exact = 1 - (-f * math.log2(f) - (1 - f) * math.log2(1 - f))
    b = R.separability_oracle(2, 2).closest_free(rho)
    assert b.contains(exact, 1e-6)
    assert b.width <= 1e-3


def test_witness_is_a_valid_product_mixture():
    rng = np.random.default_rng(1)
    oracle = R.separability_oracle(2, 2)
    b = oracle.closest_free(L.rand_density_matrix(4, rng, rank=2))
    assert oracle.contains(b.witness)
    assert b.lower <= b.upper


def test_keyed_ensemble_validation_names_key():
    with pytest.raises(L.InvalidStateError, match="'1'"):
        R.KeyedEnsemble(1, {"0": np.eye(2) / 2, "1": np.diag([0.5, 0.49])}, (2, 1))
    with pytest.raises(ValueError):
        R.KeyedEnsemble(2, {"0": np.eye(2) / 2}, (2, 1))
    with pytest.raises(L.DimensionError):
        R.KeyedEnsemble(1, {"0": np.eye(2) / 2}, (4, 1))


def test_gap_from_brackets():
    left = {"0": R.Bracket(0.0, 0.1)}
    right = {"0": R.Bracket(2.0, 2.2), "1": R.Bracket(3.0, 3.0)}
    lo, hi = R.gap_from_brackets(left, right)
    assert lo == pytest.approx(1.9) and hi == pytest.approx(2.2)


def test_verify_resource_gap_statuses():
    d = 4
    left = R.KeyedEnsemble(1, {"0": np.eye(d) / d, "1": np.diag([0.4, 0.3, 0.2, 0.1])}, (d, 1))
    right = R.KeyedEnsemble(1, {"0": np.full(d, 0.5, dtype=complex),
                                "1": np.array([0.5, -0.5, 0.5j, 0.5])}, (d, 1))
    oracle = R.coherence_oracle(d)
    lo, rep = R.verify_resource_gap(R.PseudoresourcePair(left, right, oracle, 2.0))
    assert lo == pytest.approx(2.0) and rep.status == "pass"
    _, rep = R.verify_resource_gap(R.PseudoresourcePair(left, right, oracle, 2.5))
    assert rep.status == "fail"
