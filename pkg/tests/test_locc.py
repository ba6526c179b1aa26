import itertools

import numpy as np
import pytest

from pseudolab import linalg as L
from pseudolab import locc as C
from pseudolab.resource import KeyedEnsemble

PHI = L.ket_to_dm(L.bell_state())


def test_empty_circuit_is_identity():
    st = L.BipartiteState(PHI, 2, 2)
    assert np.allclose(C.apply_locc(C.LoccCircuit(1, 1, [([], [])]), st).mat, PHI)


def test_empty_circuit_pads_ancillas():
    st = L.BipartiteState(PHI, 2, 2)
    out = C.apply_locc(C.LoccCircuit(1, 1, [([], [])], t_A=1), st)
    assert out.dims == (4, 2)
    expected = L.permute_subsystems(np.kron(PHI, np.diag([1.0, 0.0])), (2, 2, 2), [0, 2, 1])
    assert np.allclose(out.mat, expected)


def test_local_unitary():
    rng = np.random.default_rng(0)
    rho = L.rand_density_matrix(4, rng)
    circ = C.LoccCircuit(1, 1, [([("h", "A0"), ("s", "A0")], [])])
    U = np.diag([1, 1j]) @ np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    UI = np.kron(U, np.eye(2))
    assert np.allclose(C.apply_locc(circ, L.BipartiteState(rho, 2, 2)).mat, UI @ rho @ UI.conj().T)


def test_measure_and_correct_on_bell_pair():
    # A copies its qubit into C, C is measured, B flips conditioned on the outcome
    circ = C.LoccCircuit(1, 1, [([("cx", "A0", "C0")], [("cx", "C0", "B0")])])
    st = L.BipartiteState(PHI, 2, 2)
    out = C.apply_locc(circ, st).mat
    assert np.allclose(out, np.diag([0.5, 0, 0.5, 0]))
    branches = C.apply_locc_branches(circ, st)
    assert sorted(p for p, _, _ in branches) == pytest.approx([0.5, 0.5])
    assert np.allclose(sum(p * m for p, _, m in branches), out)


def test_locality_and_budget_enforced():
    with pytest.raises(C.LocalityError):
        C.LoccCircuit(1, 1, [([("x", "B0")], [])])
    with pytest.raises(C.LocalityError):
        C.LoccCircuit(1, 1, [([], [("cx", "A0", "B0")])])
    with pytest.raises(ValueError, match="budget"):
        C.LoccCircuit(1, 1, [([("x", "A0")] * 5, [])], gate_budget=5)


def test_dimension_mismatch():
    with pytest.raises(L.DimensionError):
        C.apply_locc(C.LoccCircuit(2, 1, [([], [])]), L.BipartiteState(PHI, 2, 2))


def test_identity_distillation_of_bell_state():
    fam = KeyedEnsemble(0, {"": L.bell_state()}, (2, 2))
    cert = C.DistillationCertificate(fam, C.LoccCircuit(1, 1, [([], [])]), 1, 1e-12)
    worst, ok = C.distillation_deficit(cert)
    assert worst == pytest.approx(0, abs=1e-12) and ok and cert.valid


def test_separable_products_cannot_be_distilled():
    # every 1-round circuit with one gate per side on products stays at fidelity <= 1/2
    prods = {}
    for i, (a, b) in enumerate(itertools.product(range(2), repeat=2)):
        prods[format(i, "02b")] = np.kron(np.eye(2)[a], np.eye(2)[b]).astype(complex)
    fam = KeyedEnsemble(2, prods, (2, 2))
    menu_a, menu_b = C.local_gate_menu("A", 1), C.local_gate_menu("B", 1)
    for ga in menu_a:
        for gb in menu_b:
            cert = C.DistillationCertificate(fam, C.LoccCircuit(1, 1, [([ga], [gb])]), 1, 0.5)
            worst, _ = C.distillation_deficit(cert)
            assert worst >= 0.5 - 1e-12


def test_keyed_correction_and_cost():
    fam = C.pauli_keyed_bell_family(1)
    cert = C.DistillationCertificate(fam, C.pauli_correction_circuit(1), 1, 1e-9)
    worst, ok = C.distillation_deficit(cert)
    assert ok and len(cert.per_key_deficit) == 4
    gates = [C.Gate("z", ["A0"], key_controls=[1]), C.Gate("x", ["A0"], key_controls=[0])]
    worst, ok, _ = C.cost_deficit(fam, C.KeyedLoccMap(C.LoccCircuit(1, 1, [(gates, [])]), 2), 1, 1e-9)
    assert ok and worst <= 1e-12


def test_zero_cost_product_target():
    fam = KeyedEnsemble(0, {"": np.array([1, 0, 0, 0], dtype=complex)}, (2, 2))
    worst, ok, _ = C.cost_deficit(fam, C.LoccCircuit(0, 0, [([], [])], t_A=1, t_B=1), 0, 1e-12)
    assert ok and worst == pytest.approx(0, abs=1e-14)


def test_output_pair_designation_checked():
    fam = C.pauli_keyed_bell_family(1)
    cert = C.DistillationCertificate(fam, C.pauli_correction_circuit(1), 1, 1e-9, [("B0", "A0")])
    with pytest.raises(ValueError):
        C.distillation_deficit(cert)


def test_choi_matrix_is_psd_with_unit_partial_trace():
    rng = np.random.default_rng(1)
    for _ in range(5):
        circ = C.random_toy_circuit(rng)
        J = C.choi_matrix(circ)
        assert np.linalg.eigvalsh(J)[0] >= -1e-10
        # tracing the output leaves the identity on the input
        assert np.allclose(L.partial_trace(J, (4, 4), [0]), np.eye(4), atol=1e-10)


def test_reset_gate():
    circ = C.LoccCircuit(1, 1, [([C.Gate("reset", ["A0"])], [])])
    out = C.apply_locc(circ, L.BipartiteState(PHI, 2, 2)).mat
    assert np.allclose(out, np.kron(np.diag([1.0, 0.0]), np.eye(2) / 2))


def test_unique_unitaries_counts_single_qubit_clifford_group():
    menu = [C.Gate("h", ["A0"]), C.Gate("s", ["A0"])]
    levels = C.unique_local_unitaries(menu, ["A0"], 12)
    # H and S generate the 24-element single-qubit Clifford group modulo phase
    assert len(levels[-1]) == 24


def test_locked_demo_two_pairs():
    rep = C.locked_entanglement_demo(2, max_gates=2)
    assert rep.passed
    assert len(rep.keys) == 16
    assert "not all LOCC maps" in rep.scope
