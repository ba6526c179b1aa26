"""
Entanglement locked behind a key
================================

Each key selects a Pauli ``P_k`` applied to Alice's half of a Bell pair. With
the key, Alice undoes ``P_k`` and recovers the Bell pair. Without it, the
state is the key average ``I/4``, and no circuit in an exhaustively enumerated
family gets fidelity above 1/2.
"""

import json

from pseudolab import linalg, locc

report = locc.locked_entanglement_demo(1)
print("with-key deficits:", {k: f"{v:.1e}" for k, v in report.with_key_deficits.items()})
print(f"key average vs I/4: {report.key_average_error:.1e}; partial transpose min eigenvalue "
      f"{report.key_average_ppt_min_eig:.3f}")
print(f"no-key best fidelity {report.no_key_best_fidelity:.6f} over {report.no_key_circuits} distinct circuits "
      f"({report.no_key_sequences} gate sequences)")
print("scope:", report.scope)

###############################################################################
# A one-round protocol on a Bell pair: Alice copies her qubit into the
# classical register, it is measured, and Bob flips his qubit on outcome 1.

circuit = locc.LoccCircuit(1, 1, [([("cx", "A0", "C0")], [("cx", "C0", "B0")])])
out = locc.apply_locc(circuit, linalg.BipartiteState(linalg.bell_state(), 2, 2))
print("output diagonal:", out.mat.diagonal().real.round(3))
for p, outcomes, _ in locc.apply_locc_branches(circuit, linalg.BipartiteState(linalg.bell_state(), 2, 2)):
    print(f"  branch {outcomes}: probability {p:.3f}")
print(json.dumps(circuit.to_dict()["rounds"][0]))
