"""
Binding of a commitment built from pairwise-far states
======================================================

The committer holds the purifying register. Her best cheat is the Uhlmann
unitary, which succeeds with exactly the fidelity of the two committed
states. Sending more copies drives that fidelity down.
"""

import numpy as np

from pseudolab import bounds, commitment, constructions

rng = np.random.default_rng(3)
pair = constructions.qubit_epfi_pair(0.5, rng, key_len=2, noise=0.1)

for m in (1, 2, 3):
    scheme = commitment.build_from_epfi(pair, m)
    k0, k1 = scheme.keys[0][0], scheme.keys[1][0]
    tr = commitment.commit(scheme, 0, k0, m)
    honest = commitment.reveal_verify(scheme, tr.joint_state, 0, k0)
    res = commitment.optimal_opening_attack(scheme, k0, k1, m)
    cheated = commitment.apply_on_R(scheme, tr.joint_state, res.attack_unitary, m)
    bound = bounds.binding_fidelity_bound(bounds.copies_amplification(0.5, m))
    print(f"m={m}: honest accept {honest:.6f}, cheat success {res.success_prob:.4f} "
          f"(verified {commitment.reveal_verify(scheme, cheated, 1, k1):.4f}), bound {bound:.4f}, "
          f"hiding distance {commitment.statistical_hiding_of_scheme(scheme, m):.4f}")
