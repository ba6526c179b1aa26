"""
Bracketing the relative entropy of entanglement
===============================================

The separability oracle returns a certified interval. The upper end comes
from an explicit product-state mixture, the lower end from a dual bound over
the PPT relaxation and the hashing floor ``max(S_A, S_B) - S_AB``.
"""

import numpy as np

from pseudolab import linalg, separability_oracle

oracle = separability_oracle(2, 2)
phi = linalg.ket_to_dm(linalg.bell_state())
for p in (1.0, 0.8, 0.6, 1 / 3):
    rho = p * phi + (1 - p) * np.eye(4) / 4
    f = (1 + 3 * p) / 4
    exact = 1 + f * np.log2(f) + (1 - f) * np.log2(1 - f) if f < 1 else 1.0
    b = oracle.closest_free(rho)
    print(f"p={p:.3f}: bracket [{b.lower:.6f}, {b.upper:.6f}], closed form {max(exact, 0):.6f}")

rng = np.random.default_rng(0)
rho = linalg.rand_density_matrix(4, rng, rank=2)
b = oracle.closest_free(rho)
print(f"random rank-2 state: [{b.lower:.5f}, {b.upper:.5f}], witness is a product mixture: {oracle.contains(b.witness)}")
