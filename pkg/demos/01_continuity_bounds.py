"""
Continuity bounds on random states
==================================

Entropy and resource measures move continuously with trace distance. This
script samples random qubit pairs and compares the observed entropy gap with
two closed-form bounds: the ``2 D log d + min(-D log D, 1/2e)`` form and the
sharp ``D log(d-1) + h(D)`` form.
"""

import numpy as np

from pseudolab import bounds, linalg

rng = np.random.default_rng(7)

###############################################################################
# A pure qubit against a slightly mixed one is the tightest case for ``d = 2``.

rho, sigma = np.diag([1.0, 0.0]), np.diag([0.9, 0.1])
delta = linalg.trace_distance(rho, sigma)
gap = abs(linalg.von_neumann_entropy(rho) - linalg.von_neumann_entropy(sigma))
print(f"D = {delta:.3f}, |S(rho) - S(sigma)| = {gap:.4f}")
print(f"  2 D log d + min(-D log D, 1/2e) = {bounds.fannes_bound(delta, 2):.4f}")
print(f"  D log(d-1) + h(D)               = {bounds.fannes_audenaert_bound(delta, 2):.4f}")

###############################################################################
# Random Hilbert-Schmidt pairs rarely come this close, but some do.

worst = {"loose": 0, "sharp": 0}
for _ in range(4000):
    a, b = linalg.rand_density_matrix(2, rng), linalg.rand_density_matrix(2, rng)
    d = linalg.trace_distance(a, b)
    g = abs(linalg.von_neumann_entropy(a) - linalg.von_neumann_entropy(b))
    worst["loose"] += g > bounds.fannes_bound(d, 2) + 1e-9
    worst["sharp"] += g > bounds.fannes_audenaert_bound(d, 2) + 1e-9
print("violations in 4000 qubit pairs:", worst)

###############################################################################
# Fidelity and trace distance: ``F <= 1 - D^2`` with equality on pure states.

psi, phi = linalg.rand_pure_state(4, rng), linalg.rand_pure_state(4, rng)
F = linalg.fidelity(linalg.ket_to_dm(psi), linalg.ket_to_dm(phi))
D = linalg.trace_distance(linalg.ket_to_dm(psi), linalg.ket_to_dm(phi))
print(f"pure pair: F = {F:.6f}, 1 - D^2 = {1 - D**2:.6f}")

###############################################################################
# The Helstrom measurement attains ``(1 + D) / 2``.

povm, p = linalg.helstrom_measurement(a, b)
print(f"Helstrom success {p:.6f} = (1 + D)/2 = {(1 + linalg.trace_distance(a, b)) / 2:.6f}")
