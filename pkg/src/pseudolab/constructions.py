"""Concrete keyed families used by the verification suite and the demos."""
from __future__ import annotations

import itertools

import numpy as np
from scipy.optimize import brentq

from . import linalg
from .epfi import EpfiPair, PurePePair
from .locc import bell_pairs, pauli_keyed_bell_family
from .resource import KeyedEnsemble, PseudoresourcePair, coherence_oracle


def _keys(key_len: int) -> list[str]:
    return ["".join(b) for b in itertools.product("01", repeat=key_len)]


def distribution_with_entropy(d: int, target: float) -> np.ndarray:
    """Mixture of a point mass and the uniform distribution with Shannon entropy ``target`` bits."""
    if not 0 <= target <= np.log2(d) + 1e-12:
        raise ValueError(f"entropy {target} outside [0, log2 {d}]")
    point = np.eye(d)[0]
    uniform = np.full(d, 1 / d)
    if target >= np.log2(d) - 1e-15:
        return uniform
    if target <= 0:
        return point
    t = brentq(lambda t: linalg.shannon_entropy((1 - t) * point + t * uniform) - target, 0.0, 1.0, xtol=1e-15)
    return (1 - t) * point + t * uniform


def coherence_pseudoresource(eta: float, rng: np.random.Generator, d: int = 16, key_len: int = 2,
                             kappa: float | None = None) -> PseudoresourcePair:
    """Incoherent mixed states against phase-keyed pure states of coherence at least ``eta``.

    Left states are random diagonal density matrices (zero coherence). Right
    states are ``sum_i sqrt(p_i) e^{i phi_k(i)} |i>`` where ``p`` is permuted
    per key and has entropy ``eta`` for the first key and a random value in
    ``[eta, log2 d]`` for the others, so the minimum gap is exactly ``eta``.
    """
    keys = _keys(key_len)
    left = {k: np.diag(rng.dirichlet(np.ones(d))) for k in keys}
    right = {}
    hmax = np.log2(d)
    for i, k in enumerate(keys):
        h = eta if i == 0 else rng.uniform(eta, hmax)
        p = rng.permutation(distribution_with_entropy(d, h))
        right[k] = np.sqrt(p) * np.exp(2j * np.pi * rng.random(d))
    oracle = coherence_oracle(d, np.log2(d) if kappa is None else kappa)
    return PseudoresourcePair(KeyedEnsemble(key_len, left, (d, 1)), KeyedEnsemble(key_len, right, (d, 1)),
                              oracle, eta)


def local_unitary_family(base: np.ndarray, dA: int, dB: int, rng: np.random.Generator, key_len: int) -> dict:
    return {k: np.kron(linalg.rand_unitary(dA, rng), linalg.rand_unitary(dB, rng)) @ base for k in _keys(key_len)}


def pure_pseudoentanglement(rng: np.random.Generator, n_qubits: int = 2, key_len: int = 2) -> PurePePair:
    """Products against maximally entangled states on ``n + n`` qubits, each keyed by local unitaries.

    The entanglement-entropy gap is exactly ``n``.
    """
    d = 2**n_qubits
    product = np.eye(d * d)[0]
    maximal = bell_pairs(n_qubits)
    left = KeyedEnsemble(key_len, local_unitary_family(product, d, d, rng, key_len), (d, d))
    right = KeyedEnsemble(key_len, local_unitary_family(maximal, d, d, rng, key_len), (d, d))
    return PurePePair(left, right, float(n_qubits))


def bell_vs_product_mixed(n_pairs: int = 3, key_len: int = 1, rng: np.random.Generator | None = None,
                          noise: float = 0.0):
    """Keyed ``n`` Bell pairs against keyed products on ``2^n x 2^n``, optionally with white noise."""
    rng = np.random.default_rng(0) if rng is None else rng
    d = 2**n_pairs
    ident = np.eye(d * d) / (d * d)

    def mix(psi):
        return (1 - noise) * linalg.ket_to_dm(psi) + noise * ident

    ent = local_unitary_family(bell_pairs(n_pairs), d, d, rng, key_len)
    prod = local_unitary_family(np.eye(d * d)[0], d, d, rng, key_len)
    return (KeyedEnsemble(key_len, {k: mix(v) for k, v in ent.items()}, (d, d)),
            KeyedEnsemble(key_len, {k: mix(v) for k, v in prod.items()}, (d, d)))


def pauli_separation_pair() -> EpfiPair:
    """Pauli-keyed Bell states against the maximally mixed two-qubit state.

    Every cross pair is at trace distance 3/4, while the key average of the
    Bell family is exactly ``I/4``.
    """
    fam = pauli_keyed_bell_family(1)
    ref = KeyedEnsemble(fam.key_len, {k: np.eye(4) / 4 for k in fam.keys}, fam.dims)
    return EpfiPair(fam, ref, 0.5)


def _ry_state(angle: float, phase: float) -> np.ndarray:
    return np.array([np.cos(angle / 2), np.exp(1j * phase) * np.sin(angle / 2)])


def qubit_epfi_pair(delta: float, rng: np.random.Generator, key_len: int = 1, noise: float = 0.0) -> EpfiPair:
    """Keyed qubit states with every cross pair at trace distance at least ``delta``.

    States are ``(1-p) |a><a| + p I/2`` with ``|a>`` on a common great circle,
    so a cross pair at polar angles ``a, b`` has distance
    ``(1-p) |sin((a-b)/2)|``. Left angles lie in ``[0, w]``, right angles in
    ``[g + w, g + 2w]`` with ``g`` chosen to reach ``delta``.
    """
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    if noise and delta > 1 - noise:
        raise ValueError(f"noise {noise} caps the distance at {1 - noise}")
    target = delta / (1 - noise)
    gap = 2 * np.arcsin(min(1.0, target))
    width = min(0.3, (np.pi - gap) / 2)
    phase = rng.uniform(0, 2 * np.pi)

    def state(angle):
        psi = _ry_state(angle, phase)
        return (1 - noise) * linalg.ket_to_dm(psi) + noise * np.eye(2) / 2 if noise else psi

    keys = _keys(key_len)
    left = {k: state(rng.uniform(0, width)) for k in keys}
    right = {k: state(gap + width + rng.uniform(0, width)) for k in keys}
    return EpfiPair(KeyedEnsemble(key_len, left, (2, 1)), KeyedEnsemble(key_len, right, (2, 1)), delta)
