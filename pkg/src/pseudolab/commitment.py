"""Canonical quantum commitments: commit, reveal, and the optimal opening attack.

Registers are ordered ``C_1 R_1 C_2 R_2 ... C_m R_m`` for ``m`` copies. The
commit circuit ``Q_b^k`` acts on one ``(C, R)`` pair, starting from ``|0>``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linalg
from .epfi import EpfiPair
from .linalg import tensor_power

MAX_QUBITS = 12
UNITARY_TOL = 1e-9


def all_keys(key_len: int) -> tuple[str, ...]:
    return tuple("".join(x) for x in itertools.product("01", repeat=key_len))


def unitary_from_state(psi: np.ndarray) -> np.ndarray:
    """A unitary whose first column is ``psi`` (phase-corrected Householder reflection)."""
    psi = np.asarray(psi, dtype=complex)
    d = len(psi)
    alpha = psi[0]
    phase = alpha / abs(alpha) if abs(alpha) > 1e-15 else 1.0
    w = psi - phase * np.eye(d)[0]
    nw = np.vdot(w, w).real
    if nw < 1e-30:
        return phase * np.eye(d, dtype=complex)
    R = np.eye(d, dtype=complex) - 2 * np.outer(w, w.conj()) / nw
    return phase * R


@dataclass
class CommitCircuitFamily:
    """Keyed circuits ``circuit(b, k)`` returning a unitary on ``C (x) R``.

    ``keys`` lists the admissible keys for bit 0 and bit 1; by default every
    bitstring of length ``key_len``.
    """
    key_len: int
    dC: int
    dR: int
    circuit: Callable[[int, str], np.ndarray]
    keys: tuple = None
    flags: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.keys is None:
            self.keys = (all_keys(self.key_len), all_keys(self.key_len))

    def unitary(self, b: int, k: str) -> np.ndarray:
        if b not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {b!r}")
        if k not in self.keys[b]:
            raise KeyError(f"key {k!r} is not valid for bit {b}")
        if (b, k) not in self._cache:
            U = np.asarray(self.circuit(b, k), dtype=complex)
            d = self.dC * self.dR
            if U.shape != (d, d):
                raise linalg.DimensionError(f"circuit has shape {U.shape}, expected ({d}, {d})")
            if np.abs(U.conj().T @ U - np.eye(d)).max() > UNITARY_TOL:
                raise ValueError(f"circuit for (b={b}, k={k!r}) is not unitary")
            self._cache[(b, k)] = U
        return self._cache[(b, k)]

    def single_copy_state(self, b: int, k: str) -> np.ndarray:
        return self.unitary(b, k)[:, 0]

    def check_size(self, m: int):
        if m < 1:
            raise ValueError("m must be at least 1")
        if m * math.log2(self.dC * self.dR) > MAX_QUBITS + 1e-12:
            raise ValueError(f"m={m} copies on dimension {self.dC * self.dR} exceed 2**{MAX_QUBITS}")


@dataclass
class CommitmentTranscript:
    b: int
    k: str
    m: int
    joint_state: np.ndarray
    committed_state: np.ndarray


@dataclass
class AttackResult:
    success_prob: float
    attack_unitary: np.ndarray
    achieved_overlap: float
    dZ: int = 1


def _copy_dims(scheme: CommitCircuitFamily, m: int) -> list[int]:
    return [scheme.dC, scheme.dR] * m


def committed_state(scheme: CommitCircuitFamily, joint_state: np.ndarray, m: int) -> np.ndarray:
    """Reduce an ``(C R)^m`` ket to the ``C^m`` registers."""
    dims = _copy_dims(scheme, m)
    psi = np.asarray(joint_state).reshape(dims)
    psi = psi.transpose(list(range(0, 2 * m, 2)) + list(range(1, 2 * m, 2)))
    X = psi.reshape(scheme.dC**m, scheme.dR**m)
    return X @ X.conj().T


def commit(scheme: CommitCircuitFamily, b: int, k: str, m: int) -> CommitmentTranscript:
    scheme.check_size(m)
    psi = tensor_power(scheme.single_copy_state(b, k), m)
    return CommitmentTranscript(b, k, m, psi, committed_state(scheme, psi, m))


def _infer_copies(scheme: CommitCircuitFamily, state: np.ndarray) -> int:
    d = scheme.dC * scheme.dR
    m = round(math.log(len(state)) / math.log(d))
    if d**m != len(state):
        raise linalg.DimensionError(f"state of length {len(state)} is not a power of {d}")
    return m


def reveal_verify(scheme: CommitCircuitFamily, transcript_state: np.ndarray, b: int, k: str) -> float:
    """Probability that the receiver, undoing ``Q_b^k`` on every copy, measures all zeros."""
    m = _infer_copies(scheme, transcript_state)
    honest = tensor_power(scheme.single_copy_state(b, k), m)
    return float(abs(np.vdot(honest, transcript_state)) ** 2)


def _split_CR(scheme, psi, m):
    """Ket on (C R)^m as a ``dC^m x dR^m`` matrix."""
    tmp = np.asarray(psi).reshape(_copy_dims(scheme, m))
    tmp = tmp.transpose(list(range(0, 2 * m, 2)) + list(range(1, 2 * m, 2)))
    return tmp.reshape(scheme.dC**m, scheme.dR**m)


def _merge_CR(scheme, X, m):
    tmp = X.reshape([scheme.dC] * m + [scheme.dR] * m)
    order = []
    for i in range(m):
        order += [i, m + i]
    return tmp.transpose(order).reshape(-1)


def apply_on_R(scheme: CommitCircuitFamily, psi: np.ndarray, U: np.ndarray, m: int) -> np.ndarray:
    """Apply ``I_C (x) U`` where ``U`` acts on all ``R`` registers (ordered ``R_1 ... R_m``)."""
    X = _split_CR(scheme, psi, m)
    return _merge_CR(scheme, X @ U.T, m)


def optimal_opening_attack(scheme: CommitCircuitFamily, k: str, k2: str, m: int) -> AttackResult:
    r"""Best unitary on the committer's registers turning a 0-commitment into a 1-opening.

    Writing both honest kets as ``dC^m x dR^m`` matrices ``X0, X1``, the
    overlap ``<psi_1| I (x) U |psi_0>`` equals ``Tr(X1^dagger X0 U^T)``; its
    modulus is maximized by the polar part of ``X1^dagger X0``, giving the
    squared fidelity of the committed states as success probability.
    """
    scheme.check_size(m)
    psi0 = tensor_power(scheme.single_copy_state(0, k), m)
    psi1 = tensor_power(scheme.single_copy_state(1, k2), m)
    X0, X1 = _split_CR(scheme, psi0, m), _split_CR(scheme, psi1, m)
    P, _, Qh = np.linalg.svd(X1.conj().T @ X0)
    # Tr(P S Qh U^T) is maximal at U^T = Qh^dagger P^dagger
    U = (Qh.conj().T @ P.conj().T).T
    rho0 = X0 @ X0.conj().T
    rho1 = X1 @ X1.conj().T
    success = linalg.fidelity(rho0, rho1)
    attacked = apply_on_R(scheme, psi0, U, m)
    achieved = float(abs(np.vdot(psi1, attacked)) ** 2)
    return AttackResult(success, U, achieved)


def purification(rho: np.ndarray, dR: int | None = None) -> np.ndarray:
    """Spectral purification ``sum_i sqrt(l_i) |v_i>_C |i>_R`` with eigenvalues in descending order.

    ``dR`` defaults to the rank (eigenvalue threshold ``1e-10``).
    """
    w, v = np.linalg.eigh(linalg.hermitian_part(rho))
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    rank = int(np.sum(w > linalg.SUPPORT_TOL))
    dR = rank if dR is None else dR
    if dR < rank:
        raise ValueError(f"dR={dR} is smaller than the rank {rank}")
    psi = np.zeros((len(w), dR), dtype=complex)
    for i in range(rank):
        psi[:, i] = np.sqrt(w[i]) * v[:, i]
    psi = psi.reshape(-1)
    return psi / np.linalg.norm(psi)


def build_from_epfi(pair: EpfiPair, m: int = 1) -> CommitCircuitFamily:
    """Commitment whose committed states are members of the EPFI ensembles.

    ``Q_0^k`` prepares a purification of ``left[k]`` and ``Q_1^k`` one of
    ``right[k]``, with ``R`` sized to the largest rank. The copy count ``m``
    is validated here and kept in ``scheme.flags`` for reference.
    """
    dC = pair.left.dim
    ranks = [int(np.sum(np.linalg.eigvalsh(e.density(k)) > linalg.SUPPORT_TOL))
             for e in (pair.left, pair.right) for k in e.keys]
    dR = max(ranks)
    ens = (pair.left, pair.right)
    unitaries = {}
    synthesized = False
    for b in (0, 1):
        for k in ens[b].keys:
            state = ens[b].states[k]
            if state.ndim == 1 and dR == 1:
                psi = state
            else:
                psi = purification(ens[b].density(k), dR)
                synthesized = True
            unitaries[(b, k)] = unitary_from_state(psi)
    if pair.left.key_len != pair.right.key_len:
        raise ValueError("both ensembles must use the same key length")
    flags = (f"copies={m}",) + (("purification-synthesized",) if synthesized else ())
    scheme = CommitCircuitFamily(pair.left.key_len, dC, dR, lambda b, k: unitaries[(b, k)],
                                 (tuple(pair.left.keys), tuple(pair.right.keys)), flags)
    scheme.check_size(m)
    return scheme


def statistical_hiding_of_scheme(scheme: CommitCircuitFamily, m: int) -> float:
    """Trace distance between the key-averaged committed states for ``b=0`` and ``b=1``."""
    scheme.check_size(m)
    avg = []
    for b in (0, 1):
        acc = sum(commit(scheme, b, k, m).committed_state for k in scheme.keys[b])
        avg.append(acc / len(scheme.keys[b]))
    return linalg.trace_distance(avg[0], avg[1])
