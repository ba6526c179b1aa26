"""Dense linear algebra for small quantum systems.

States are plain numpy arrays: kets are 1-D complex vectors, density matrices
are 2-D Hermitian arrays. Multipartite index order is "first subsystem major",
the same convention as ``np.kron``. All logarithms are base 2.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
import scipy.stats

HERMITIAN_TOL = 1e-10
EIG_TOL = 1e-10
TRACE_TOL = 1e-10
SUPPORT_TOL = 1e-10


class InvalidStateError(ValueError):
    """Raised when a matrix violates a density-matrix or pure-state invariant."""


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class BipartiteState:
    r'''A state on :math:`H_A \otimes H_B` with the A-major index convention.

    ``mat`` is always stored as a density matrix; pure inputs are converted.
    '''
    mat: np.ndarray
    dA: int
    dB: int

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        if mat.ndim == 1:
            mat = ket_to_dm(validate_pure_state(mat))
        if mat.shape != (self.dA * self.dB, self.dA * self.dB):
            raise DimensionError(f"matrix shape {mat.shape} does not match dA*dB={self.dA * self.dB}")
        object.__setattr__(self, "mat", validate_density_matrix(mat))

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dA, self.dB)


@dataclass(frozen=True)
class PovmPair:
    """Two-outcome measurement ``(E0, E1)`` with ``E0 + E1 = I``."""
    E0: np.ndarray
    E1: np.ndarray

    def __post_init__(self):
        d = self.E0.shape[0]
        if np.abs(self.E0 + self.E1 - np.eye(d)).max() > 1e-10:
            raise ValueError("POVM elements do not sum to identity")
        for E in (self.E0, self.E1):
            if np.linalg.eigvalsh(hermitian_part(E))[0] < -1e-10:
                raise ValueError("POVM element is not positive semidefinite")

    def success_probability(self, rho: np.ndarray, sigma: np.ndarray) -> float:
        """Equal-prior probability of guessing correctly: outcome 0 for ``rho``, 1 for ``sigma``."""
        return 0.5 * float(np.real(np.trace(self.E0 @ rho) + np.trace(self.E1 @ sigma)))


def hermitian_part(mat: np.ndarray) -> np.ndarray:
    return (mat + mat.conj().T) / 2


def validate_density_matrix(rho, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array or raise :class:`InvalidStateError`.

    Checks finiteness, squareness, Hermiticity (entrywise), the smallest
    eigenvalue and the trace, each within ``tol``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"density matrix must be square, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidStateError("density matrix has non-finite entries")
    herm_err = np.abs(rho - rho.conj().T).max()
    if herm_err > tol:
        raise InvalidStateError(f"hermiticity violated: max |M - M^dagger| = {herm_err:.3e}")
    tr = np.trace(rho).real
    if abs(tr - 1) > tol:
        raise InvalidStateError(f"trace = {tr:.12g}, expected 1")
    min_eig = np.linalg.eigvalsh(hermitian_part(rho))[0]
    if min_eig < -tol:
        raise InvalidStateError(f"positivity violated: minimum eigenvalue {min_eig:.3e}")
    return rho


def validate_pure_state(psi, tol: float = HERMITIAN_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise InvalidStateError(f"pure state must be a vector, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1) > tol:
        raise InvalidStateError(f"norm = {norm:.12g}, expected 1")
    return psi


def ket_to_dm(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def as_density_matrix(state) -> np.ndarray:
    """Accept a ket, a density matrix or a :class:`BipartiteState`."""
    if isinstance(state, BipartiteState):
        return state.mat
    state = np.asarray(state, dtype=complex)
    return ket_to_dm(state) if state.ndim == 1 else state


def basis_ket(index: int | str, d: int | None = None) -> np.ndarray:
    """``basis_ket(2, 4)`` or ``basis_ket('10')`` (a qubit bitstring)."""
    if isinstance(index, str):
        d = 2 ** len(index)
        index = int(index, 2) if index else 0
    ret = np.zeros(d, dtype=complex)
    ret[index] = 1
    return ret


def bell_state() -> np.ndarray:
    r"""The ket :math:`(|00\rangle + |11\rangle)/\sqrt{2}`."""
    return np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def max_entangled_state(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)


def tensor_product(*ops) -> np.ndarray:
    """Kronecker product of any number of vectors or matrices, first factor major."""
    if not ops:
        raise ValueError("tensor_product needs at least one operand")
    return functools.reduce(np.kron, [np.asarray(x) for x in ops])


def tensor_power(op: np.ndarray, n: int) -> np.ndarray:
    op = np.asarray(op)
    if n == 0:
        return np.ones((1, 1) if op.ndim == 2 else (1,), dtype=op.dtype)
    return functools.reduce(np.kron, [op] * n)


def partial_trace(rho: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    Parameters:
        rho (np.ndarray): density matrix (or any square operator) on ``prod(dims)``
        dims (sequence[int]): subsystem dimensions
        keep (int|sequence[int]): indices of the subsystems to keep, output in this order

    Returns:
        ret (np.ndarray): reduced operator
    """
    dims = [int(x) for x in dims]
    keep = [keep] if isinstance(keep, (int, np.integer)) else list(keep)
    n = len(dims)
    rho = np.asarray(rho)
    if rho.shape != (np.prod(dims), np.prod(dims)):
        raise DimensionError(f"operator shape {rho.shape} does not match dims {dims}")
    if len(set(keep)) != len(keep) or any(not 0 <= k < n for k in keep):
        raise ValueError(f"invalid subsystem selection {keep}")
    tmp = rho.reshape(dims + dims)
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out = [i for i in keep] + [i + n for i in keep]
    ret = np.einsum(tmp, row + col, out)
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    return ret.reshape(dk, dk)


def reduced_state(state: BipartiteState, side: str) -> np.ndarray:
    """Reduced density matrix on the kept ``side`` (``'A'`` or ``'B'``)."""
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return partial_trace(state.mat, [state.dA, state.dB], 0 if side == "A" else 1)


def partial_transpose(rho: np.ndarray, dims, sys: int = 1) -> np.ndarray:
    dims = list(dims)
    n = len(dims)
    tmp = np.asarray(rho).reshape(dims + dims)
    axes = list(range(2 * n))
    axes[sys], axes[sys + n] = axes[sys + n], axes[sys]
    return tmp.transpose(axes).reshape(rho.shape)


def permute_subsystems(rho: np.ndarray, dims, perm) -> np.ndarray:
    """Reorder subsystems of a ket or density matrix; ``perm[i]`` is the old index of new slot ``i``."""
    dims = list(dims)
    n = len(dims)
    rho = np.asarray(rho)
    if rho.ndim == 1:
        return rho.reshape(dims).transpose(perm).reshape(-1)
    tmp = rho.reshape(dims + dims).transpose(list(perm) + [p + n for p in perm])
    return tmp.reshape(rho.shape)


def eigh_psd(rho: np.ndarray):
    """Hermitian eigendecomposition with eigenvalues in ``[-EIG_TOL, 0]`` clamped to zero."""
    w, v = np.linalg.eigh(hermitian_part(np.asarray(rho)))
    w = np.where((w < 0) & (w >= -EIG_TOL), 0.0, w)
    return w, v


def sqrtm_psd(rho: np.ndarray) -> np.ndarray:
    w, v = eigh_psd(rho)
    if w[0] < 0:
        raise InvalidStateError(f"matrix square root of indefinite matrix (min eigenvalue {w[0]:.3e})")
    return (v * np.sqrt(w)) @ v.conj().T


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    r"""Half the trace norm of :math:`\rho - \sigma`."""
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    w = np.linalg.eigvalsh(hermitian_part(rho - sigma))
    return float(min(1.0, 0.5 * np.abs(w).sum()))


def root_fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    r""":math:`\|\sqrt{\rho}\sqrt{\sigma}\|_1`, computed from singular values."""
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    s = np.linalg.svd(sqrtm_psd(rho) @ sqrtm_psd(sigma), compute_uv=False)
    return float(min(1.0, s.sum()))


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    r"""Squared fidelity :math:`[\mathrm{Tr}\sqrt{\sqrt\rho\,\sigma\sqrt\rho}]^2`.

    For two pure states this is :math:`|\langle\psi|\phi\rangle|^2`.
    """
    return root_fidelity(rho, sigma) ** 2


def von_neumann_entropy(rho: np.ndarray) -> float:
    w, _ = eigh_psd(as_density_matrix(rho))
    w = w[w > 0]
    return float(max(0.0, -np.dot(w, np.log2(w))))


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(max(0.0, -np.dot(p, np.log2(p))))


def relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    r"""Quantum relative entropy :math:`D(\rho\|\sigma)` in bits.

    Returns ``inf`` when the support of ``rho`` is not contained in the support
    of ``sigma``; support is defined by the eigenvalue threshold ``SUPPORT_TOL``.
    """
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    wr, _ = eigh_psd(rho)
    ws, vs = eigh_psd(sigma)
    # diagonal of rho in the eigenbasis of sigma
    rho_diag = np.real(np.einsum("ij,jk,ki->i", vs.conj().T, rho, vs))
    in_support = ws > SUPPORT_TOL
    if rho_diag[~in_support].sum() > SUPPORT_TOL:
        return float("inf")
    wr = wr[wr > 0]
    neg_entropy = np.dot(wr, np.log2(wr))
    cross = np.dot(rho_diag[in_support], np.log2(ws[in_support]))
    return float(max(0.0, neg_entropy - cross))


def helstrom_measurement(rho: np.ndarray, sigma: np.ndarray) -> tuple[PovmPair, float]:
    """Optimal two-outcome measurement for discriminating ``rho`` from ``sigma`` with equal priors.

    ``E0`` projects onto the nonnegative eigenspace of ``rho - sigma``.
    """
    rho, sigma = as_density_matrix(rho), as_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    w, v = np.linalg.eigh(hermitian_part(rho - sigma))
    pos = v[:, w >= 0]
    E0 = pos @ pos.conj().T
    E1 = np.eye(rho.shape[0]) - E0
    return PovmPair(E0, E1), 0.5 * (1 + trace_distance(rho, sigma))


def purity(rho: np.ndarray) -> float:
    rho = as_density_matrix(rho)
    return float(np.real(np.vdot(rho, rho)))


def entanglement_entropy(psi: np.ndarray, dims) -> float:
    """Entropy of the A-side reduction of a bipartite pure state."""
    dA, dB = dims
    s = np.linalg.svd(np.asarray(psi).reshape(dA, dB), compute_uv=False)
    return shannon_entropy(s**2)


def schmidt_decomposition(psi: np.ndarray, dims):
    """Return ``(coefficients, a_vectors, b_vectors)`` with vectors as columns."""
    dA, dB = dims
    u, s, vh = np.linalg.svd(np.asarray(psi).reshape(dA, dB), full_matrices=False)
    return s, u, vh.T


def rand_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    tmp = rng.normal(size=d) + 1j * rng.normal(size=d)
    return tmp / np.linalg.norm(tmp)


def rand_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random density matrix from the induced (Ginibre) measure; ``rank=d`` is Hilbert-Schmidt."""
    rank = d if rank is None else rank
    G = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = G @ G.conj().T
    return hermitian_part(rho / np.trace(rho).real)


def rand_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    return scipy.stats.unitary_group.rvs(d, random_state=rng)


def dephase(rho: np.ndarray) -> np.ndarray:
    """Diagonal part of ``rho`` in the computational basis."""
    return np.diag(np.diag(np.asarray(rho)))


def log2_frechet_derivative(sigma: np.ndarray, direction: np.ndarray) -> np.ndarray:
    r"""Directional derivative of :math:`\log_2` at a positive definite ``sigma``.

    Uses the divided-difference (Daleckii-Krein) formula in the eigenbasis of
    ``sigma``. Eigenvalues at or below ``SUPPORT_TOL`` are treated as zero and
    the corresponding rows/columns of the result are zeroed.
    """
    w, v = np.linalg.eigh(hermitian_part(sigma))
    pos = w > SUPPORT_TOL
    wc = np.where(pos, w, 1.0)
    logw = np.log(wc)
    dw = w[:, None] - w[None, :]
    same = np.abs(dw) <= 1e-12 * np.maximum(np.abs(w[:, None]), 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        L = np.where(same, 1 / ((wc[:, None] + wc[None, :]) / 2), (logw[:, None] - logw[None, :]) / np.where(same, 1, dw))
    mask = pos[:, None] & pos[None, :]
    L = np.where(mask, L, 0.0)
    tmp = v.conj().T @ direction @ v
    return v @ (tmp * L) @ v.conj().T / np.log(2)
