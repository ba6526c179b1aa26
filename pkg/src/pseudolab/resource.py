"""Resource theories as free-set oracles and relative entropy of resource brackets.

Two oracles are provided. Coherence (free set = diagonal states) has the
closed form ``S(diag rho) - S(rho)``. Separability brackets the relative
entropy of entanglement: the upper bound comes from an explicit mixture of
product states, the lower bound from a dual certificate for the PPT
relaxation, together with the hashing floor ``S(rho_A) - S(rho_AB)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from . import linalg
from .bounds import BoundReport
from .linalg import (
    DimensionError,
    partial_trace,
    partial_transpose,
    relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
)


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class Bracket:
    """Certified interval ``[lower, upper]`` around a relative entropy of resource."""
    lower: float
    upper: float
    converged: bool = True
    witness: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"invalid bracket [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __iter__(self):
        yield self.lower
        yield self.upper

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol


class FreeSetOracle:
    """Base class: subclasses implement :meth:`closest_free` and :meth:`contains`."""

    name: str = "abstract"

    def __init__(self, dim: int, diameter_kappa: float):
        self.dim = dim
        self.diameter_kappa = float(diameter_kappa)
        self.full_rank_witness = np.eye(dim, dtype=complex) / dim

    def closest_free(self, rho: np.ndarray) -> Bracket:
        raise NotImplementedError

    def contains(self, sigma: np.ndarray, tol: float = 1e-10) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, kappa={self.diameter_kappa:.6g})"


class CoherenceOracle(FreeSetOracle):
    name = "coherence"

    def __init__(self, d: int, kappa: float | None = None):
        if d < 2:
            raise ValueError(f"dimension must be at least 2, got {d}")
        tight = math.log2(d)
        if kappa is not None and kappa < tight:
            raise ValueError(f"kappa={kappa} is below the diameter log2(d)={tight}")
        super().__init__(d, tight if kappa is None else kappa)

    def closest_free(self, rho):
        rho = linalg.as_density_matrix(rho)
        if rho.shape != (self.dim, self.dim):
            raise DimensionError(f"state has shape {rho.shape}, oracle dim is {self.dim}")
        p = np.clip(np.real(np.diag(rho)), 0, None)
        value = max(0.0, shannon_entropy(p) - von_neumann_entropy(rho))
        return Bracket(value, value, True, np.diag(p / p.sum()).astype(complex))

    def contains(self, sigma, tol=1e-10):
        sigma = np.asarray(sigma)
        return bool(np.abs(sigma - np.diag(np.diag(sigma))).max() <= tol)


def coherence_oracle(d: int, kappa: float | None = None) -> CoherenceOracle:
    """Free set = states diagonal in the computational basis.

    ``kappa`` may be raised above ``log2(d)``; any upper bound on the diameter
    keeps the continuity bounds valid.
    """
    return CoherenceOracle(d, kappa)


@dataclass
class ProductMixture:
    """Separable state ``sum_j w_j |a_j><a_j| (x) |b_j><b_j|`` with explicit decomposition."""
    weights: np.ndarray
    a: np.ndarray  # (n, dA) normalized rows
    b: np.ndarray  # (n, dB)

    @property
    def kets(self) -> np.ndarray:
        return np.einsum("ni,nj->nij", self.a, self.b).reshape(len(self.weights), -1)

    def matrix(self) -> np.ndarray:
        psi = self.kets
        return (psi.T * self.weights) @ psi.conj()

    def is_valid(self, tol: float = 1e-10) -> bool:
        return (
            bool(np.all(self.weights >= -tol))
            and abs(self.weights.sum() - 1) <= tol
            and np.allclose(np.linalg.norm(self.a, axis=1), 1, atol=tol)
            and np.allclose(np.linalg.norm(self.b, axis=1), 1, atol=tol)
        )


def _neg_log_overlap(rho_eig, sigma):
    """``-Tr rho log2 sigma`` or inf when the support condition fails."""
    w, v = np.linalg.eigh(linalg.hermitian_part(sigma))
    wr, vr = rho_eig
    pr = np.abs(v.conj().T @ vr) ** 2 @ wr
    ok = w > linalg.SUPPORT_TOL
    if pr[~ok].sum() > linalg.SUPPORT_TOL:
        return math.inf
    return float(-np.dot(pr[ok], np.log2(w[ok])))


def _admix_identity(mix: ProductMixture, t: float, dA: int, dB: int) -> ProductMixture:
    if t == 0:
        return mix
    eyeA, eyeB = np.eye(dA, dtype=complex), np.eye(dB, dtype=complex)
    a = np.vstack([mix.a, np.repeat(eyeA, dB, axis=0)])
    b = np.vstack([mix.b, np.tile(eyeB, (dA, 1))])
    w = np.concatenate([(1 - t) * mix.weights, np.full(dA * dB, t / (dA * dB))])
    return ProductMixture(w, a, b)


def _lmo_product(G, dA, dB, rng, restarts, iters=100, starts=()):
    """Approximately minimize <ab|G|ab> over product unit vectors by alternating eigensolves.

    All starting points are iterated together as one batch.
    """
    Gt = G.reshape(dA, dB, dA, dB)
    b = np.array(list(starts) + [linalg.rand_pure_state(dB, rng) for _ in range(restarts)])
    val_old = np.full(len(b), math.inf)
    for _ in range(iters):
        Ma = np.einsum("rj,ijkl,rl->rik", b.conj(), Gt, b)
        _, va = np.linalg.eigh(Ma)
        a = va[:, :, 0]
        Mb = np.einsum("ri,ijkl,rk->rjl", a.conj(), Gt, a)
        wb, vb = np.linalg.eigh(Mb)
        b = vb[:, :, 0]
        val = wb[:, 0]
        if np.all(val_old - val < 1e-13):
            break
        val_old = val
    i = int(np.argmin(val))
    return float(val[i]), a[i], b[i]


def _pt_dual_bound(G, dims, rng, maxiter=300):
    """Certified lower bound on ``min Tr(G tau)`` over PPT states ``tau``.

    For any ``Y >= 0``: ``Tr(G tau) >= lambda_min(G - Y^Gamma)`` because
    ``Tr(Y^Gamma tau) = Tr(Y tau^Gamma) >= 0``. ``Y = Z Z^dagger`` is tuned
    with L-BFGS on a soft-min surrogate; the returned value uses the exact
    minimum eigenvalue, so it is valid regardless of convergence.
    """
    d = G.shape[0]
    G = linalg.hermitian_part(G)
    scale = max(1.0, np.abs(np.linalg.eigvalsh(G)).max())
    beta = 1.0

    def unpack(x):
        return (x[: d * d] + 1j * x[d * d:]).reshape(d, d)

    def fun(x):
        Z = unpack(x)
        M = G - partial_transpose(Z @ Z.conj().T, dims)
        w, v = np.linalg.eigh(linalg.hermitian_part(M))
        e = np.exp(-beta * (w - w[0]))
        softmin = w[0] - np.log(e.sum()) / beta
        W = (v * (e / e.sum())) @ v.conj().T
        # d softmin / dY = -W^Gamma ; Y = Z Z^dagger
        gZ = -2 * partial_transpose(W, dims) @ Z
        return -softmin, -np.concatenate([gZ.real.ravel(), gZ.imag.ravel()])

    def exact(x):
        Z = unpack(x)
        return np.linalg.eigvalsh(linalg.hermitian_part(G - partial_transpose(Z @ Z.conj().T, dims)))[0]

    x = rng.normal(size=2 * d * d) * math.sqrt(scale / d) * 0.1
    best = np.linalg.eigvalsh(G)[0]
    # anneal the soft-min temperature, warm-starting each stage
    for beta_scale in (2e2, 2e3, 2e4, 2e5):
        beta = beta_scale / scale
        res = scipy.optimize.minimize(fun, x, jac=True, method="L-BFGS-B", options={"maxiter": maxiter})
        x = res.x
        best = max(best, exact(x))
    return float(best)


class SeparabilityOracle(FreeSetOracle):
    """Brackets ``E_R(rho) = min_{sigma separable} D(rho||sigma)`` across the A:B cut.

    Parameters:
        dA, dB (int): local dimensions, ``dA*dB <= 64``
        max_iter (int): outer iterations of the product-mixture search
        restarts (int): random restarts for each product-state subproblem
        tol (float): stop once the estimated objective decrease falls below it
        seed (int): seed for restarts; the oracle is deterministic per query
    """
    name = "separability"

    def __init__(self, dA: int, dB: int, max_iter: int = 200, restarts: int = 8, tol: float = 1e-7, seed: int = 0):
        if dA < 2 or dB < 2:
            raise ValueError("local dimensions must be at least 2")
        if dA * dB > 64:
            raise ValueError(f"dA*dB={dA * dB} exceeds the supported maximum 64")
        super().__init__(dA * dB, math.log2(min(dA, dB)))
        self.dA, self.dB = dA, dB
        self.max_atoms = (dA * dB) ** 2
        self.max_iter, self.restarts, self.tol, self.seed = max_iter, restarts, tol, seed

    def contains(self, sigma, tol=1e-10):
        if isinstance(sigma, ProductMixture):
            return sigma.is_valid(tol)
        if self.dim > 6:
            raise NotImplementedError("separability membership is only decided for dA*dB <= 6 (PPT criterion)")
        pt = partial_transpose(np.asarray(sigma), (self.dA, self.dB))
        return bool(np.linalg.eigvalsh(linalg.hermitian_part(pt))[0] >= -tol)

    def hashing_floor(self, rho) -> float:
        """``max(S(A), S(B)) - S(AB)``, a lower bound on the (regularised) relative entropy of entanglement."""
        dims = (self.dA, self.dB)
        sab = von_neumann_entropy(rho)
        return max(0.0, von_neumann_entropy(partial_trace(rho, dims, 0)) - sab,
                   von_neumann_entropy(partial_trace(rho, dims, 1)) - sab)

    def _initial_atoms(self, rho):
        dA, dB = self.dA, self.dB
        a_list, b_list, w_list = [], [], []
        w, v = np.linalg.eigh(rho)
        for lam, vec in zip(w[::-1], v.T[::-1]):
            if lam <= 1e-10:
                break
            s, A, B = linalg.schmidt_decomposition(vec, (dA, dB))
            for si, ai, bi in zip(s, A.T, B.T):
                if si**2 * lam > 1e-14:
                    a_list.append(ai)
                    b_list.append(bi)
                    w_list.append(si**2 * lam)
        for i, j in itertools.product(range(dA), range(dB)):
            a_list.append(np.eye(dA)[i].astype(complex))
            b_list.append(np.eye(dB)[j].astype(complex))
            w_list.append(0.0)
        w0 = np.array(w_list)
        w0 = 0.95 * w0 / w0.sum() + 0.05 / len(w0)
        return ProductMixture(w0, np.array(a_list), np.array(b_list))

    def _optimize_weights(self, mix, rho_eig, f0):
        """Re-fit all mixture weights; the objective is convex in the weights."""
        psi = mix.kets
        rho = self._rho
        big = 1e3

        def fun(w):
            sigma = (psi.T * w) @ psi.conj()
            f = _neg_log_overlap(rho_eig, sigma)
            if not math.isfinite(f):
                return big, np.zeros_like(w)
            G = -linalg.log2_frechet_derivative(sigma, rho)
            g = np.real(np.einsum("ni,ij,nj->n", psi.conj(), G, psi))
            return f, g

        res = scipy.optimize.minimize(
            fun, mix.weights, jac=True, method="SLSQP", bounds=[(0, 1)] * len(mix.weights),
            constraints=[{"type": "eq", "fun": lambda w: w.sum() - 1, "jac": lambda w: np.ones_like(w)}],
            options={"maxiter": 200, "ftol": 1e-14})
        w = np.clip(res.x, 0, None)
        w /= w.sum()
        f = _neg_log_overlap(rho_eig, (psi.T * w) @ psi.conj())
        if f > f0:
            return f0
        keep = w > 1e-15
        mix.weights, mix.a, mix.b = w[keep] / w[keep].sum(), mix.a[keep], mix.b[keep]
        return _neg_log_overlap(rho_eig, mix.matrix())

    def _prune(self, mix):
        if len(mix.weights) <= self.max_atoms:
            return
        order = np.argsort(mix.weights)[::-1][: self.max_atoms]
        mix.weights = mix.weights[order] / mix.weights[order].sum()
        mix.a, mix.b = mix.a[order], mix.b[order]

    def upper_bound(self, rho) -> tuple[float, ProductMixture, bool, np.ndarray]:
        """Minimize ``D(rho||sigma)`` over explicit product mixtures.

        Fully corrective conditional gradient: each outer step adds the
        product state found by alternating eigensolves, followed by a line
        search and re-optimization of all mixture weights.
        """
        rng = np.random.default_rng(self.seed)
        dA, dB = self.dA, self.dB
        wr, vr = np.linalg.eigh(rho)
        keep = wr > 1e-14
        rho_eig = (wr[keep], vr[:, keep])
        self._rho = rho
        mix = self._initial_atoms(rho)
        f = _neg_log_overlap(rho_eig, mix.matrix())
        f = self._optimize_weights(mix, rho_eig, f)
        converged = False
        G = None
        for _ in range(self.max_iter):
            sigma = mix.matrix()
            G = -linalg.log2_frechet_derivative(sigma, rho)
            val, a, b = _lmo_product(G, dA, dB, rng, self.restarts, starts=mix.b[np.argsort(mix.weights)[-2:]])
            gap = -1 / math.log(2) - val  # <G, sigma> = -1/ln2 for the log derivative
            if gap < self.tol:
                converged = True
                break
            P = np.kron(np.outer(a, a.conj()), np.outer(b, b.conj()))
            res = scipy.optimize.minimize_scalar(
                lambda t: _neg_log_overlap(rho_eig, (1 - t) * sigma + t * P), bounds=(0, 1), method="bounded",
                options={"xatol": 1e-10})
            f_old = f
            if res.fun < f:
                t = res.x
                mix.weights = np.append((1 - t) * mix.weights, t)
                mix.a = np.vstack([mix.a, a])
                mix.b = np.vstack([mix.b, b])
                f = res.fun
            else:
                mix.weights = np.append(mix.weights, 0.0) + 1e-12
                mix.weights /= mix.weights.sum()
                mix.a = np.vstack([mix.a, a])
                mix.b = np.vstack([mix.b, b])
                f = _neg_log_overlap(rho_eig, mix.matrix())
            self._prune(mix)
            f = self._optimize_weights(mix, rho_eig, _neg_log_overlap(rho_eig, mix.matrix()))
            if f_old - f < self.tol and gap < 1e-3:
                converged = True
                break
        # a tiny admixture of I/d (itself a product mixture) guards the support threshold
        best = None
        for t in (0.0, 1e-12, 1e-10, 1e-8, 1e-6):
            cand = _admix_identity(mix, t, dA, dB)
            val = relative_entropy(rho, cand.matrix())
            if best is None or val < best[0]:
                best = (val, cand)
        upper, mix = best
        return max(0.0, upper), mix, converged, mix.matrix()

    def lower_bound(self, rho, sigma0) -> float:
        """Certified lower bound from convexity: ``f(tau) >= f(s0) + <G(s0), tau - s0>`` over PPT ``tau``."""
        rng = np.random.default_rng(self.seed + 1)
        floor = self.hashing_floor(rho)
        best = floor
        for t in (1e-6, 1e-3):
            s0 = (1 - t) * sigma0 + t * np.eye(self.dim) / self.dim
            f0 = relative_entropy(rho, s0)
            if not math.isfinite(f0):
                continue
            G = -linalg.log2_frechet_derivative(s0, rho)
            lin0 = float(np.real(np.vdot(G, s0)))
            lmo = _pt_dual_bound(G, (self.dA, self.dB), rng)
            best = max(best, f0 - lin0 + lmo)
        return max(0.0, best)

    def closest_free(self, rho) -> Bracket:
        rho = linalg.as_density_matrix(rho)
        if rho.shape != (self.dim, self.dim):
            raise DimensionError(f"state has shape {rho.shape}, oracle dim is {self.dim}")
        rho = linalg.hermitian_part(rho)
        upper, mix, converged, sigma = self.upper_bound(rho)
        lower = self.lower_bound(rho, sigma)
        lower = min(lower, upper)
        return Bracket(lower, upper, converged, mix)


def separability_oracle(dA: int, dB: int, **kwargs) -> SeparabilityOracle:
    return SeparabilityOracle(dA, dB, **kwargs)


def relative_entropy_of_resource(rho, oracle: FreeSetOracle) -> Bracket:
    """Bracket ``min_{sigma in F} D(rho||sigma)`` with the oracle's free set ``F``.

    The witness attached to the bracket is checked for membership in ``F``.
    """
    bracket = oracle.closest_free(rho)
    if bracket.witness is not None and not oracle.contains(bracket.witness):
        raise OracleError(f"{oracle.name} oracle returned a non-free witness")
    if bracket.upper > oracle.diameter_kappa + 1e-9 and math.isfinite(bracket.upper):
        # the diameter caps the true value, so the bracket can be clipped
        bracket = Bracket(min(bracket.lower, oracle.diameter_kappa), oracle.diameter_kappa, False, bracket.witness)
    return bracket


@dataclass
class KeyedEnsemble:
    """Finite map from bitstring keys to states on a fixed ``dA x dB`` space.

    ``states`` values may be kets (1-D) or density matrices (2-D).
    """
    key_len: int
    states: dict
    dims: tuple[int, int]

    def __post_init__(self):
        if not self.states:
            raise ValueError("key set must be non-empty")
        self.dims = tuple(int(x) for x in self.dims)
        d = self.dims[0] * self.dims[1]
        clean = {}
        for k, s in self.states.items():
            if len(k) != self.key_len or set(k) - {"0", "1"}:
                raise ValueError(f"key {k!r} is not a bitstring of length {self.key_len}")
            s = np.asarray(s, dtype=complex)
            try:
                if s.ndim == 1:
                    s = linalg.validate_pure_state(s)
                else:
                    linalg.validate_density_matrix(s)
            except linalg.InvalidStateError as err:
                raise linalg.InvalidStateError(f"state for key {k!r}: {err}") from None
            if s.shape[0] != d:
                raise DimensionError(f"state for key {k!r} has dimension {s.shape[0]}, expected {d}")
            clean[k] = s
        self.states = dict(sorted(clean.items()))

    @property
    def keys(self) -> list[str]:
        return list(self.states)

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]

    def density(self, key: str) -> np.ndarray:
        return linalg.as_density_matrix(self.states[key])

    def density_matrices(self) -> dict:
        return {k: self.density(k) for k in self.states}

    def is_pure(self, tol: float = 1e-9) -> bool:
        return all(s.ndim == 1 or linalg.purity(s) >= 1 - tol for s in self.states.values())

    def mixture(self) -> np.ndarray:
        """Uniform key average."""
        return sum(self.density_matrices().values()) / len(self.states)

    def bipartite(self, key: str) -> linalg.BipartiteState:
        return linalg.BipartiteState(self.density(key), *self.dims)


@dataclass
class PseudoresourcePair:
    left: KeyedEnsemble
    right: KeyedEnsemble
    oracle: FreeSetOracle
    claimed_eta: float

    def __post_init__(self):
        if self.left.dims != self.right.dims:
            raise DimensionError(f"ensemble dims differ: {self.left.dims} vs {self.right.dims}")
        if self.left.dim != self.oracle.dim:
            raise DimensionError("oracle dimension does not match the ensembles")
        if not self.claimed_eta > 0:
            raise ValueError("claimed_eta must be positive")


def gap_from_brackets(left: dict, right: dict) -> tuple[float, float]:
    """Certified lower and upper bounds on ``min_{k,k'} |R(left_k) - R(right_k')|``."""
    lo, hi = math.inf, math.inf
    for bl in left.values():
        for br in right.values():
            lo = min(lo, max(0.0, bl.lower - br.upper, br.lower - bl.upper))
            hi = min(hi, max(bl.upper - br.lower, br.upper - bl.lower))
    return lo, hi


def verify_resource_gap(pair: PseudoresourcePair, max_keys: int = 2**10) -> tuple[float, BoundReport]:
    """Exhaustively certify the resource gap over all key pairs.

    Returns the certified minimum gap and a report that passes when it
    reaches ``claimed_eta``; the report is ``'indeterminate'`` when the
    brackets neither certify nor refute the claim.
    """
    for ens in (pair.left, pair.right):
        if len(ens.states) > max_keys:
            raise ValueError(f"key set of size {len(ens.states)} exceeds {max_keys}")
    left = {k: relative_entropy_of_resource(pair.left.density(k), pair.oracle) for k in pair.left.keys}
    right = {k: relative_entropy_of_resource(pair.right.density(k), pair.oracle) for k in pair.right.keys}
    lo, hi = gap_from_brackets(left, right)
    eta = pair.claimed_eta
    if lo >= eta - 1e-9:
        status = "pass"
    elif hi >= eta:
        status = "indeterminate"
    else:
        status = "fail"
    return lo, BoundReport("resource_gap", eta, lo, status)
