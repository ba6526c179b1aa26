"""Pairwise-far keyed ensembles (EPFI pairs): constructors and exhaustive checks.

Computational indistinguishability cannot be tested on explicit matrices.
Every pair therefore carries the ``STATISTICAL_SURROGATE`` caveat: the hiding
numbers reported here are unbounded-adversary trace distances between the
key-averaged mixtures, which is necessary but not sufficient evidence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .bounds import HALF_OVER_E, BoundReport
from .linalg import DimensionError, trace_distance
from .resource import (
    Bracket,
    KeyedEnsemble,
    PseudoresourcePair,
    SeparabilityOracle,
    gap_from_brackets,
    verify_resource_gap,
)

STATISTICAL_SURROGATE = "statistical-surrogate"
PROXY_MEASURE = "proxy-measure"
PROVENANCES = ("explicit", "from_pseudoresource", "from_pure_pe", "from_mixed_pe")


class HypothesisError(ValueError):
    """A constructor's gap hypothesis is not met."""


class IndeterminateGapError(HypothesisError):
    """Numerical brackets are too wide to certify the gap."""


@dataclass
class EpfiPair:
    left: KeyedEnsemble
    right: KeyedEnsemble
    certified_delta: float
    provenance: str = "explicit"
    caveats: tuple = (STATISTICAL_SURROGATE,)

    def __post_init__(self):
        if self.left.dims != self.right.dims:
            raise DimensionError(f"ensemble dims differ: {self.left.dims} vs {self.right.dims}")
        if not 0 <= self.certified_delta <= 1:
            raise ValueError(f"certified_delta must lie in [0, 1], got {self.certified_delta}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")


@dataclass
class PurePePair:
    left: KeyedEnsemble
    right: KeyedEnsemble
    claimed_eta: float

    def __post_init__(self):
        if self.left.dims != self.right.dims:
            raise DimensionError("ensemble dims differ")
        for ens in (self.left, self.right):
            if not ens.is_pure():
                raise linalg.InvalidStateError("pure pseudoentanglement needs pure states (purity >= 1 - 1e-9)")


@dataclass
class MixedPePair:
    left: KeyedEnsemble
    right: KeyedEnsemble
    claimed_eta: float
    er_proxy: str = "single_copy"
    oracle_options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.left.dims != self.right.dims:
            raise DimensionError("ensemble dims differ")
        if self.er_proxy not in ("single_copy", "two_copy"):
            raise ValueError(f"unknown er_proxy {self.er_proxy!r}")


def _clip_delta(x: float) -> float:
    return min(1.0, max(0.0, x))


def from_pseudoresource(pair: PseudoresourcePair) -> EpfiPair:
    """Same ensembles, with ``certified_delta = (eta - 2) / kappa``.

    ``eta`` is the claimed gap, which must exceed 2 and be certified by
    :func:`verify_resource_gap`; ``kappa`` is the oracle's diameter.
    """
    eta = pair.claimed_eta
    if eta <= 2:
        raise HypothesisError(f"gap eta={eta} must exceed 2")
    kappa = pair.oracle.diameter_kappa
    if not math.isfinite(kappa) or kappa <= 0:
        raise HypothesisError(f"diameter kappa={kappa} must be positive and finite")
    _, report = verify_resource_gap(pair)
    if report.status == "indeterminate":
        raise IndeterminateGapError(f"resource gap not certified: brackets give {report.rhs:.6g} < {eta}")
    if report.status == "fail":
        raise HypothesisError(f"resource gap {report.rhs:.6g} is below claimed eta={eta}")
    return EpfiPair(pair.left, pair.right, _clip_delta((eta - 2) / kappa), "from_pseudoresource")


def _reduced_ensemble(ens: KeyedEnsemble) -> KeyedEnsemble:
    dA, dB = ens.dims
    states = {k: linalg.partial_trace(ens.density(k), (dA, dB), 0) for k in ens.keys}
    return KeyedEnsemble(ens.key_len, states, (dA, 1))


def entanglement_entropies(ens: KeyedEnsemble) -> dict:
    out = {}
    for k, s in ens.states.items():
        if s.ndim == 1:
            out[k] = linalg.entanglement_entropy(s, ens.dims)
        else:
            out[k] = linalg.von_neumann_entropy(linalg.partial_trace(s, ens.dims, 0))
    return out


def from_pure_pseudoentanglement(pair: PurePePair) -> EpfiPair:
    r'''Reduce each pure state to its A side and certify via entropy continuity.

    Parameters:
        pair (PurePePair): pure bipartite ensembles with claimed entanglement gap

    Returns:
        ret (EpfiPair): ensembles of A-side reduced states with
            ``certified_delta = (eta - 1/(2e)) / (2 log2 dA)``
    '''
    eta = pair.claimed_eta
    if eta <= HALF_OVER_E:
        raise HypothesisError(f"gap eta={eta} must exceed 1/(2e)={HALF_OVER_E:.6f}")
    dA = pair.left.dims[0]
    if dA < 2:
        raise HypothesisError("the A side must have dimension at least 2")
    el, er = entanglement_entropies(pair.left), entanglement_entropies(pair.right)
    gap = min(abs(x - y) for x in el.values() for y in er.values())
    if gap < eta - 1e-9:
        raise HypothesisError(f"entanglement gap {gap:.6g} is below claimed eta={eta}")
    delta = (eta - HALF_OVER_E) / (2 * math.log2(dA))
    return EpfiPair(_reduced_ensemble(pair.left), _reduced_ensemble(pair.right), _clip_delta(delta), "from_pure_pe")


def _two_copy_state(rho: np.ndarray, dims) -> np.ndarray:
    dA, dB = dims
    tmp = np.kron(rho, rho)
    return linalg.permute_subsystems(tmp, [dA, dB, dA, dB], [0, 2, 1, 3])


def er_proxy_brackets(ens: KeyedEnsemble, proxy: str = "single_copy", **oracle_options) -> dict:
    """Brackets for the regularised relative entropy of entanglement of every key.

    The lower end is the hashing floor ``max(S(A), S(B)) - S(AB)``, which
    also bounds the regularised quantity from below. The upper end is the
    single-copy (or two-copy, halved) product-mixture bound, which bounds
    it from above.
    """
    dA, dB = ens.dims
    oracle = SeparabilityOracle(dA, dB, **oracle_options)
    if proxy == "two_copy":
        if dA > 4 or dB > 4:
            raise ValueError("two-copy refinement is limited to local dimension 4")
        oracle2 = SeparabilityOracle(dA * dA, dB * dB, **oracle_options)
    out = {}
    for k in ens.keys:
        rho = ens.density(k)
        single = oracle.closest_free(rho)
        upper = single.upper
        if proxy == "two_copy":
            upper = min(upper, oracle2.closest_free(_two_copy_state(rho, (dA, dB))).upper / 2)
        lower = min(oracle.hashing_floor(rho), upper)
        out[k] = Bracket(lower, upper, single.converged)
    return out


def from_mixed_pseudoentanglement(pair: MixedPePair) -> EpfiPair:
    """Certify the gap with proxy brackets; ``certified_delta = (eta - 2) / log2(dA*dB)``."""
    eta = pair.claimed_eta
    if eta <= 2:
        raise HypothesisError(f"gap eta={eta} must exceed 2")
    left = er_proxy_brackets(pair.left, pair.er_proxy, **pair.oracle_options)
    right = er_proxy_brackets(pair.right, pair.er_proxy, **pair.oracle_options)
    lo, hi = gap_from_brackets(left, right)
    if lo < eta - 1e-9:
        if hi >= eta:
            raise IndeterminateGapError(f"entanglement gap not certified: brackets give {lo:.6g} < {eta}")
        raise HypothesisError(f"entanglement gap at most {hi:.6g}, below claimed eta={eta}")
    d = pair.left.dim
    return EpfiPair(pair.left, pair.right, _clip_delta((eta - 2) / math.log2(d)), "from_mixed_pe",
                    (STATISTICAL_SURROGATE, PROXY_MEASURE))


def pairwise_distances(pair: EpfiPair) -> np.ndarray:
    """Matrix of trace distances, rows indexed by left keys and columns by right keys."""
    L = [pair.left.density(k) for k in pair.left.keys]
    R = [pair.right.density(k) for k in pair.right.keys]
    return np.array([[trace_distance(a, b) for b in R] for a in L])


def verify_pairwise_far(pair: EpfiPair, max_pairs: int = 2**20) -> tuple[float, BoundReport]:
    n = len(pair.left.keys) * len(pair.right.keys)
    if n > max_pairs:
        raise ValueError(f"{n} key pairs exceed the exhaustive limit {max_pairs}")
    min_delta = float(pairwise_distances(pair).min())
    return min_delta, BoundReport("pairwise_far", pair.certified_delta, min_delta)


def mixture_power(ens: KeyedEnsemble, m: int) -> np.ndarray:
    """Key-uniform average of ``rho_k^{(x) m}``."""
    acc = None
    for k in ens.keys:
        tmp = linalg.tensor_power(ens.density(k), m)
        acc = tmp if acc is None else acc + tmp
    return acc / len(ens.keys)


def statistical_hiding_advantage(pair: EpfiPair, m: int) -> float:
    """Trace distance between the key-averaged m-copy states of the two ensembles."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if m * math.log2(pair.left.dim) > 12 + 1e-12:
        raise ValueError(f"m={m} copies of dimension {pair.left.dim} exceed the 2**12 limit")
    return trace_distance(mixture_power(pair.left, m), mixture_power(pair.right, m))
