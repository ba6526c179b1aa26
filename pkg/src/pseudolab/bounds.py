"""Scalar continuity and amplification bounds, all in bits."""
from __future__ import annotations

import math
from dataclasses import dataclass

BOUND_TOL = 1e-9
HALF_OVER_E = 1 / (2 * math.e)


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking ``lhs <= rhs``.

    ``status`` is ``'pass'``, ``'fail'`` or ``'indeterminate'``; the last one is
    used when numerical brackets are too wide to decide.
    """
    name: str
    lhs: float
    rhs: float
    status: str = ""

    def __post_init__(self):
        if not self.status:
            object.__setattr__(self, "status", "pass" if self.lhs <= self.rhs + BOUND_TOL else "fail")
        if self.status not in ("pass", "fail", "indeterminate"):
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def satisfied(self) -> bool:
        return self.status == "pass"

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


def _check_unit(x: float, name: str):
    if not 0 <= x <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def binary_entropy(p: float) -> float:
    _check_unit(p, "p")
    if p == 0 or p == 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def fannes_bound(delta: float, d: int) -> float:
    r"""``2*delta*log2(d) + min(-delta*log2(delta), 1/(2e))``.

    This is the entropy-continuity form with the truncated correction term
    ``c(x)``; the constant ``1/(2e)`` is used as a pure number.
    """
    _check_unit(delta, "delta")
    if delta == 0:
        return 0.0
    return 2 * delta * math.log2(d) + min(-delta * math.log2(delta), HALF_OVER_E)


def fannes_audenaert_bound(delta: float, d: int) -> float:
    """Tight entropy continuity bound ``delta*log2(d-1) + h(delta)``.

    Kept as a reference: it holds for every pair, including near-pure qubit
    pairs where :func:`fannes_bound` does not.
    """
    _check_unit(delta, "delta")
    if delta >= 1 - 1 / d:
        return math.log2(d)
    return delta * math.log2(d - 1) + binary_entropy(delta) if d > 1 else 0.0


def winter_resource_bound(eps: float, kappa: float) -> float:
    """``eps*kappa + (1+eps)*h(eps/(1+eps))`` for relative-entropy resource measures."""
    _check_unit(eps, "eps")
    if kappa < 0:
        raise ValueError(f"kappa must be nonnegative, got {kappa}")
    return eps * kappa + (1 + eps) * binary_entropy(eps / (1 + eps))


def winter_entanglement_bound(eps: float, d: int) -> float:
    _check_unit(eps, "eps")
    return eps * math.log2(d) + (1 + eps) * binary_entropy(eps / (1 + eps))


def copies_amplification(delta: float, n: int) -> float:
    """Claimed lower bound ``1 - exp(-n*delta/2)`` on the n-copy trace distance."""
    _check_unit(delta, "delta")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return 1 - math.exp(-n * delta / 2)


def copies_amplification_fidelity(delta: float, n: int) -> float:
    """Valid n-copy lower bound ``1 - (1 - delta**2)**(n/2)``.

    Follows from multiplicativity of the root fidelity and the
    Fuchs-van de Graaf inequalities.
    """
    _check_unit(delta, "delta")
    return 1 - (1 - delta**2) ** (n / 2)


def binding_fidelity_bound(delta: float) -> float:
    """``sqrt(1 - delta**2)``: fidelity ceiling for states at trace distance ``delta``."""
    _check_unit(delta, "delta")
    return math.sqrt(max(0.0, 1 - delta**2))
