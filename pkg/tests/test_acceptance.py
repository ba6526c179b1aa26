"""Acceptance criteria, one check per criterion with a printed PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines, or as a
script: ``python3 tests/test_acceptance.py``. Reference quantities are
recomputed here with plain numpy/scipy wherever that is cheap, so the checks
do not rely only on the library's own primitives.
"""
import math
import time

import numpy as np
import pytest
import scipy.linalg

from pseudolab import bounds as B
from pseudolab import commitment as CM
from pseudolab import constructions as K
from pseudolab import epfi as E
from pseudolab import linalg as L
from pseudolab import locc as LC
from pseudolab.resource import coherence_oracle, relative_entropy_of_resource, separability_oracle
from pseudolab.suite import SuiteConfig, run_suite

SEED = 0
RESULTS = {}


def _report(n, ok, detail):
    line = f"CRITERION {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    RESULTS[n] = (ok, line)
    return ok


# independent references

def _entropy(rho):
    w = np.clip(np.linalg.eigvalsh(rho), 0, None)
    w = w[w > 0]
    return float(-(w * np.log2(w)).sum())


def _tdist(a, b):
    return 0.5 * float(np.abs(np.linalg.eigvalsh(a - b)).sum())


def _fid(a, b):
    s = scipy.linalg.sqrtm(a)
    return float(np.real(np.trace(scipy.linalg.sqrtm(s @ b @ s))) ** 2)


def _rand_dm(d, rng):
    G = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def _rand_ket(d, rng):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


# criteria

def criterion_1():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    bad, worst, n = 0, -math.inf, 0
    example = None
    for d in (2, 4, 8, 16):
        for _ in range(2500):
            rho, sigma = _rand_dm(d, rng), _rand_dm(d, rng)
            delta = _tdist(rho, sigma)
            lhs = abs(_entropy(rho) - _entropy(sigma))
            excess = lhs - B.fannes_bound(delta, d)
            n += 1
            if excess > 1e-9:
                bad += 1
                if excess > worst:
                    worst, example = excess, (d, delta)
    dt = time.perf_counter() - t0
    detail = f"{bad} violations / {n} pairs, runtime {dt:.1f}s"
    if bad:
        detail += f"; worst excess {worst:.4f} at d={example[0]}, D={example[1]:.4f}"
    return _report(1, bad == 0 and dt < 60, detail)


def criterion_2():
    rng = np.random.default_rng(SEED + 1)
    bad, n = 0, 0
    for d in (2, 4, 8):
        oracle = coherence_oracle(d)
        for _ in range(1000):
            rho, sigma = _rand_dm(d, rng), _rand_dm(d, rng)
            # closed form D_C = S(diag) - S(rho), checked against the oracle's bracket
            dc = [_entropy(np.diag(np.diag(x))) - _entropy(x) for x in (rho, sigma)]
            br = [relative_entropy_of_resource(x, oracle) for x in (rho, sigma)]
            assert all(abs(b.upper - v) < 1e-9 and b.width == 0 for b, v in zip(br, dc))
            if abs(dc[0] - dc[1]) > B.winter_resource_bound(_tdist(rho, sigma), math.log2(d)) + 1e-9:
                bad += 1
            n += 1
    return _report(2, bad == 0, f"{bad} violations / {n} pairs")


def criterion_3():
    rng = np.random.default_rng(SEED + 2)
    bad1 = bad2 = 0
    for _ in range(10000):
        d = int(rng.choice([2, 3, 4, 8]))
        rho, sigma = _rand_dm(d, rng), _rand_dm(d, rng)
        F, D = L.fidelity(rho, sigma), _tdist(rho, sigma)
        bad1 += F > 1 - D**2 + 1e-9
        bad2 += F > math.sqrt(1 - D**2) + 1e-9
    worst_eq = 0.0
    for _ in range(1000):
        d = int(rng.choice([2, 3, 4, 8]))
        a, b = _rand_ket(d, rng), _rand_ket(d, rng)
        ra, rb = np.outer(a, a.conj()), np.outer(b, b.conj())
        F = L.fidelity(ra, rb)
        assert abs(F - abs(np.vdot(a, b)) ** 2) < 1e-9
        worst_eq = max(worst_eq, abs(F - (1 - _tdist(ra, rb) ** 2)))
    ok = bad1 == 0 and bad2 == 0 and worst_eq <= 1e-8
    return _report(3, ok, f"F<=1-D^2 violations {bad1}, F<=sqrt(1-D^2) violations {bad2}, "
                          f"pure equality max error {worst_eq:.2e}")


def _random_effects(rng, n):
    Z = rng.normal(size=(n, 2, 2)) + 1j * rng.normal(size=(n, 2, 2))
    Q, R = np.linalg.qr(Z)
    ph = np.diagonal(R, axis1=1, axis2=2)
    Q = Q * (ph / np.abs(ph))[:, None, :]
    lam = rng.random((n, 2))
    return np.einsum("nij,nj,nkj->nik", Q, lam, Q.conj())


def criterion_4():
    rng = np.random.default_rng(SEED + 3)
    worst_gap, dominated = 0.0, 0
    for _ in range(1000):
        rho, sigma = _rand_dm(2, rng), _rand_dm(2, rng)
        povm, p = L.helstrom_measurement(rho, sigma)
        target = 0.5 * (1 + _tdist(rho, sigma))
        worst_gap = max(worst_gap, abs(povm.success_probability(rho, sigma) - target), abs(p - target))
        E0 = _random_effects(rng, 1000)
        succ = 0.5 + 0.5 * np.real(np.einsum("nij,ji->n", E0, rho - sigma))
        dominated += bool(succ.max() <= p + 1e-12)
    ok = worst_gap <= 1e-9 and dominated == 1000
    return _report(4, ok, f"max |success - (1+D)/2| = {worst_gap:.2e}; dominates random POVMs on {dominated}/1000 pairs")


def criterion_5():
    rng = np.random.default_rng(SEED + 4)
    bad, total, worst = 0, 0, 0.0
    for _ in range(100):
        rho, sigma = _rand_dm(2, rng), _rand_dm(2, rng)
        delta = _tdist(rho, sigma)
        for n in range(1, 6):
            dn = _tdist(L.tensor_power(rho, n), L.tensor_power(sigma, n))
            short = B.copies_amplification(delta, n) - dn
            total += 1
            if short > 1e-9:
                bad += 1
                worst = max(worst, short)
    detail = f"{bad} violations / {total} (pair, n) cases"
    if bad:
        detail += f"; worst shortfall {worst:.4f}"
    return _report(5, bad == 0, detail)


def criterion_6():
    rng = np.random.default_rng(SEED + 5)
    pair = E.from_pseudoresource(K.coherence_pseudoresource(4.0, rng, kappa=4))
    exact = pair.certified_delta
    dists = [[_tdist(pair.left.density(a), pair.right.density(b)) for b in pair.right.keys] for a in pair.left.keys]
    ok = abs(exact - 0.5) <= 1e-12 and min(map(min, dists)) >= 0.5 - 1e-9
    worst_margin = math.inf
    for _ in range(20):
        eta = float(rng.uniform(2.5, 4.0))
        p = E.from_pseudoresource(K.coherence_pseudoresource(eta, rng))
        ok &= abs(p.certified_delta - (eta - 2) / 4) <= 1e-12
        md = min(_tdist(p.left.density(a), p.right.density(b)) for a in p.left.keys for b in p.right.keys)
        worst_margin = min(worst_margin, md - p.certified_delta)
    ok &= worst_margin >= -1e-9
    return _report(6, ok, f"exact instance delta={exact:.6f}, min distance {min(map(min, dists)):.4f}; "
                          f"20 random instances min(distance - delta) = {worst_margin:.4f}")


def criterion_7():
    rng = np.random.default_rng(SEED + 6)
    pure = K.pure_pseudoentanglement(rng)
    pair = E.from_pure_pseudoentanglement(pure)
    expected = (2 - 1 / (2 * math.e)) / 4
    md = min(_tdist(pair.left.density(a), pair.right.density(b)) for a in pair.left.keys for b in pair.right.keys)
    err = 0.0
    for ens in (pure.left, pure.right):
        for k in ens.keys:
            psi = ens.states[k]
            rA = psi.reshape(4, 4) @ psi.reshape(4, 4).conj().T
            err = max(err, abs(_entropy(rA) - L.entanglement_entropy(psi, (4, 4))))
    gap = min(abs(L.entanglement_entropy(a, (4, 4)) - L.entanglement_entropy(b, (4, 4)))
              for a in pure.left.states.values() for b in pure.right.states.values())
    ok = abs(pair.certified_delta - expected) <= 1e-12 and md >= pair.certified_delta - 1e-9 and err <= 1e-8 \
        and abs(gap - 2) <= 1e-8
    return _report(7, ok, f"delta={pair.certified_delta:.6f} (expected {expected:.6f}), min reduced distance {md:.4f}, "
                          f"entropy gap {gap:.6f}, entropy mismatch {err:.1e}")


def criterion_8():
    rng = np.random.default_rng(SEED + 7)
    worst_slack, worst_uhl, worst_rev, cases = math.inf, 0.0, 0.0, 0
    for delta in (0.3, 0.5, 1.0):
        for noise in (0.0, 0.1):
            if noise and delta > 1 - noise:
                continue
            pair = K.qubit_epfi_pair(delta, rng, key_len=2, noise=noise)
            for m in (1, 2, 3):
                scheme = CM.build_from_epfi(pair, m)
                bound = B.binding_fidelity_bound(B.copies_amplification(delta, m))
                for k in scheme.keys[0]:
                    for k2 in scheme.keys[1]:
                        res = CM.optimal_opening_attack(scheme, k, k2, m)
                        ref = _fid(pair.left.density(k), pair.right.density(k2)) ** m
                        worst_slack = min(worst_slack, bound - res.success_prob)
                        worst_uhl = max(worst_uhl, abs(res.achieved_overlap - res.success_prob),
                                        abs(res.success_prob - ref))
                        cases += 1
                for b in (0, 1):
                    for k in scheme.keys[b]:
                        tr = CM.commit(scheme, b, k, m)
                        worst_rev = max(worst_rev, 1 - CM.reveal_verify(scheme, tr.joint_state, b, k))
    ok = worst_slack >= -1e-6 and worst_uhl <= 1e-6 and worst_rev <= 1e-9
    return _report(8, ok, f"{cases} attacks: min(bound - success) = {worst_slack:.4f}, "
                          f"Uhlmann mismatch {worst_uhl:.1e}, honest reject prob {worst_rev:.1e}")


def criterion_9():
    sep = K.pauli_separation_pair()
    md = min(_tdist(sep.left.density(a), sep.right.density(b)) for a in sep.left.keys for b in sep.right.keys)
    mix = _tdist(sep.left.mixture(), sep.right.mixture())
    return _report(9, md >= 0.5 and mix <= 1e-9, f"min pairwise distance {md:.4f}, mixture distance {mix:.1e}")


def criterion_10():
    rng = np.random.default_rng(SEED + 8)
    oracle = separability_oracle(2, 2)
    worst_w, missed = 0.0, 0
    for _ in range(50):
        psi = _rand_ket(4, rng)
        b = oracle.closest_free(np.outer(psi, psi.conj()))
        s = psi.reshape(2, 2)
        ent = _entropy(s @ s.conj().T)
        worst_w = max(worst_w, b.width)
        missed += not (b.lower - 1e-9 <= ent <= b.upper + 1e-9)
    bell = oracle.closest_free(L.ket_to_dm(L.bell_state()))
    ok = worst_w <= 0.05 + 1e-6 and missed == 0 and bell.contains(1.0, 1e-9)
    return _report(10, ok, f"max width {worst_w:.1e}, brackets missing the entropy {missed}/50, "
                           f"Bell bracket [{bell.lower:.9f}, {bell.upper:.9f}]")


def criterion_11():
    rep = LC.locked_entanglement_demo(1)
    avg = sum(L.ket_to_dm(v) for v in rep_states()) / 4
    avg_err = float(np.abs(avg - np.eye(4) / 4).max())
    ok = (len(rep.with_key_deficits) == 4 and max(rep.with_key_deficits.values()) <= 1e-12
          and avg_err <= 1e-12 and rep.key_average_error <= 1e-12
          and rep.no_key_best_fidelity <= 0.5 + 1e-9 and rep.key_average_ppt_min_eig >= -1e-12)
    return _report(11, ok, f"with-key deficit {max(rep.with_key_deficits.values()):.1e}, key-average error {avg_err:.1e}, "
                           f"no-key best fidelity {rep.no_key_best_fidelity:.12f} over {rep.no_key_circuits} circuits, "
                           f"PT min eig {rep.key_average_ppt_min_eig:.3f}")


def rep_states():
    X, Z = np.array([[0, 1], [1, 0]]), np.diag([1, -1])
    phi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    for x in (0, 1):
        for z in (0, 1):
            P = np.linalg.matrix_power(X, x) @ np.linalg.matrix_power(Z, z)
            yield np.kron(P, np.eye(2)) @ phi


def criterion_12():
    rng = np.random.default_rng(SEED + 9)
    oracle = separability_oracle(2, 2)
    worst_tr, worst_excess = 0.0, -math.inf
    for i in range(100):
        circ = LC.random_toy_circuit(rng)
        rho = L.ket_to_dm(_rand_ket(4, rng)) if i % 2 == 0 else _rand_dm(4, rng)
        out = LC.apply_locc(circ, L.BipartiteState(rho, 2, 2)).mat
        worst_tr = max(worst_tr, abs(np.trace(out).real - 1))
        b_in, b_out = oracle.closest_free(rho), oracle.closest_free(out)
        worst_excess = max(worst_excess, b_out.lower - (b_in.upper + b_in.width + b_out.width))
    ok = worst_tr <= 1e-9 and worst_excess <= 1e-9
    return _report(12, ok, f"max trace error {worst_tr:.1e}, max (out.lower - in.upper - widths) = {worst_excess:.2e}")


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 13)}


@pytest.mark.parametrize("n", list(CRITERIA))
def test_criterion(n):
    assert CRITERIA[n]()


def test_suite_determinism():
    cfg = SuiteConfig(seed=42, suites=["bounds", "epfi", "commitment"])
    a, b = run_suite(cfg), run_suite(cfg)
    same = a.to_text(runtimes=False) == b.to_text(runtimes=False)
    print(f"DETERMINISM: {'PASS' if same else 'FAIL'}  identical reports for identical configs")
    assert same


if __name__ == "__main__":
    t0 = time.perf_counter()
    for n, fn in CRITERIA.items():
        fn()
    print(f"{sum(ok for ok, _ in RESULTS.values())}/{len(RESULTS)} criteria pass in {time.perf_counter() - t0:.0f}s")
