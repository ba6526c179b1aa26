"""Verification suites and machine-readable reports.

Each suite is a function of a :class:`SuiteConfig` and a seeded generator
returning check records. Every record carries a ``ref`` tag naming the
statement it instantiates; the tags are listed in :data:`REFERENCES`.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bounds, commitment, constructions, epfi, linalg, locc
from .resource import coherence_oracle, relative_entropy_of_resource, separability_oracle

REFERENCES = {
    "fannes_inequality": "entropy continuity in trace distance",
    "winter_continuity": "continuity of the relative entropy of a resource with bounded diameter",
    "fidelity_trace_distance": "F + trace distance^2 <= 1 and its pure-state equality",
    "holevo_helstrom": "optimal two-state discrimination",
    "copies_amplification": "trace distance growth under tensor powers",
    "uhlmann": "fidelity as the best overlap of purifications",
    "canonical_commitment": "commit / reveal semantics and honest binding",
    "epfi_commitment_binding": "binding of commitments built from pairwise-far ensembles",
    "pseudoresource_to_epfi": "resource gap implies a pairwise trace-distance gap",
    "pure_pseudoentanglement": "entanglement-entropy gap implies a reduced-state gap",
    "mixed_pseudoentanglement": "relative-entropy-of-entanglement gap implies a trace-distance gap",
    "epfi_separation": "pairwise far families whose mixtures coincide",
    "relative_entropy_of_entanglement": "separable relative entropy brackets",
    "locc_channel": "LOCC maps are trace preserving and completely positive",
    "locc_free_operations": "LOCC cannot increase entanglement",
    "one_shot_distillation": "keyed distillation and cost certificates",
    "locked_entanglement": "key-locked entanglement at desk scale",
    "harness": "harness self-checks",
}
SUITES = ("bounds", "resource", "epfi", "commitment", "locc")
STATUSES = ("pass", "fail", "indeterminate")
DEFAULT_TOL = 1e-9


@dataclass
class Record:
    name: str
    ref: str
    lhs: float
    rhs: float
    status: str
    runtime_ms: float = 0.0
    detail: str = ""

    def __post_init__(self):
        if self.ref not in REFERENCES:
            raise ValueError(f"record {self.name!r} has unknown reference tag {self.ref!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        self.lhs, self.rhs = float(self.lhs), float(self.rhs)


@dataclass
class SuiteConfig:
    seed: int = 42
    max_dim: int = 16
    tolerances: dict = field(default_factory=dict)
    suites: list = field(default_factory=lambda: list(SUITES))
    out: str | None = None
    scale: str = "quick"
    inject_violation: bool = False

    def __post_init__(self):
        if not 2 <= self.max_dim <= 64:
            raise ValueError(f"max_dim must lie in [2, 64], got {self.max_dim}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ValueError(f"unknown suites {sorted(unknown)}; choose from {SUITES}")
        if self.scale not in ("quick", "full"):
            raise ValueError("scale must be 'quick' or 'full'")

    def tol(self, name: str) -> float:
        return float(self.tolerances.get(name, DEFAULT_TOL))

    def count(self, quick: int, full: int) -> int:
        return full if self.scale == "full" else quick


@dataclass
class Report:
    records: list = field(default_factory=list)
    caveats: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def add(self, records, caveats=()):
        # single-writer merge keyed by check name
        names = {r.name for r in self.records}
        for r in records:
            if r.name in names:
                raise ValueError(f"duplicate check name {r.name!r}")
            names.add(r.name)
            self.records.append(r)
        self.caveats = sorted(set(self.caveats) | set(caveats))

    @property
    def summary(self) -> dict:
        return {s: sum(r.status == s for r in self.records) for s in STATUSES}

    @property
    def exit_code(self) -> int:
        return 1 if self.summary["fail"] else 0

    def to_dict(self, runtimes: bool = True) -> dict:
        recs = []
        for r in sorted(self.records, key=lambda r: r.name):
            d = asdict(r)
            if not runtimes:
                d.pop("runtime_ms")
            recs.append(d)
        return {"config": self.config, "summary": self.summary, "caveats": self.caveats, "records": recs}

    def to_text(self, runtimes: bool = True) -> str:
        return json.dumps(self.to_dict(runtimes), indent=1, sort_keys=True) + "\n"

    def table(self) -> str:
        lines = [f"{'status':<14}{'check':<44}{'lhs':>14}{'rhs':>14}  detail"]
        for r in sorted(self.records, key=lambda r: r.name):
            lines.append(f"{r.status:<14}{r.name:<44}{r.lhs:>14.6g}{r.rhs:>14.6g}  {r.detail}")
        s = self.summary
        lines.append(f"{s['pass']} pass, {s['fail']} fail, {s['indeterminate']} indeterminate")
        if self.caveats:
            lines.append("caveats: " + ", ".join(self.caveats))
        return "\n".join(lines)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = 1000 * (time.perf_counter() - self.t0)


def _worst(name, ref, pairs, tol, detail=""):
    """Record for ``lhs <= rhs + tol`` over many samples, reporting the tightest one."""
    pairs = np.asarray(pairs, dtype=float).reshape(-1, 2)
    slack = pairs[:, 1] - pairs[:, 0]
    i = int(np.argmin(slack))
    bad = int(np.sum(slack < -tol))
    status = "fail" if bad else "pass"
    info = f"violations={bad}/{len(pairs)}" + (f"; {detail}" if detail else "")
    return Record(name, ref, pairs[i, 0], pairs[i, 1], status, 0.0, info)


def _pairs(rng, d, n, rank=None):
    return [(linalg.rand_density_matrix(d, rng, rank), linalg.rand_density_matrix(d, rng, rank)) for _ in range(n)]


# --- suites ----------------------------------------------------------------

def suite_bounds(cfg: SuiteConfig, rng: np.random.Generator) -> list[Record]:
    tol = cfg.tol("bounds")
    out = []
    n = cfg.count(500, 2500)
    for d in (2, 4, 8, 16):
        if d > cfg.max_dim:
            continue
        with _Timer() as t:
            lhs_printed, lhs_sharp = [], []
            for rho, sigma in _pairs(rng, d, n):
                delta = linalg.trace_distance(rho, sigma)
                diff = abs(linalg.von_neumann_entropy(rho) - linalg.von_neumann_entropy(sigma))
                lhs_printed.append((diff, bounds.fannes_bound(delta, d)))
                lhs_sharp.append((diff, bounds.fannes_audenaert_bound(delta, d)))
        out.append(_worst(f"fannes[d={d}]", "fannes_inequality", lhs_printed, tol))
        out.append(_worst(f"fannes_sharp[d={d}]", "fannes_inequality", lhs_sharp, tol))
        out[-1].runtime_ms = out[-2].runtime_ms = t.ms / 2
    for d in (2, 4, 8):
        if d > cfg.max_dim:
            continue
        oracle = coherence_oracle(d)
        with _Timer() as t:
            vals = []
            for rho, sigma in _pairs(rng, d, cfg.count(200, 1000)):
                eps = linalg.trace_distance(rho, sigma)
                diff = abs(relative_entropy_of_resource(rho, oracle).upper
                           - relative_entropy_of_resource(sigma, oracle).upper)
                vals.append((diff, bounds.winter_resource_bound(eps, oracle.diameter_kappa)))
        out.append(_worst(f"winter_coherence[d={d}]", "winter_continuity", vals, tol))
        out[-1].runtime_ms = t.ms
    with _Timer() as t:
        sq, rt = [], []
        for _ in range(cfg.count(1000, 10000)):
            d = int(rng.choice([x for x in (2, 4, 8) if x <= cfg.max_dim]))
            rho, sigma = _pairs(rng, d, 1)[0]
            F, D = linalg.fidelity(rho, sigma), linalg.trace_distance(rho, sigma)
            sq.append((F, 1 - D**2))
            rt.append((F, math.sqrt(max(0.0, 1 - D**2))))
        eq = []
        for _ in range(cfg.count(200, 1000)):
            d = int(rng.choice([2, 4, 8]))
            a, b = linalg.rand_pure_state(d, rng), linalg.rand_pure_state(d, rng)
            F = linalg.fidelity(linalg.ket_to_dm(a), linalg.ket_to_dm(b))
            D = linalg.trace_distance(linalg.ket_to_dm(a), linalg.ket_to_dm(b))
            eq.append(abs(F - (1 - D**2)))
    out.append(_worst("fidelity_vs_distance", "fidelity_trace_distance", sq, tol))
    out.append(_worst("fidelity_vs_distance_sqrt", "fidelity_trace_distance", rt, tol))
    out.append(_worst("fidelity_pure_equality", "fidelity_trace_distance", [(e, 0) for e in eq], 1e-8))
    for r in out[-3:]:
        r.runtime_ms = t.ms / 3
    with _Timer() as t:
        opt, dom = [], []
        for rho, sigma in _pairs(rng, 2, cfg.count(100, 1000)):
            povm, p = linalg.helstrom_measurement(rho, sigma)
            target = 0.5 * (1 + linalg.trace_distance(rho, sigma))
            opt.append(abs(povm.success_probability(rho, sigma) - target))
            best_random = 0.0
            for _ in range(cfg.count(100, 1000)):
                E0 = _random_effect(rng, 2)
                best_random = max(best_random, 0.5 * np.trace(E0 @ rho).real + 0.5 * np.trace((np.eye(2) - E0) @ sigma).real)
            dom.append((best_random, p))
    out.append(_worst("helstrom_success", "holevo_helstrom", [(e, 0) for e in opt], tol))
    out.append(_worst("helstrom_dominance", "holevo_helstrom", dom, tol))
    out[-1].runtime_ms = out[-2].runtime_ms = t.ms / 2
    with _Timer() as t:
        amp, amp_fid = {}, {}
        for rho, sigma in _pairs(rng, 2, cfg.count(30, 100)):
            delta = linalg.trace_distance(rho, sigma)
            for m in range(1, 6):
                dm = linalg.trace_distance(linalg.tensor_power(rho, m), linalg.tensor_power(sigma, m))
                amp.setdefault(m, []).append((bounds.copies_amplification(delta, m), dm))
                amp_fid.setdefault(m, []).append((bounds.copies_amplification_fidelity(delta, m), dm))
    for m in range(1, 6):
        out.append(_worst(f"copies_amplification[n={m}]", "copies_amplification", amp[m], tol))
        out.append(_worst(f"copies_amplification_fidelity[n={m}]", "copies_amplification", amp_fid[m], tol))
    return out


def _random_effect(rng, d):
    """Uniformly random eigenbasis with eigenvalues in [0, 1]."""
    U = linalg.rand_unitary(d, rng)
    return U @ np.diag(rng.random(d)) @ U.conj().T


def suite_resource(cfg: SuiteConfig, rng: np.random.Generator) -> list[Record]:
    out = []
    oracle = separability_oracle(2, 2)
    with _Timer() as t:
        widths, contain = [], []
        for _ in range(cfg.count(10, 50)):
            psi = linalg.rand_pure_state(4, rng)
            b = oracle.closest_free(linalg.ket_to_dm(psi))
            ent = linalg.entanglement_entropy(psi, (2, 2))
            widths.append((b.width, 0.05))
            contain.append((b.lower - 1e-9, ent))
            contain.append((ent, b.upper + 1e-9))
        bell = oracle.closest_free(linalg.ket_to_dm(linalg.bell_state()))
    out.append(_worst("er_pure_bracket_width", "relative_entropy_of_entanglement", widths, 1e-6))
    out.append(_worst("er_pure_bracket_contains_entropy", "relative_entropy_of_entanglement", contain, 0.0))
    out.append(Record("er_bell_bracket", "relative_entropy_of_entanglement", bell.lower, bell.upper,
                      "pass" if bell.lower - 1e-9 <= 1 <= bell.upper + 1e-9 else "fail", t.ms,
                      "bracket must contain 1"))
    with _Timer() as t:
        vals = []
        for d in (2, 4, 8):
            if d > cfg.max_dim:
                continue
            orc = coherence_oracle(d)
            for _ in range(cfg.count(20, 100)):
                rho = linalg.rand_density_matrix(d, rng)
                exact = linalg.von_neumann_entropy(np.diag(np.diag(rho))) - linalg.von_neumann_entropy(rho)
                vals.append((abs(relative_entropy_of_resource(rho, orc).upper - exact), 0))
    out.append(_worst("coherence_closed_form", "winter_continuity", vals, 1e-9))
    out[-1].runtime_ms = t.ms
    return out


def suite_epfi(cfg: SuiteConfig, rng: np.random.Generator) -> list[Record]:
    out = []
    caveats = {epfi.STATISTICAL_SURROGATE}
    if cfg.max_dim >= 16:
        with _Timer() as t:
            pair = epfi.from_pseudoresource(constructions.coherence_pseudoresource(4.0, rng, kappa=4))
            min_delta, rep = epfi.verify_pairwise_far(pair)
        out.append(Record("pseudoresource_exact_delta", "pseudoresource_to_epfi", pair.certified_delta, 0.5,
                          "pass" if abs(pair.certified_delta - 0.5) <= 1e-12 else "fail", t.ms))
        out.append(Record("pseudoresource_pairwise_far", "pseudoresource_to_epfi", rep.lhs, rep.rhs, rep.status, 0.0,
                          f"min distance {min_delta:.6f}"))
        with _Timer() as t:
            vals = []
            for _ in range(cfg.count(5, 20)):
                eta = float(rng.uniform(2.5, 4.0))
                pair = epfi.from_pseudoresource(constructions.coherence_pseudoresource(eta, rng))
                vals.append((pair.certified_delta, epfi.verify_pairwise_far(pair)[0]))
        out.append(_worst("pseudoresource_random_instances", "pseudoresource_to_epfi", vals, 1e-9))
        out[-1].runtime_ms = t.ms
    with _Timer() as t:
        pure = constructions.pure_pseudoentanglement(rng)
        pair = epfi.from_pure_pseudoentanglement(pure)
        min_delta, rep = epfi.verify_pairwise_far(pair)
        expected = (2 - bounds.HALF_OVER_E) / 4
    out.append(Record("pure_pe_delta", "pure_pseudoentanglement", pair.certified_delta, expected,
                      "pass" if abs(pair.certified_delta - expected) <= 1e-12 else "fail", t.ms))
    out.append(Record("pure_pe_pairwise_far", "pure_pseudoentanglement", rep.lhs, rep.rhs, rep.status))
    with _Timer() as t:
        sep = constructions.pauli_separation_pair()
        min_delta, rep = epfi.verify_pairwise_far(sep)
        mix = epfi.statistical_hiding_advantage(sep, 1)
    out.append(Record("separation_pairwise_far", "epfi_separation", rep.lhs, rep.rhs, rep.status, t.ms))
    out.append(Record("separation_mixture_distance", "epfi_separation", mix, 1e-9, "pass" if mix <= 1e-9 else "fail"))
    if cfg.max_dim >= 64:
        with _Timer() as t:
            left, right = constructions.bell_vs_product_mixed(3, rng=rng)
            try:
                pair = epfi.from_mixed_pseudoentanglement(epfi.MixedPePair(left, right, 2.5))
                md, rep = epfi.verify_pairwise_far(pair)
                rec = Record("mixed_pe_pairwise_far", "mixed_pseudoentanglement", rep.lhs, rep.rhs, rep.status)
            except epfi.IndeterminateGapError as err:
                rec = Record("mixed_pe_pairwise_far", "mixed_pseudoentanglement", 0.5 / 6, math.nan,
                             "indeterminate", detail=str(err))
        rec.runtime_ms = t.ms
        out.append(rec)
        caveats.add(epfi.PROXY_MEASURE)
    return out, caveats


def suite_commitment(cfg: SuiteConfig, rng: np.random.Generator) -> list[Record]:
    out = []
    for delta in (0.3, 0.5, 1.0):
        for noise in (0.0, 0.1):
            if noise and delta > 1 - noise:
                continue
            pair = constructions.qubit_epfi_pair(delta, rng, key_len=1, noise=noise)
            for m in (1, 2, 3):
                with _Timer() as t:
                    scheme = commitment.build_from_epfi(pair, m)
                    bound = bounds.binding_fidelity_bound(bounds.copies_amplification(pair.certified_delta, m))
                    succ, uhl, rev = [], [], []
                    for k in scheme.keys[0]:
                        for k2 in scheme.keys[1]:
                            res = commitment.optimal_opening_attack(scheme, k, k2, m)
                            succ.append((res.success_prob, bound))
                            uhl.append((abs(res.achieved_overlap - res.success_prob), 0))
                    for b in (0, 1):
                        for k in scheme.keys[b]:
                            tr = commitment.commit(scheme, b, k, m)
                            rev.append((1 - commitment.reveal_verify(scheme, tr.joint_state, b, k), 0))
                tag = f"[delta={delta},noise={noise},m={m}]"
                out.append(_worst("binding" + tag, "epfi_commitment_binding", succ, 1e-6))
                out.append(_worst("uhlmann_attack" + tag, "uhlmann", uhl, 1e-6))
                out.append(_worst("honest_reveal" + tag, "canonical_commitment", rev, 1e-9))
                out[-3].runtime_ms = t.ms
    return out


def suite_locc(cfg: SuiteConfig, rng: np.random.Generator) -> list[Record]:
    out = []
    with _Timer() as t:
        rep = locc.locked_entanglement_demo(1)
    out.append(Record("locked_with_key_deficit", "locked_entanglement", max(rep.with_key_deficits.values()), 1e-9,
                      "pass" if max(rep.with_key_deficits.values()) <= 1e-9 else "fail", t.ms))
    out.append(Record("locked_key_average", "locked_entanglement", rep.key_average_error, 1e-12,
                      "pass" if rep.key_average_error <= 1e-12 else "fail"))
    out.append(Record("locked_no_key_fidelity", "locked_entanglement", rep.no_key_best_fidelity, 0.5 + 1e-9,
                      "pass" if rep.no_key_best_fidelity <= 0.5 + 1e-9 else "fail", 0.0,
                      f"{rep.no_key_circuits} distinct circuits; {rep.scope}"))
    out.append(Record("locked_average_ppt", "locked_entanglement", -rep.key_average_ppt_min_eig, 1e-12,
                      "pass" if rep.key_average_ppt_min_eig >= -1e-12 else "fail"))
    oracle = separability_oracle(2, 2)
    with _Timer() as t:
        trace, mono, branch, choi = [], [], [], []
        for i in range(cfg.count(10, 100)):
            circ = locc.random_toy_circuit(rng)
            state = linalg.BipartiteState(linalg.rand_pure_state(4, rng), 2, 2)
            res = locc.apply_locc(circ, state)
            trace.append((abs(np.trace(res.mat).real - 1), 0))
            b_in, b_out = oracle.closest_free(state.mat), oracle.closest_free(res.mat)
            mono.append((b_out.lower, b_in.upper + b_in.width + b_out.width))
            brs = locc.apply_locc_branches(circ, state)
            branch.append((np.abs(sum(p * m for p, _, m in brs) - res.mat).max(), 0))
            if i < 10:
                choi.append((-np.linalg.eigvalsh(locc.choi_matrix(circ))[0], 0))
    out.append(_worst("locc_trace_preserving", "locc_channel", trace, 1e-9))
    out.append(_worst("locc_choi_psd", "locc_channel", choi, 1e-9))
    out.append(_worst("locc_branch_sum", "locc_channel", branch, 1e-9))
    out.append(_worst("locc_er_monotone", "locc_free_operations", mono, 1e-9))
    out[-1].runtime_ms = t.ms
    with _Timer() as t:
        fam = locc.pauli_keyed_bell_family(1)
        cost, ok, _ = locc.cost_deficit(fam, _pauli_preparation(), 1, 1e-9)
    out.append(Record("pauli_cost_certificate", "one_shot_distillation", cost, 1e-9, "pass" if ok else "fail", t.ms))
    return out


def _pauli_preparation() -> locc.KeyedLoccMap:
    """Apply ``P_k = X^x Z^z`` to Alice's half of one input pair."""
    gates = [locc.Gate("z", ["A0"], key_controls=[1]), locc.Gate("x", ["A0"], key_controls=[0])]
    return locc.KeyedLoccMap(locc.LoccCircuit(1, 1, [(gates, [])]), 2)


def _injected_violation(cfg: SuiteConfig) -> Record:
    """Entropy check against a deliberately corrupted continuity bound; must fail."""
    rho, sigma = np.diag([1.0, 0.0]), np.eye(2) / 2
    diff = abs(linalg.von_neumann_entropy(rho) - linalg.von_neumann_entropy(sigma))
    corrupted = bounds.fannes_bound(linalg.trace_distance(rho, sigma), 2) - 1
    return _worst("injected_entropy_check", "harness", [(diff, corrupted)], cfg.tol("bounds"), "corrupted bound")


_RUNNERS = {"bounds": suite_bounds, "resource": suite_resource, "epfi": suite_epfi,
            "commitment": suite_commitment, "locc": suite_locc}


def run_suite(cfg: SuiteConfig) -> Report:
    """Run the selected suites in a fixed order; write the report when ``cfg.out`` is set."""
    report = Report(config={"seed": cfg.seed, "max_dim": cfg.max_dim, "scale": cfg.scale,
                            "suites": [s for s in SUITES if s in cfg.suites],
                            "tolerances": dict(sorted(cfg.tolerances.items())),
                            "inject_violation": cfg.inject_violation})
    for i, name in enumerate(SUITES):
        if name not in cfg.suites:
            continue
        rng = np.random.default_rng([cfg.seed, i])
        got = _RUNNERS[name](cfg, rng)
        records, caveats = got if isinstance(got, tuple) else (got, ())
        report.add(records, caveats)
    if cfg.inject_violation:
        report.add([_injected_violation(cfg)])
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(report.to_text())
    return report
