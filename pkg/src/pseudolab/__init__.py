"""Desk-scale numerics for pseudoresources, pairwise-far ensembles, commitments and LOCC."""
from .bounds import (
    BoundReport,
    binary_entropy,
    binding_fidelity_bound,
    copies_amplification,
    copies_amplification_fidelity,
    fannes_audenaert_bound,
    fannes_bound,
    winter_entanglement_bound,
    winter_resource_bound,
)
from .commitment import (
    CommitCircuitFamily,
    build_from_epfi,
    commit,
    optimal_opening_attack,
    reveal_verify,
)
from .epfi import (
    EpfiPair,
    MixedPePair,
    PurePePair,
    from_mixed_pseudoentanglement,
    from_pseudoresource,
    from_pure_pseudoentanglement,
    verify_pairwise_far,
)
from .io import load_circuit, load_ensemble, save_circuit, save_ensemble
from .linalg import (
    BipartiteState,
    DimensionError,
    InvalidStateError,
    fidelity,
    helstrom_measurement,
    partial_trace,
    partial_transpose,
    relative_entropy,
    trace_distance,
    von_neumann_entropy,
)
from .locc import (
    DistillationCertificate,
    KeyedLoccMap,
    LoccCircuit,
    apply_locc,
    cost_deficit,
    distillation_deficit,
    locked_entanglement_demo,
)
from .resource import (
    Bracket,
    KeyedEnsemble,
    PseudoresourcePair,
    coherence_oracle,
    relative_entropy_of_resource,
    separability_oracle,
    verify_resource_gap,
)
from .suite import Report, SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "BipartiteState",
    "BoundReport",
    "Bracket",
    "CommitCircuitFamily",
    "DimensionError",
    "DistillationCertificate",
    "EpfiPair",
    "InvalidStateError",
    "KeyedEnsemble",
    "KeyedLoccMap",
    "LoccCircuit",
    "MixedPePair",
    "PseudoresourcePair",
    "PurePePair",
    "Report",
    "SuiteConfig",
    "apply_locc",
    "binary_entropy",
    "binding_fidelity_bound",
    "build_from_epfi",
    "coherence_oracle",
    "commit",
    "copies_amplification",
    "copies_amplification_fidelity",
    "cost_deficit",
    "distillation_deficit",
    "fannes_audenaert_bound",
    "fannes_bound",
    "fidelity",
    "from_mixed_pseudoentanglement",
    "from_pseudoresource",
    "from_pure_pseudoentanglement",
    "helstrom_measurement",
    "load_circuit",
    "load_ensemble",
    "locked_entanglement_demo",
    "optimal_opening_attack",
    "partial_trace",
    "partial_transpose",
    "relative_entropy",
    "relative_entropy_of_resource",
    "reveal_verify",
    "run_suite",
    "save_circuit",
    "save_ensemble",
    "separability_oracle",
    "trace_distance",
    "verify_pairwise_far",
    "verify_resource_gap",
    "von_neumann_entropy",
    "winter_entanglement_bound",
    "winter_resource_bound",
]
