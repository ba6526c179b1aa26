"""Exact simulation of round-based LOCC circuits on qubit registers.

Registers, in simulation order: ``A`` (n_A), ``Ap`` (t_A), ``B`` (n_B),
``Bp`` (t_B), ``C`` (c). Qubits are referred to as ``"A0"``, ``"Ap1"``,
``"C0"`` and so on. Each round runs Alice's gate list on ``A, Ap, C``,
measures ``C`` in the computational basis, runs Bob's list on ``B, Bp, C`` and
measures ``C`` again. Measurements are applied as the dephasing channel, so
every classical branch is kept in the output mixture. A gate whose control
lies in ``C`` is therefore a classically controlled gate.

Classical keys (:class:`KeyedLoccMap`) enter through ``key_controls``: a gate
fires only when the listed key bits are all 1. This is the same channel as
storing ``|k>`` in read-only ancilla registers on both sides and using them
as controls.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import BipartiteState
from .resource import KeyedEnsemble

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.diag([1, -1]).astype(complex)
_S = np.diag([1, 1j])

# name -> (base single-qubit unitary, number of controls)
GATES = {
    "h": (_H, 0),
    "x": (_X, 0),
    "z": (_Z, 0),
    "s": (_S, 0),
    "cx": (_X, 1),
    "cz": (_Z, 1),
    "ccx": (_X, 2),
    "reset": (None, 0),
}
REGISTERS = ("A", "Ap", "B", "Bp", "C")
SIDE_REGISTERS = {"A": ("A", "Ap", "C"), "B": ("B", "Bp", "C")}
_QUBIT_RE = re.compile(r"^(Ap|Bp|A|B|C)(\d+)$")


class LocalityError(ValueError):
    """A gate touches a register its party does not hold."""


@dataclass(frozen=True)
class Gate:
    gate: str
    targets: tuple
    controls: tuple = ()
    key_controls: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "controls", tuple(self.controls))
        object.__setattr__(self, "key_controls", tuple(int(x) for x in self.key_controls))
        if self.gate not in GATES:
            raise ValueError(f"unknown gate {self.gate!r}; known: {sorted(GATES)}")
        if len(self.targets) != 1:
            raise ValueError(f"gate {self.gate!r} takes exactly one target")
        if len(self.controls) != GATES[self.gate][1]:
            raise ValueError(f"gate {self.gate!r} takes {GATES[self.gate][1]} control(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"gate {self.gate!r} repeats a qubit: {self.qubits}")

    @property
    def qubits(self) -> tuple:
        return self.controls + self.targets

    def to_dict(self) -> dict:
        ret = {"gate": self.gate, "targets": list(self.targets), "controls": list(self.controls)}
        if self.key_controls:
            ret["key_controls"] = list(self.key_controls)
        return ret

    @classmethod
    def from_dict(cls, data: dict) -> "Gate":
        return cls(data["gate"], data["targets"], data.get("controls", ()), data.get("key_controls", ()))


def _as_gate(g) -> Gate:
    if isinstance(g, Gate):
        return g
    if isinstance(g, dict):
        return Gate.from_dict(g)
    name, *qubits = g
    n_ctrl = GATES[name][1]
    return Gate(name, qubits[n_ctrl:], qubits[:n_ctrl])


@dataclass
class LoccCircuit:
    """Round-structured LOCC circuit.

    ``rounds`` is a list of ``(alice_gates, bob_gates)``; gates may be given
    as :class:`Gate`, dicts, or tuples ``("cx", control, target)``.
    """
    n_A: int
    n_B: int
    rounds: list
    t_A: int = 0
    t_B: int = 0
    c: int = 1
    gate_budget: int | None = None

    def __post_init__(self):
        self.rounds = [(tuple(_as_gate(g) for g in a), tuple(_as_gate(g) for g in b)) for a, b in self.rounds]
        sizes = self.register_sizes
        for a_gates, b_gates in self.rounds:
            for side, gates in (("A", a_gates), ("B", b_gates)):
                for g in gates:
                    for q in g.qubits:
                        reg, idx = parse_qubit(q)
                        if reg not in SIDE_REGISTERS[side]:
                            raise LocalityError(f"{side}-side gate {g.gate} touches {q}")
                        if idx >= sizes[reg]:
                            raise LocalityError(f"qubit {q} outside register {reg} of size {sizes[reg]}")
        if self.gate_budget is not None and self.gate_count > self.gate_budget:
            raise ValueError(f"gate count {self.gate_count} exceeds budget {self.gate_budget}")

    @property
    def register_sizes(self) -> dict:
        return {"A": self.n_A, "Ap": self.t_A, "B": self.n_B, "Bp": self.t_B, "C": self.c}

    @property
    def n_qubits(self) -> int:
        return self.n_A + self.t_A + self.n_B + self.t_B + self.c

    @property
    def gate_count(self) -> int:
        """Gates plus ancilla preparations plus single-qubit measurements."""
        gates = sum(len(a) + len(b) for a, b in self.rounds)
        return gates + self.t_A + self.t_B + self.c + 2 * self.c * len(self.rounds)

    def qubit_index(self, label: str) -> int:
        reg, idx = parse_qubit(label)
        sizes = self.register_sizes
        if idx >= sizes[reg]:
            raise ValueError(f"qubit {label} outside register {reg} of size {sizes[reg]}")
        offset = 0
        for r in REGISTERS:
            if r == reg:
                return offset + idx
            offset += sizes[r]
        raise AssertionError

    def output_qubits(self) -> tuple[list[int], list[int]]:
        a = [self.qubit_index(f"A{i}") for i in range(self.n_A)] + [self.qubit_index(f"Ap{i}") for i in range(self.t_A)]
        b = [self.qubit_index(f"B{i}") for i in range(self.n_B)] + [self.qubit_index(f"Bp{i}") for i in range(self.t_B)]
        return a, b

    def to_dict(self) -> dict:
        return {
            "n_A": self.n_A, "n_B": self.n_B, "t_A": self.t_A, "t_B": self.t_B, "c": self.c,
            "gate_budget": self.gate_budget,
            "rounds": [{"A": [g.to_dict() for g in a], "B": [g.to_dict() for g in b]} for a, b in self.rounds],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LoccCircuit":
        rounds = [(r.get("A", []), r.get("B", [])) for r in data["rounds"]]
        return cls(data["n_A"], data["n_B"], rounds, data.get("t_A", 0), data.get("t_B", 0), data.get("c", 1),
                   data.get("gate_budget"))


@dataclass
class KeyedLoccMap:
    base: LoccCircuit
    key_len: int

    def __post_init__(self):
        for a, b in self.base.rounds:
            for g in a + b:
                if any(not 0 <= i < self.key_len for i in g.key_controls):
                    raise ValueError(f"gate {g} reads a key bit outside key_len={self.key_len}")


def parse_qubit(label: str) -> tuple[str, int]:
    m = _QUBIT_RE.match(label)
    if not m:
        raise ValueError(f"cannot parse qubit label {label!r}")
    return m.group(1), int(m.group(2))


def _gate_matrix(g: Gate) -> np.ndarray:
    base, n_ctrl = GATES[g.gate]
    dim = 2 ** (n_ctrl + 1)
    U = np.eye(dim, dtype=complex)
    U[dim - 2:, dim - 2:] = base
    return U


def _apply_unitary(T: np.ndarray, U: np.ndarray, qubits: list[int], n: int) -> np.ndarray:
    k = len(qubits)
    Ut = U.reshape([2] * (2 * k))
    T = np.tensordot(Ut, T, axes=(list(range(k, 2 * k)), qubits))
    T = np.moveaxis(T, list(range(k)), qubits)
    cols = [q + n for q in qubits]
    T = np.tensordot(Ut.conj(), T, axes=(list(range(k, 2 * k)), cols))
    return np.moveaxis(T, list(range(k)), cols)


def _dephase(T: np.ndarray, q: int, n: int) -> np.ndarray:
    shape = [1] * (2 * n)
    shape[q] = shape[q + n] = 2
    return T * np.eye(2).reshape(shape)


def _reset(T: np.ndarray, q: int, n: int) -> np.ndarray:
    traced = np.trace(T, axis1=q, axis2=q + n)  # removes both axes
    out = np.zeros_like(T)
    idx = [slice(None)] * (2 * n)
    idx[q] = 0
    idx[q + n] = 0
    out[tuple(idx)] = traced
    return out


def _resolve(gates, key: str | None):
    for g in gates:
        if g.key_controls:
            if key is None:
                raise ValueError("circuit has key-controlled gates but no key was supplied")
            if not all(key[i] == "1" for i in g.key_controls):
                continue
        yield g


def _embed_input(circuit: LoccCircuit, mat: np.ndarray) -> np.ndarray:
    """``mat`` on ``A (x) B`` padded with ``|0>`` ancillas, as a ``(2,)*2n`` tensor."""
    n = circuit.n_qubits
    n_anc = circuit.t_A + circuit.t_B + circuit.c
    zero = np.zeros((2**n_anc, 2**n_anc), dtype=complex)
    zero[0, 0] = 1
    full = np.kron(mat, zero)  # order A B Ap Bp C
    sizes = [circuit.n_A, circuit.n_B, circuit.t_A, circuit.t_B, circuit.c]
    groups, start = [], 0
    for s in sizes:
        groups.append(list(range(start, start + s)))
        start += s
    perm = groups[0] + groups[2] + groups[1] + groups[3] + groups[4]
    return linalg.permute_subsystems(full, [2] * n, perm).reshape([2] * (2 * n))


def _run(circuit: LoccCircuit, mat: np.ndarray, key: str | None = None) -> np.ndarray:
    n = circuit.n_qubits
    T = _embed_input(circuit, mat)
    c_qubits = [circuit.qubit_index(f"C{i}") for i in range(circuit.c)]
    for a_gates, b_gates in circuit.rounds:
        for gates in (a_gates, b_gates):
            for g in _resolve(gates, key):
                T = _apply_op(T, g, circuit, n)
            for q in c_qubits:
                T = _dephase(T, q, n)
    return T


def _apply_op(T, g, circuit, n):
    qubits = [circuit.qubit_index(q) for q in g.qubits]
    if g.gate == "reset":
        return _reset(T, qubits[0], n)
    return _apply_unitary(T, _gate_matrix(g), qubits, n)


def _reduce(T: np.ndarray, n: int, keep: list[int]) -> np.ndarray:
    mat = T.reshape(2**n, 2**n)
    ret = linalg.partial_trace(mat, [2] * n, keep) if len(keep) < n else linalg.permute_subsystems(mat, [2] * n, keep)
    return ret


def _check_input(circuit: LoccCircuit, state: BipartiteState):
    if (state.dA, state.dB) != (2**circuit.n_A, 2**circuit.n_B):
        raise linalg.DimensionError(
            f"input dims {(state.dA, state.dB)} do not match registers (2^{circuit.n_A}, 2^{circuit.n_B})")


def apply_locc(circuit: LoccCircuit | KeyedLoccMap, state: BipartiteState, key: str | None = None) -> BipartiteState:
    """Exact output on ``(A Ap : B Bp)`` after all rounds."""
    if isinstance(circuit, KeyedLoccMap):
        if key is None or len(key) != circuit.key_len:
            raise ValueError(f"a key of length {circuit.key_len} is required")
        circuit = circuit.base
    _check_input(circuit, state)
    T = _run(circuit, state.mat, key)
    a, b = circuit.output_qubits()
    out = _reduce(T, circuit.n_qubits, a + b)
    return BipartiteState(linalg.hermitian_part(out), 2 ** len(a), 2 ** len(b))


def apply_locc_branches(circuit: LoccCircuit, state: BipartiteState, key: str | None = None):
    """Per-outcome simulation: list of ``(probability, outcome record, output matrix)``.

    Each measurement splits every branch with the computational-basis
    projectors of ``C``; this is an independent path to the dephasing result.
    """
    _check_input(circuit, state)
    n = circuit.n_qubits
    c_qubits = [circuit.qubit_index(f"C{i}") for i in range(circuit.c)]
    branches = [((), _embed_input(circuit, state.mat))]
    for a_gates, b_gates in circuit.rounds:
        for gates in (a_gates, b_gates):
            new = []
            for record, T in branches:
                for g in _resolve(gates, key):
                    T = _apply_op(T, g, circuit, n)
                for outcome in itertools.product((0, 1), repeat=circuit.c):
                    P = T.copy()
                    for q, bit in zip(c_qubits, outcome):
                        proj = np.zeros((2, 2))
                        proj[bit, bit] = 1
                        P = _apply_unitary(P, proj, [q], n)
                    new.append((record + (outcome,), P))
            branches = new
    a, b = circuit.output_qubits()
    out = []
    for record, T in branches:
        mat = _reduce(T, n, a + b)
        p = float(np.trace(mat).real)
        if p > 1e-15:
            out.append((p, record, mat / p))
    return out


def choi_matrix(circuit: LoccCircuit) -> np.ndarray:
    """Choi matrix ``sum_ij |i><j| (x) Gamma(|i><j|)`` over the input ``A B``."""
    d_in = 2 ** (circuit.n_A + circuit.n_B)
    a, b = circuit.output_qubits()
    blocks = []
    for i in range(d_in):
        row = []
        for j in range(d_in):
            E = np.zeros((d_in, d_in), dtype=complex)
            E[i, j] = 1
            row.append(_reduce(_run(circuit, E), circuit.n_qubits, a + b))
        blocks.append(row)
    return np.block(blocks)


def bell_pairs(m: int) -> np.ndarray:
    """``Phi^{(x) m}`` as a ket ordered ``a_1..a_m b_1..b_m``."""
    psi = linalg.tensor_power(linalg.bell_state(), m)
    perm = [2 * i for i in range(m)] + [2 * i + 1 for i in range(m)]
    return linalg.permute_subsystems(psi, [2] * (2 * m), perm)


def _pairs_fidelity(circuit: LoccCircuit, T: np.ndarray, pairs) -> float:
    a = [circuit.qubit_index(p[0]) for p in pairs]
    b = [circuit.qubit_index(p[1]) for p in pairs]
    rho = _reduce(T, circuit.n_qubits, a + b)
    target = bell_pairs(len(pairs))
    return float(np.real(np.vdot(target, rho @ target)))


@dataclass
class DistillationCertificate:
    family: KeyedEnsemble
    circuit: LoccCircuit | KeyedLoccMap
    target_m: int
    eps: float
    output_pairs: list | None = None
    per_key_deficit: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return bool(self.per_key_deficit) and max(self.per_key_deficit.values()) <= self.eps


def _base(circuit):
    return circuit.base if isinstance(circuit, KeyedLoccMap) else circuit


def distillation_deficit(cert: DistillationCertificate) -> tuple[float, bool]:
    """Per key, ``1 - F(output pairs, Phi^{(x) m})``; valid iff the maximum is at most ``eps``."""
    base = _base(cert.circuit)
    pairs = cert.output_pairs or [(f"A{i}", f"B{i}") for i in range(cert.target_m)]
    if len(pairs) != cert.target_m:
        raise ValueError(f"{len(pairs)} output pairs designated for target_m={cert.target_m}")
    for a, b in pairs:
        if parse_qubit(a)[0] not in ("A", "Ap") or parse_qubit(b)[0] not in ("B", "Bp"):
            raise ValueError(f"output pair ({a}, {b}) must be an (A-side, B-side) qubit pair")
    keyed = isinstance(cert.circuit, KeyedLoccMap)
    cert.per_key_deficit = {}
    for k in cert.family.keys:
        state = cert.family.bipartite(k)
        _check_input(base, state)
        T = _run(base, state.mat, k if keyed else None)
        cert.per_key_deficit[k] = max(0.0, 1 - _pairs_fidelity(base, T, pairs))
    worst = max(cert.per_key_deficit.values())
    return worst, worst <= cert.eps


def cost_deficit(family: KeyedEnsemble, circuit: LoccCircuit | KeyedLoccMap, n_in: int, eps: float):
    """Per key, ``1 - F(rho_k, Gamma(k, Phi^{(x) n_in}))`` on the whole output ``(A Ap : B Bp)``.

    Returns ``(max_deficit, valid, per_key)``.
    """
    base = _base(circuit)
    if base.n_A != n_in or base.n_B != n_in:
        raise ValueError(f"circuit registers (n_A={base.n_A}, n_B={base.n_B}) must hold {n_in} input pairs")
    a, b = base.output_qubits()
    if (2 ** len(a), 2 ** len(b)) != tuple(family.dims):
        raise ValueError(f"circuit output dims {(2 ** len(a), 2 ** len(b))} differ from family dims {family.dims}")
    inp = BipartiteState(linalg.ket_to_dm(bell_pairs(n_in)), 2**n_in, 2**n_in)
    keyed = isinstance(circuit, KeyedLoccMap)
    per_key = {}
    for k in family.keys:
        out = apply_locc(circuit, inp, k) if keyed else apply_locc(base, inp)
        per_key[k] = max(0.0, 1 - linalg.fidelity(family.density(k), out.mat))
    worst = max(per_key.values())
    return worst, worst <= eps, per_key


# --- computationally locked entanglement, desk-scale instance -----------------

def pauli_key_unitary(key: str) -> np.ndarray:
    """``X^x Z^z`` on each qubit, with key bits ``x_1 z_1 x_2 z_2 ...``."""
    ops = []
    for i in range(0, len(key), 2):
        x, z = int(key[i]), int(key[i + 1])
        ops.append(np.linalg.matrix_power(_X, x) @ np.linalg.matrix_power(_Z, z))
    return linalg.tensor_product(*ops)


def pauli_keyed_bell_family(n_pairs: int) -> KeyedEnsemble:
    """``(P_k (x) I) Phi^{(x) n} (P_k (x) I)^dagger`` for all ``4**n`` keys."""
    base = bell_pairs(n_pairs)
    dA = 2**n_pairs
    states = {}
    for bits in itertools.product("01", repeat=2 * n_pairs):
        k = "".join(bits)
        states[k] = np.kron(pauli_key_unitary(k), np.eye(dA)) @ base
    return KeyedEnsemble(2 * n_pairs, states, (dA, dA))


def pauli_correction_circuit(n_pairs: int) -> KeyedLoccMap:
    """Alice undoes ``P_k`` using the key: X then Z on each of her qubits."""
    gates = []
    for i in range(n_pairs):
        gates.append(Gate("x", [f"A{i}"], key_controls=[2 * i]))
        gates.append(Gate("z", [f"A{i}"], key_controls=[2 * i + 1]))
    return KeyedLoccMap(LoccCircuit(n_pairs, n_pairs, [(gates, [])], c=1), 2 * n_pairs)


def local_gate_menu(side: str, n_local: int, c: int = 1) -> list[Gate]:
    """Every gate of the toy gate set one party can apply to its data qubits and ``C``."""
    qubits = [f"{side}{i}" for i in range(n_local)] + [f"C{i}" for i in range(c)]
    menu = [Gate(name, [q]) for name in ("h", "x", "z", "s") for q in qubits]
    for q1, q2 in itertools.permutations(qubits, 2):
        menu.append(Gate("cx", [q2], [q1]))
    for q1, q2 in itertools.combinations(qubits, 2):
        menu.append(Gate("cz", [q2], [q1]))
    for q1, q2, q3 in itertools.permutations(qubits, 3):
        if q1 < q2:
            menu.append(Gate("ccx", [q3], [q1, q2]))
    return menu


def _canonical(U: np.ndarray) -> bytes:
    flat = U.reshape(-1)
    i = int(np.argmax(np.abs(flat) > 1e-9))
    V = U * (abs(flat[i]) / flat[i])
    V = np.round(V, 8)
    parts = np.concatenate([V.real.ravel(), V.imag.ravel()]) + 0.0  # maps -0.0 to 0.0
    return parts.tobytes()


def unique_local_unitaries(menu: list[Gate], qubits: list[str], max_len: int) -> list[list[np.ndarray]]:
    """Distinct unitaries (up to phase) reachable with at most ``L`` gates, for each ``L <= max_len``.

    Breadth-first over gate sequences with de-duplication; ``ret[L]`` lists
    every unitary of some sequence with length at most ``L``.
    """
    n = len(qubits)
    index = {q: i for i, q in enumerate(qubits)}
    mats = []
    for g in menu:
        k = len(g.qubits)
        op = _gate_matrix(g)
        full = np.eye(2**n, dtype=complex).reshape([2] * (2 * n))
        full = np.tensordot(op.reshape([2] * (2 * k)), full, axes=(list(range(k, 2 * k)), [index[q] for q in g.qubits]))
        full = np.moveaxis(full, list(range(k)), [index[q] for q in g.qubits])
        mats.append(full.reshape(2**n, 2**n))
    seen = {_canonical(np.eye(2**n)): np.eye(2**n, dtype=complex)}
    frontier = list(seen.values())
    out = [list(seen.values())]
    for _ in range(max_len):
        new = []
        for U in frontier:
            for G in mats:
                V = G @ U
                key = _canonical(V)
                if key not in seen:
                    seen[key] = V
                    new.append(V)
        frontier = new
        out.append(list(seen.values()))
    return out


@dataclass
class LockedDemoReport:
    n_pairs: int
    keys: list
    with_key_deficits: dict
    key_average_error: float
    key_average_ppt_min_eig: float
    mixture_distance: float
    no_key_best_fidelity: float
    no_key_circuits: int
    no_key_sequences: int
    max_gates: int
    scope: str

    @property
    def passed(self) -> bool:
        return (max(self.with_key_deficits.values()) <= 1e-9 and self.key_average_error <= 1e-12
                and self.key_average_ppt_min_eig >= -1e-12 and self.no_key_best_fidelity <= 0.5 + 1e-9)


def _count_sequences(menu_size: int, max_len: int) -> int:
    return sum(menu_size**k for k in range(max_len + 1))


def locked_entanglement_demo(n_pairs: int = 1, max_gates: int | None = None) -> LockedDemoReport:
    """Pauli-keyed Bell pairs: distillable with the key, maximally mixed without it.

    The no-key part enumerates every one-round circuit built from
    :func:`local_gate_menu` with at most ``max_gates`` gates in total (default
    6 for one pair, 3 for two) and reports the best fidelity of the output
    pair ``(A0, B0)`` with a Bell state. A key-oblivious circuit acts on the
    key average, so this fidelity is the key-averaged success.
    """
    if n_pairs not in (1, 2):
        raise ValueError("n_pairs must be 1 or 2")
    max_gates = (6 if n_pairs == 1 else 3) if max_gates is None else max_gates
    fam = pauli_keyed_bell_family(n_pairs)
    d = fam.dim
    cert = DistillationCertificate(fam, pauli_correction_circuit(n_pairs), n_pairs, 1e-9)
    distillation_deficit(cert)
    avg = fam.mixture()
    avg_err = float(np.abs(avg - np.eye(d) / d).max())
    dA = fam.dims[0]
    ppt = float(np.linalg.eigvalsh(linalg.partial_transpose(avg, (dA, dA)))[0])
    mix_dist = linalg.trace_distance(avg, np.eye(d) / d)

    # exhaustive key-oblivious search: A-side unitary, measure C, B-side unitary
    a_qubits = [f"A{i}" for i in range(n_pairs)] + ["C0"]
    b_qubits = [f"B{i}" for i in range(n_pairs)] + ["C0"]
    menu_a, menu_b = local_gate_menu("A", n_pairs), local_gate_menu("B", n_pairs)
    ua = unique_local_unitaries(menu_a, a_qubits, max_gates)
    ub = unique_local_unitaries(menu_b, b_qubits, max_gates)
    # qubit order: A0..A_{n-1}, B0..B_{n-1}, C0
    n = 2 * n_pairs + 1
    rho_in = np.kron(avg, np.diag([1, 0]).astype(complex))
    perm_a = list(range(n_pairs)) + [n - 1] + list(range(n_pairs, 2 * n_pairs))  # A.., C, B..
    perm_b = list(range(n_pairs, 2 * n_pairs)) + [n - 1] + list(range(n_pairs))  # B.., C, A..
    target = np.kron(linalg.ket_to_dm(linalg.bell_state()), np.eye(2 ** (n - 2)))  # on A0 B0, rest identity
    order_t = [0, n_pairs] + [i for i in range(n) if i not in (0, n_pairs)]
    inv_t = list(np.argsort(order_t))
    target = linalg.permute_subsystems(target, [2] * n, inv_t)
    best = 0.0
    for la in range(max_gates + 1):
        lb = max_gates - la
        states = {}
        for U in ua[la]:
            full = np.kron(U, np.eye(2**n_pairs))  # on A.., C, B..
            Ufull = linalg.permute_subsystems(full, [2] * n, list(np.argsort(perm_a)))
            rho = Ufull @ rho_in @ Ufull.conj().T
            rho = _dephase(rho.reshape([2] * (2 * n)), n - 1, n).reshape(2**n, 2**n)
            states[_canonical(np.round(rho, 10))] = rho
        rhos = np.array(list(states.values()))
        obs = []
        for V in ub[lb]:
            full = np.kron(V, np.eye(2**n_pairs))  # on B.., C, A..
            Vfull = linalg.permute_subsystems(full, [2] * n, list(np.argsort(perm_b)))
            obs.append(Vfull.conj().T @ target @ Vfull)
        obs = np.array(obs)
        fids = np.real(np.einsum("jab,iba->ij", obs, rhos))
        best = max(best, float(fids.max()))
    n_seq = sum(_count_sequences(len(menu_a), la) * len(menu_b) ** (max_gates - la)
                for la in range(max_gates + 1))
    scope = (f"exhaustive over one-round circuits with at most {max_gates} gates from "
             f"{{h, x, z, s, cx, cz, ccx}} on each party's qubits and C; not all LOCC maps")
    return LockedDemoReport(n_pairs, fam.keys, dict(cert.per_key_deficit), avg_err, ppt, mix_dist, best,
                            sum(len(ua[la]) * len(ub[max_gates - la]) for la in range(max_gates + 1)),
                            n_seq, max_gates, scope)


def random_toy_circuit(rng: np.random.Generator, n_A: int = 1, n_B: int = 1, rounds: int | None = None,
                       max_gates_per_side: int = 4) -> LoccCircuit:
    rounds = int(rng.integers(1, 3)) if rounds is None else rounds
    menu_a, menu_b = local_gate_menu("A", n_A), local_gate_menu("B", n_B)
    rounds_ = []
    for _ in range(rounds):
        a = [menu_a[i] for i in rng.integers(0, len(menu_a), size=rng.integers(0, max_gates_per_side + 1))]
        b = [menu_b[i] for i in rng.integers(0, len(menu_b), size=rng.integers(0, max_gates_per_side + 1))]
        rounds_.append((a, b))
    return LoccCircuit(n_A, n_B, rounds_, c=1)
