"""JSON fixtures for keyed ensembles, LOCC circuits and reports.

Ensemble documents look like::

    {"dims": [2, 2], "key_len": 1,
     "states": {"0": [[re, im], ...],            # ket
                "1": [[[re, im], ...], ...]}}    # density matrix, row-major

Entries follow the A-major index order of the ``dA x dB`` space. Floats are
written with ``repr`` precision, so a save/load round trip is bit-identical.

Circuit documents hold the register sizes and a list of rounds, each with
``"A"`` and ``"B"`` gate lists of ``{"gate", "targets", "controls"}``
entries (plus optional ``"key_controls"``).
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import linalg
from .locc import KeyedLoccMap, LoccCircuit
from .resource import KeyedEnsemble


class FormatError(ValueError):
    """Malformed fixture document."""


def _encode(arr: np.ndarray):
    arr = np.asarray(arr, dtype=complex)
    if arr.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in arr]
    return [_encode(row) for row in arr]


def _decode(data) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as err:
        raise FormatError(f"state entries must be [re, im] pairs: {err}") from None
    if arr.ndim not in (2, 3) or arr.shape[-1] != 2:
        raise FormatError(f"state array has shape {arr.shape}; expected (d, 2) or (d, d, 2)")
    return arr[..., 0] + 1j * arr[..., 1]


def ensemble_to_dict(ens: KeyedEnsemble) -> dict:
    return {"dims": list(ens.dims), "key_len": ens.key_len,
            "states": {k: _encode(s) for k, s in ens.states.items()}}


def ensemble_from_dict(doc: dict) -> KeyedEnsemble:
    for field in ("dims", "key_len", "states"):
        if field not in doc:
            raise FormatError(f"missing field {field!r}")
    if not isinstance(doc["states"], dict):
        raise FormatError("'states' must map keys to arrays")
    states = {str(k): _decode(v) for k, v in doc["states"].items()}
    return KeyedEnsemble(int(doc["key_len"]), states, tuple(doc["dims"]))


def save_ensemble(ens: KeyedEnsemble, path) -> None:
    Path(path).write_text(json.dumps(ensemble_to_dict(ens), indent=1) + "\n")


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise FileNotFoundError(f"cannot read {path}: {err}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise FormatError(f"{path}: parse error: {err}") from None


def load_ensemble(path) -> KeyedEnsemble:
    """Load and validate; invalid states raise ``InvalidStateError`` naming the key and invariant."""
    return ensemble_from_dict(_read_json(path))


def save_circuit(circuit: LoccCircuit | KeyedLoccMap, path) -> None:
    if isinstance(circuit, KeyedLoccMap):
        doc = dict(circuit.base.to_dict(), key_len=circuit.key_len)
    else:
        doc = circuit.to_dict()
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_circuit(path) -> LoccCircuit | KeyedLoccMap:
    """A circuit document; a top-level ``key_len`` makes it a keyed map."""
    doc = _read_json(path)
    try:
        base = LoccCircuit.from_dict(doc)
    except KeyError as err:
        raise FormatError(f"{path}: missing field {err}") from None
    if "key_len" in doc:
        return KeyedLoccMap(base, int(doc["key_len"]))
    return base


def save_state(state: linalg.BipartiteState, path) -> None:
    Path(path).write_text(json.dumps({"dims": [state.dA, state.dB], "state": _encode(state.mat)}) + "\n")


def load_state(path) -> linalg.BipartiteState:
    doc = _read_json(path)
    try:
        return linalg.BipartiteState(_decode(doc["state"]), *doc["dims"])
    except KeyError as err:
        raise FormatError(f"{path}: missing field {err}") from None
