"""Dense statevector simulation for desk-scale verification.

Only what the equivalence checker needs: apply a gate list to a batch of
state columns and build small unitaries. Measurements and barriers carry no
unitary action and are skipped.
"""
from __future__ import annotations

import math

import numpy as np

from .circuit import Gate, GateKind
from .errors import SimulationLimitError

_SQ2 = 1.0 / math.sqrt(2.0)

_FIXED_1Q = {
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.H: np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
}

_FIXED_2Q = {
    # basis order |q0 q1> = |00>,|01>,|10>,|11>; q0 = first operand (control)
    GateKind.CX: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
    GateKind.SWAP: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def gate_matrix(gate: Gate) -> np.ndarray | None:
    """Unitary of a gate, or None for MEASURE/BARRIER."""
    if gate.kind in _FIXED_1Q:
        return _FIXED_1Q[gate.kind]
    if gate.kind in _FIXED_2Q:
        return _FIXED_2Q[gate.kind]
    if gate.kind is GateKind.RZ:
        t = gate.angle
        return np.array(
            [[np.exp(-1j * t / 2), 0], [0, np.exp(1j * t / 2)]], dtype=complex
        )
    return None


def apply_gate(state: np.ndarray, matrix: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Apply a k-qubit unitary to columns of ``state`` (shape (2**n, m)).

    Qubit 0 is the most significant axis of the basis index.
    """
    m = state.shape[1]
    k = len(qubits)
    psi = state.reshape([2] * n + [m])
    src = list(qubits)
    psi = np.moveaxis(psi, src, range(k))
    rest = psi.shape[k:]
    psi = matrix @ psi.reshape(2**k, -1)
    psi = psi.reshape([2] * k + list(rest))
    psi = np.moveaxis(psi, range(k), src)
    return psi.reshape(2**n, m)


def apply_gates(state: np.ndarray, gates, n: int) -> np.ndarray:
    for g in gates:
        mat = gate_matrix(g)
        if mat is None:
            continue
        state = apply_gate(state, mat, g.qubits, n)
    return state


def circuit_unitary(gates, n: int, limit: int = 10) -> np.ndarray:
    """Full (2**n, 2**n) unitary of a gate list."""
    if n > limit:
        raise SimulationLimitError(f"{n} qubits exceeds the simulation guard ({limit})")
    return apply_gates(np.eye(2**n, dtype=complex), gates, n)


def allclose_up_to_global_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Amplitude-wise comparison with one shared phase factor."""
    if a.shape != b.shape:
        return False
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) < tol:
        return bool(np.max(np.abs(a)) < tol)
    phase = a[idx] / b[idx]
    if abs(abs(phase) - 1.0) > 1e-6:
        return False
    return bool(np.max(np.abs(a - phase * b)) <= tol)
