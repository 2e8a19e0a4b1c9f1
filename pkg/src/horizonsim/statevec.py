"""Dense pure-state vectors and the three gate kinds of the evaporation model.

Basis convention: the first declared qubit is the most significant bit, so
for qubits (m, g, minus, plus) the index of ``|1 0 0 0>`` is ``0b1000``.
All functions return fresh states; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InvalidGateError, NonUnitaryError, NotNormalizedError

MAX_QUBITS = 24
UNITARY_TOL = 1e-9
NORM_TOL = 1e-9


@dataclass(frozen=True)
class UnitaryVerdict:
    accepted: bool
    deviation: float

    def __bool__(self):
        return self.accepted


def check_unitary(matrix) -> UnitaryVerdict:
    """Return whether ``matrix`` is unitary, with the max-norm of U^dagger U - I."""
    u = np.asarray(matrix, dtype=complex)
    if u.shape != (2, 2):
        raise InvalidGateError(f"expected a 2x2 matrix, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        return UnitaryVerdict(False, float("inf"))
    deviation = float(np.max(np.abs(u.conj().T @ u - np.eye(2))))
    return UnitaryVerdict(deviation <= UNITARY_TOL, deviation)


class Matrix2:
    """A 2x2 unitary, checked once at construction."""

    __slots__ = ("_data",)

    def __init__(self, entries):
        data = np.array(entries, dtype=complex).reshape(2, 2)
        verdict = check_unitary(data)
        if not verdict:
            raise NonUnitaryError(
                f"matrix is not unitary (deviation {verdict.deviation:.3g})",
                verdict.deviation,
            )
        data.setflags(write=False)
        self._data = data

    @property
    def array(self) -> np.ndarray:
        return self._data

    def inverse(self) -> "Matrix2":
        return Matrix2(self._data.conj().T)

    def __eq__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        return bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        return hash(self._data.tobytes())

    def __repr__(self):
        return f"Matrix2({self._data.tolist()!r})"


@dataclass(frozen=True)
class Unitary1Q:
    matrix: Matrix2
    target: int


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise InvalidGateError(f"CNOT control equals target ({self.control})")


@dataclass(frozen=True)
class SWAP:
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise InvalidGateError(f"SWAP on a single qubit ({self.a})")


GateSpec = Union[Unitary1Q, CNOT, SWAP]


def gate_qubits(gate: GateSpec) -> tuple:
    if isinstance(gate, Unitary1Q):
        return (gate.target,)
    if isinstance(gate, CNOT):
        return (gate.control, gate.target)
    if isinstance(gate, SWAP):
        return (gate.a, gate.b)
    raise InvalidGateError(f"unknown gate {gate!r}")


class PureState:
    """Normalized amplitude vector over ``n_qubits`` qubits (read-only)."""

    __slots__ = ("_amps", "_n")

    def __init__(self, amplitudes, *, check=True):
        amps = np.array(amplitudes, dtype=complex).ravel()
        n = int(amps.size).bit_length() - 1
        if amps.size < 2 or 1 << n != amps.size:
            raise InvalidGateError(f"state length {amps.size} is not a power of two >= 2")
        if n > MAX_QUBITS:
            raise InvalidGateError(f"{n} qubits exceeds the cap of {MAX_QUBITS}")
        if check:
            if not np.all(np.isfinite(amps)):
                raise NotNormalizedError("state has non-finite amplitudes")
            norm2 = float(np.vdot(amps, amps).real)
            if abs(norm2 - 1.0) > NORM_TOL:
                raise NotNormalizedError(f"state norm^2 is {norm2!r}, expected 1")
        amps.setflags(write=False)
        self._amps = amps
        self._n = n

    @property
    def n_qubits(self) -> int:
        return self._n

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    def norm_squared(self) -> float:
        return float(np.vdot(self._amps, self._amps).real)

    def tensor(self) -> np.ndarray:
        """Amplitudes as an array of shape (2,)*n, axis k = qubit k."""
        return self._amps.reshape((2,) * self._n)

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return bool(np.array_equal(self._amps, other._amps))

    __hash__ = None

    def __repr__(self):
        return f"PureState(n_qubits={self._n}, amplitudes={self._amps.tolist()!r})"


def init_product_state(one_qubit_states: Sequence) -> PureState:
    """Tensor product of single-qubit factors ``(a0, a1)``, first factor most significant."""
    if len(one_qubit_states) == 0:
        raise NotNormalizedError("need at least one qubit factor")
    if len(one_qubit_states) > MAX_QUBITS:
        raise InvalidGateError(f"{len(one_qubit_states)} qubits exceeds the cap of {MAX_QUBITS}")
    amps = np.ones(1, dtype=complex)
    for k, factor in enumerate(one_qubit_states):
        pair = np.asarray(factor, dtype=complex)
        if pair.shape != (2,) or not np.all(np.isfinite(pair)):
            raise NotNormalizedError(f"qubit {k}: factor must be two finite amplitudes", qubit=k)
        norm2 = float(np.sum(np.abs(pair) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalizedError(
                f"qubit {k}: |a0|^2 + |a1|^2 = {norm2!r}, expected 1", qubit=k
            )
        amps = np.kron(amps, pair)
    return PureState(amps, check=False)


def _check_index(state: PureState, q) -> int:
    if isinstance(q, (bool, np.bool_)) or not isinstance(q, (int, np.integer)):
        raise InvalidGateError(f"qubit index must be an integer, got {q!r}")
    if not 0 <= q < state.n_qubits:
        raise InvalidGateError(f"qubit index {q} out of range for {state.n_qubits} qubits")
    return int(q)


def _bit(n, q):
    return 1 << (n - 1 - q)


def apply_unitary1q(state: PureState, gate: Unitary1Q) -> PureState:
    q = _check_index(state, gate.target)
    n = state.n_qubits
    u = gate.matrix.array if isinstance(gate.matrix, Matrix2) else Matrix2(gate.matrix).array
    psi = state.amplitudes.reshape(1 << q, 2, 1 << (n - 1 - q))
    out = np.einsum("ij,ajb->aib", u, psi)
    return PureState(out.ravel(), check=False)


def apply_cnot(state: PureState, control: int, target: int) -> PureState:
    c = _check_index(state, control)
    t = _check_index(state, target)
    if c == t:
        raise InvalidGateError(f"CNOT control equals target ({c})")
    n = state.n_qubits
    idx = np.arange(1 << n)
    src = np.where(idx & _bit(n, c), idx ^ _bit(n, t), idx)
    return PureState(state.amplitudes[src], check=False)


def apply_swap(state: PureState, a: int, b: int) -> PureState:
    a = _check_index(state, a)
    b = _check_index(state, b)
    if a == b:
        raise InvalidGateError(f"SWAP on a single qubit ({a})")
    n = state.n_qubits
    idx = np.arange(1 << n)
    ba, bb = _bit(n, a), _bit(n, b)
    differ = ((idx & ba) != 0) != ((idx & bb) != 0)
    src = np.where(differ, idx ^ (ba | bb), idx)
    return PureState(state.amplitudes[src], check=False)


def apply_gate(state: PureState, gate: GateSpec) -> PureState:
    if isinstance(gate, Unitary1Q):
        return apply_unitary1q(state, gate)
    if isinstance(gate, CNOT):
        return apply_cnot(state, gate.control, gate.target)
    if isinstance(gate, SWAP):
        return apply_swap(state, gate.a, gate.b)
    raise InvalidGateError(f"unknown gate {gate!r}")
