"""Pure-state simulation of small gate circuits.

Qubit 0 is the least-significant bit of the basis index. Bitstrings are
written most-significant qubit first, so ``"10"`` on two qubits is the state
with qubit 1 set and qubit 0 clear.

The kernels update a private copy of the amplitude array in place; the
public functions never mutate their inputs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from . import _rng
from .errors import ParameterError, ResourceError

DEFAULT_MAX_SIM_QUBITS = 24
NORM_TOL = 1e-10

SINGLE_QUBIT_KINDS = ("H", "X", "SX", "P", "RZ")
GATE_KINDS = SINGLE_QUBIT_KINDS + ("CNOT",)
_PARAMETRIC = ("P", "RZ")

_SQRT_HALF = 1.0 / math.sqrt(2.0)
_H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT_HALF
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
_MATRICES = {"H": _H, "X": _X, "SX": _SX}


def max_sim_qubits() -> int:
    """Simulation cutoff; ``QUBENCH_MAX_SIM_QUBITS`` overrides the default."""
    raw = os.environ.get("QUBENCH_MAX_SIM_QUBITS")
    if raw is None or raw == "":
        return DEFAULT_MAX_SIM_QUBITS
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(f"QUBENCH_MAX_SIM_QUBITS must be an integer, got {raw!r}")
    if value < 1:
        raise ParameterError("QUBENCH_MAX_SIM_QUBITS must be >= 1")
    return value


@dataclass(frozen=True)
class Gate:
    """One gate application.

    ``kind`` is one of H, X, SX (square root of X), P, RZ or CNOT. ``theta``
    is the angle in radians for P and RZ and ignored otherwise.
    """

    kind: str
    target: int
    control: int | None = None
    theta: float = 0.0

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ParameterError(f"unknown gate kind {self.kind!r}")
        if self.target < 0:
            raise ParameterError(f"negative target index {self.target}")
        if self.kind == "CNOT":
            if self.control is None:
                raise ParameterError("CNOT needs a control qubit")
            if self.control < 0:
                raise ParameterError(f"negative control index {self.control}")
            if self.control == self.target:
                raise ParameterError("control and target must differ")
        elif self.control is not None:
            raise ParameterError(f"{self.kind} takes no control qubit")
        if not math.isfinite(self.theta):
            raise ParameterError("gate angle must be finite")

    @property
    def qubits(self) -> tuple[int, ...]:
        if self.control is None:
            return (self.target,)
        return (self.control, self.target)

    @property
    def is_two_qubit(self) -> bool:
        return self.kind == "CNOT"

    def matrix(self) -> np.ndarray:
        """The gate unitary; 4x4 for CNOT in (control, target) bit order."""
        if self.kind == "H":
            return _H.copy()
        if self.kind == "X":
            return _X.copy()
        if self.kind == "SX":
            return _SX.copy()
        if self.kind == "P":
            return np.diag([1.0, np.exp(1j * self.theta)])
        if self.kind == "RZ":
            half = 0.5 * self.theta
            return np.diag([np.exp(-1j * half), np.exp(1j * half)])
        # basis |control target>, control is the high bit
        return np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
        )

    def __str__(self) -> str:
        if self.kind == "CNOT":
            return f"CNOT({self.control},{self.target})"
        if self.kind in _PARAMETRIC:
            return f"{self.kind}({self.theta:.6g})@{self.target}"
        return f"{self.kind}@{self.target}"


def h(q: int) -> Gate:
    return Gate("H", q)


def x(q: int) -> Gate:
    return Gate("X", q)


def sx(q: int) -> Gate:
    return Gate("SX", q)


def p(theta: float, q: int) -> Gate:
    return Gate("P", q, theta=float(theta))


def rz(theta: float, q: int) -> Gate:
    return Gate("RZ", q, theta=float(theta))


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", target, control=control)


@dataclass
class Circuit:
    """An ordered gate list over ``num_qubits`` wires.

    ``measured_qubits`` is the readout register; its order fixes the bit order
    of outcome keys (the last listed qubit is the leftmost character).
    """

    num_qubits: int
    gates: list[Gate] = field(default_factory=list)
    measured_qubits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ParameterError("a circuit needs at least one qubit")
        self.gates = list(self.gates)
        self.measured_qubits = tuple(int(q) for q in self.measured_qubits)
        for gate in self.gates:
            self._check(gate)
        _check_subset(self.measured_qubits, self.num_qubits)

    def _check(self, gate: Gate) -> None:
        for q in gate.qubits:
            if q >= self.num_qubits:
                raise ParameterError(
                    f"{gate} touches qubit {q} on a {self.num_qubits}-qubit circuit"
                )

    def append(self, gate: Gate) -> "Circuit":
        self._check(gate)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for gate in gates:
            self.append(gate)
        return self

    def __len__(self) -> int:
        return len(self.gates)


@dataclass
class StateVector:
    """Normalized amplitudes of an ``num_qubits``-qubit pure state."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ParameterError("num_qubits must be >= 1")
        if self.num_qubits > max_sim_qubits():
            raise ResourceError(
                f"{self.num_qubits} qubits exceeds max_sim_qubits={max_sim_qubits()}"
            )
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.num_qubits,):
            raise ParameterError(
                f"expected {1 << self.num_qubits} amplitudes, got shape {amps.shape}"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ParameterError(f"state is not normalized (norm^2 = {norm!r})")
        self.amplitudes = amps

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        return cls.basis(num_qubits, 0)

    @classmethod
    def basis(cls, num_qubits: int, index: int | str) -> "StateVector":
        """Computational basis state from an index or an MSB-first bitstring."""
        if isinstance(index, str):
            if len(index) != num_qubits or set(index) - {"0", "1"}:
                raise ParameterError(f"bad bitstring {index!r} for {num_qubits} qubits")
            index = int(index, 2)
        if not 0 <= index < (1 << num_qubits):
            raise ParameterError(f"basis index {index} out of range")
        if num_qubits > max_sim_qubits():
            raise ResourceError(
                f"{num_qubits} qubits exceeds max_sim_qubits={max_sim_qubits()}"
            )
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    def norm_error(self) -> float:
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0)

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())


@dataclass
class ShotCounts:
    """Outcome histogram keyed by bitstrings over the measured register."""

    counts: dict[str, int]
    total_shots: int
    width: int

    def __post_init__(self):
        self.counts = {k: int(v) for k, v in sorted(self.counts.items())}
        for key, value in self.counts.items():
            if len(key) != self.width:
                raise ParameterError(f"outcome {key!r} does not have width {self.width}")
            if value < 0:
                raise ParameterError(f"negative count for {key!r}")
        if sum(self.counts.values()) != self.total_shots:
            raise ParameterError("counts do not sum to total_shots")

    def get(self, key: str) -> int:
        return self.counts.get(key, 0)

    def frequencies(self) -> dict[str, float]:
        return {k: v / self.total_shots for k, v in self.counts.items()}


def _check_subset(qubits: Sequence[int], num_qubits: int) -> None:
    if len(set(qubits)) != len(qubits):
        raise ParameterError(f"duplicate qubit in {tuple(qubits)}")
    for q in qubits:
        if not 0 <= q < num_qubits:
            raise ParameterError(f"qubit {q} out of range for {num_qubits} qubits")


# -- kernels -----------------------------------------------------------------
# Loops are compiled with numba; each visits every amplitude pair once.


@njit(cache=True)
def _kernel_dense(amps, q, m00, m01, m10, m11):
    stride = 1 << q
    for base in range(0, amps.shape[0], 2 * stride):
        for i in range(base, base + stride):
            a = amps[i]
            b = amps[i + stride]
            amps[i] = m00 * a + m01 * b
            amps[i + stride] = m10 * a + m11 * b


@njit(cache=True)
def _kernel_diag(amps, q, d0, d1):
    stride = 1 << q
    for base in range(0, amps.shape[0], 2 * stride):
        for i in range(base, base + stride):
            amps[i] *= d0
            amps[i + stride] *= d1


@njit(cache=True)
def _kernel_cnot(amps, control, target):
    cbit = 1 << control
    tbit = 1 << target
    for i in range(amps.shape[0]):
        if (i & cbit) and not (i & tbit):
            j = i | tbit
            tmp = amps[i]
            amps[i] = amps[j]
            amps[j] = tmp


def _apply_inplace(amps: np.ndarray, n: int, gate: Gate) -> None:
    for q in gate.qubits:
        if q >= n:
            raise ParameterError(f"{gate} touches qubit {q} on a {n}-qubit state")
    kind = gate.kind
    if kind == "CNOT":
        _kernel_cnot(amps, gate.control, gate.target)
    elif kind == "RZ":
        half = 0.5 * gate.theta
        _kernel_diag(amps, gate.target, complex(np.exp(-1j * half)), complex(np.exp(1j * half)))
    elif kind == "P":
        _kernel_diag(amps, gate.target, 1.0 + 0j, complex(np.exp(1j * gate.theta)))
    else:
        m = _MATRICES[kind]
        _kernel_dense(amps, gate.target, m[0, 0], m[0, 1], m[1, 0], m[1, 1])


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Return ``gate`` applied to ``state``; the input is left untouched."""
    amps = state.amplitudes.copy()
    _apply_inplace(amps, state.num_qubits, gate)
    return StateVector(state.num_qubits, amps)


def run_circuit(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    """Apply every gate of ``circuit`` in order, starting from ``|0...0>`` by default."""
    n = circuit.num_qubits
    if initial is None:
        initial = StateVector.zero(n)
    elif initial.num_qubits != n:
        raise ParameterError(
            f"circuit has {n} qubits but the initial state has {initial.num_qubits}"
        )
    amps = initial.amplitudes.copy()
    for gate in circuit.gates:
        _apply_inplace(amps, n, gate)
    return StateVector(n, amps)


def probabilities(state: StateVector, qubits: Sequence[int] | None = None) -> dict[str, float]:
    """Marginal Born-rule probabilities over ``qubits``, every outcome included.

    The key's rightmost character is ``qubits[0]``.
    """
    n = state.num_qubits
    qubits = tuple(range(n)) if qubits is None else tuple(qubits)
    _check_subset(qubits, n)
    m = len(qubits)
    probs = _marginal(state, qubits)
    return {format(i, f"0{m}b"): float(probs[i]) for i in range(1 << m)}


def _marginal(state: StateVector, qubits: tuple[int, ...]) -> np.ndarray:
    n = state.num_qubits
    full = np.abs(state.amplitudes) ** 2
    # axis k of the tensor holds qubit n-1-k
    tensor = full.reshape((2,) * n)
    keep = [n - 1 - q for q in qubits]
    drop = tuple(ax for ax in range(n) if ax not in keep)
    reduced = tensor.sum(axis=drop) if drop else tensor
    remaining = [ax for ax in range(n) if ax in keep]
    # reorder so that qubits[-1] is the leading (most significant) axis
    order = [remaining.index(n - 1 - q) for q in reversed(qubits)]
    return np.transpose(reduced, order).reshape(-1)


def sample_counts(
    state: StateVector,
    qubits: Sequence[int] | None,
    shots: int,
    seed: int,
    stream: int = 0,
) -> ShotCounts:
    """Multinomial shot histogram over ``qubits``.

    Deterministic in ``(state, qubits, shots, seed, stream)``; ``stream`` lets
    a caller draw independent samples from one master seed.
    """
    if shots < 1:
        raise ParameterError("shots must be >= 1")
    n = state.num_qubits
    qubits = tuple(range(n)) if qubits is None else tuple(qubits)
    _check_subset(qubits, n)
    m = len(qubits)
    probs = np.clip(_marginal(state, qubits), 0.0, None)
    probs = probs / probs.sum()
    draws = _rng.stream(seed, stream).multinomial(int(shots), probs)
    counts = {format(i, f"0{m}b"): int(c) for i, c in enumerate(draws) if c}
    return ShotCounts(counts, int(shots), m)
