"""Gate-level compilation of the Ising chain and Jaynes-Cummings pairs.

Both builders emit only H, X, SX, P, RZ and CNOT.

Ising step (dt = t / steps)::

    RZ(-2 h_l dt) on every qubit l
    CNOT(l, l+1) . RZ(2 J_l dt) on l+1 . CNOT(l, l+1)   for every bond l

Every term is diagonal, so one step is already exact.

Jaynes-Cummings pair k occupies wires 2k (qubit) and 2k+1 (cavity mode,
truncated to 0/1 photons). The simulated generator is

    (delta/2) Z_q + (g/2) (X_q X_c + Y_q Y_c)

and one first-order step is, in order::

    RZ(delta dt) on q
    H q, H c, CNOT(q,c), RZ(g dt) c, CNOT(q,c), H q, H c             # XX part
    SX q, SX c, CNOT(q,c), RZ(g dt) c, CNOT(q,c), SX q, X q, SX c, X c  # YY part

SX followed later by SX.X (= SX^-1) rotates Z into Y, so the second sandwich is
the YY exponential. The XX and YY parts commute; only the detuning term
produces Trotter error.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import CalibrationError, ParameterError, ResourceError
from .hamiltonians import IsingParams
from .statevec import (
    GATE_KINDS,
    Circuit,
    Gate,
    ShotCounts,
    cnot,
    h,
    probabilities,
    run_circuit,
    rz,
    sample_counts,
    sx,
    x,
)

MAX_UNITARY_QUBITS = 10


@dataclass(frozen=True)
class TrotterPlan:
    time: float
    steps: int = 1
    order: str = "first"

    def __post_init__(self):
        if self.steps < 1:
            raise ParameterError("steps must be >= 1")
        if self.time < 0:
            raise ParameterError("time must be >= 0")
        if self.order != "first":
            raise ParameterError("only first-order Trotter splitting is supported")

    @property
    def dt(self) -> float:
        return self.time / self.steps


# -- builders ------------------------------------------------------------------


def zz_block(a: int, b: int, angle: float) -> list[Gate]:
    """exp(-i angle/2 Z_a Z_b) as a CNOT sandwich."""
    return [cnot(a, b), rz(angle, b), cnot(a, b)]


def build_ising_circuit(
    params: IsingParams,
    plan: TrotterPlan,
    prepare_superposition: bool = False,
    measure: bool = True,
) -> Circuit:
    n = params.N
    circuit = Circuit(n, measured_qubits=tuple(range(n)) if measure else ())
    if prepare_superposition:
        circuit.extend(h(q) for q in range(n))
    dt = plan.dt
    for _ in range(plan.steps):
        for q, field in enumerate(params.h):
            circuit.append(rz(-2.0 * field * dt, q))
        for bond, coupling in enumerate(params.J):
            circuit.extend(zz_block(bond, bond + 1, 2.0 * coupling * dt))
    return circuit


def _jc_step(q: int, c: int, g: float, delta: float, dt: float) -> list[Gate]:
    angle = g * dt
    return [
        rz(delta * dt, q),
        h(q), h(c), *zz_block(q, c, angle), h(q), h(c),
        sx(q), sx(c), *zz_block(q, c, angle), sx(q), x(q), sx(c), x(c),
    ]


def build_jc_circuit(
    pairs: int,
    couplings: Sequence[tuple[float, float]] | tuple[float, float],
    plan: TrotterPlan,
    measure: bool = True,
) -> Circuit:
    """Trotterized Jaynes-Cummings evolution for ``pairs`` qubit/cavity pairs.

    ``couplings`` is one ``(g, delta)`` tuple shared by every pair, or one tuple
    per pair.
    """
    if pairs < 1:
        raise ParameterError("pairs must be >= 1")
    if len(couplings) == 2 and not isinstance(couplings[0], (tuple, list)):
        couplings = [tuple(couplings)] * pairs
    couplings = [tuple(map(float, pair)) for pair in couplings]
    if len(couplings) != pairs:
        raise ParameterError(f"need {pairs} (g, delta) pairs, got {len(couplings)}")
    width = 2 * pairs
    circuit = Circuit(width, measured_qubits=tuple(range(width)) if measure else ())
    for _ in range(plan.steps):
        for k, (g, delta) in enumerate(couplings):
            circuit.extend(_jc_step(2 * k, 2 * k + 1, g, delta, plan.dt))
    return circuit


def jc_pair_generator(g: float, delta: float) -> np.ndarray:
    """4x4 generator the pair circuit approximates; wire 0 is the qubit (low bit)."""
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Y = np.array([[0, -1j], [1j, 0]])
    Z = np.diag([1.0, -1.0]).astype(complex)
    eye = np.eye(2)
    # kron(high, low): cavity wire is the high bit
    return 0.5 * delta * np.kron(eye, Z) + 0.5 * g * (np.kron(X, X) + np.kron(Y, Y))


# -- unitaries -----------------------------------------------------------------


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense 2^n x 2^n unitary, built by contracting each gate into the identity."""
    n = circuit.num_qubits
    if n > MAX_UNITARY_QUBITS:
        raise ResourceError(f"circuit_unitary is limited to {MAX_UNITARY_QUBITS} qubits")
    dim = 1 << n
    U = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for gate in circuit.gates:
        if gate.kind == "CNOT":
            axes = [n - 1 - gate.control, n - 1 - gate.target]
            m = gate.matrix().reshape(2, 2, 2, 2)
            U = np.tensordot(m, U, axes=([2, 3], axes))
            U = np.moveaxis(U, [0, 1], axes)
        else:
            ax = n - 1 - gate.target
            U = np.tensordot(gate.matrix(), U, axes=([1], [ax]))
            U = np.moveaxis(U, 0, ax)
    return U.reshape(dim, dim)


def unitary_distance(U: np.ndarray, V: np.ndarray) -> float:
    """min over phi of ||U - e^{i phi} V||_F."""
    overlap = np.vdot(V, U)
    # align the phase first; the expanded-norm formula loses half the digits
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(U - phase * V))


# -- coupling maps ---------------------------------------------------------------


@dataclass(frozen=True)
class CouplingMap:
    num_qubits: int
    edges: frozenset

    def __init__(self, num_qubits: int, edges: Iterable[tuple[int, int]]):
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ParameterError(f"self-loop on qubit {u}")
            if not (0 <= u < num_qubits and 0 <= v < num_qubits):
                raise ParameterError(f"edge ({u},{v}) outside {num_qubits} qubits")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "num_qubits", int(num_qubits))
        object.__setattr__(self, "edges", frozenset(normalized))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @classmethod
    def linear(cls, n: int) -> "CouplingMap":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def ring(cls, n: int) -> "CouplingMap":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])


def heavy_hex_127() -> CouplingMap:
    """A 127-qubit heavy-hex lattice in the Eagle-family numbering.

    Seven rows (14, 15, 15, 15, 15, 15, 14 qubits) joined by bridge qubits
    that alternate between even columns 0,4,8,12 and 2,6,10,14.
    """
    row_lengths = [14, 15, 15, 15, 15, 15, 14]
    row_first_col = [0, 0, 0, 0, 0, 0, 1]
    edges = []
    index = 0
    rows = []
    for r, length in enumerate(row_lengths):
        ids = list(range(index, index + length))
        edges.extend(zip(ids, ids[1:]))
        rows.append(ids)
        index += length
        if r == len(row_lengths) - 1:
            break
        cols = (0, 4, 8, 12) if r % 2 == 0 else (2, 6, 10, 14)
        bridges = list(range(index, index + 4))
        index += 4
        rows.append(list(zip(bridges, cols)))
    # second pass: bridge qubits join the row above and the row below
    for k in range(1, len(rows), 2):
        above, below = rows[k - 1], rows[k + 1]
        ra = (k - 1) // 2
        rb = ra + 1
        for bridge, col in rows[k]:
            edges.append((above[col - row_first_col[ra]], bridge))
            edges.append((bridge, below[col - row_first_col[rb]]))
    return CouplingMap(index, edges)


_COMMENT = re.compile(r"#.*$")


def load_coupling_map(path: str | Path) -> CouplingMap:
    """Parse ``qubits N`` followed by one ``u v`` edge per line; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CalibrationError("path", f"cannot read coupling map {path}: {exc}") from exc
    return parse_coupling_map(text)


def parse_coupling_map(text: str) -> CouplingMap:
    num_qubits = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.sub("", raw).strip()
        if not line:
            continue
        parts = line.split()
        if num_qubits is None:
            if len(parts) != 2 or parts[0] != "qubits":
                raise CalibrationError("qubits", f"line {lineno}: expected 'qubits N'")
            num_qubits = _parse_int(parts[1], "qubits", lineno)
            continue
        if len(parts) != 2:
            raise CalibrationError(f"line {lineno}", f"line {lineno}: expected 'u v'")
        edges.append((_parse_int(parts[0], f"line {lineno}", lineno),
                      _parse_int(parts[1], f"line {lineno}", lineno)))
    if num_qubits is None:
        raise CalibrationError("qubits", "missing field: qubits")
    try:
        return CouplingMap(num_qubits, edges)
    except ParameterError as exc:
        raise CalibrationError("edges", str(exc)) from exc


def _parse_int(token: str, key: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise CalibrationError(key, f"line {lineno}: {token!r} is not an integer") from None


def format_coupling_map(cmap: CouplingMap) -> str:
    lines = [f"qubits {cmap.num_qubits}"]
    lines += [f"{u} {v}" for u, v in cmap.sorted_edges()]
    return "\n".join(lines) + "\n"


def validate_layout(circuit: Circuit, cmap: CouplingMap) -> list[tuple[int, int]]:
    """Every CNOT (control, target) that is not an edge of ``cmap``, in circuit order."""
    if cmap.num_qubits < circuit.num_qubits:
        raise ParameterError(
            f"coupling map has {cmap.num_qubits} qubits, circuit needs {circuit.num_qubits}"
        )
    return [
        (gate.control, gate.target)
        for gate in circuit.gates
        if gate.kind == "CNOT" and not cmap.has_edge(gate.control, gate.target)
    ]


def uses_declared_gates(circuit: Circuit) -> bool:
    return all(gate.kind in GATE_KINDS for gate in circuit.gates)


# -- two-qubit frequency profiles -------------------------------------------------
#
# The readout ordering the benchmark has to show is fixed, the circuit
# parameters are not; they are picked by the grid search below and frozen.


@dataclass(frozen=True)
class JcProfile:
    """Preparation angles, then one Trotterized JC pair.

    Each wire starts with SX . RZ(theta) . SX, which leaves it excited with
    probability cos^2(theta/2).
    """

    theta_qubit: float
    theta_cavity: float
    g_t: float
    delta_over_g: float
    steps: int = 4


@dataclass(frozen=True)
class IsingProfile:
    """H layer, exact Ising evolution for time 1, then a second H layer."""

    h: tuple[float, float]
    J: float


JC_GRID = {
    "theta_qubit": tuple(k * math.pi / 8 for k in range(1, 8)),
    "theta_cavity": tuple(k * math.pi / 8 for k in range(1, 8)),
    "g_t": (0.25, 0.5, 0.75, 1.0),
    "delta_over_g": (0.0, 1.0, 2.0),
}

_FIELDS = tuple(k * 0.25 for k in range(-6, 7) if k)
ISING_GRID = {
    "h0": _FIELDS,
    "h1": _FIELDS,
    "J": tuple(k * 0.25 for k in range(-4, 5) if k),
}

# Output of calibrate_jc_profile() / calibrate_ising_profile() over the grids above.
DEFAULT_JC_PROFILE = JcProfile(
    theta_qubit=4 * math.pi / 8, theta_cavity=7 * math.pi / 8, g_t=0.5, delta_over_g=2.0
)
DEFAULT_ISING_PROFILE = IsingProfile(h=(-1.0, -1.25), J=-0.25)


def jc_profile_circuit(profile: JcProfile) -> Circuit:
    g = 1.0
    plan = TrotterPlan(profile.g_t / g, profile.steps)
    circuit = Circuit(2, measured_qubits=(0, 1))
    for wire, theta in ((0, profile.theta_qubit), (1, profile.theta_cavity)):
        circuit.extend([sx(wire), rz(theta, wire), sx(wire)])
    circuit.extend(build_jc_circuit(1, (g, profile.delta_over_g * g), plan, measure=False).gates)
    return circuit


def ising_profile_circuit(profile: IsingProfile) -> Circuit:
    params = IsingParams(2, profile.h, (profile.J,))
    circuit = build_ising_circuit(params, TrotterPlan(1.0, 1), prepare_superposition=True)
    circuit.extend(h(q) for q in range(2))
    return circuit


def profile_circuit(model: str) -> Circuit:
    model = _model_tag(model)
    if model == "JC":
        return jc_profile_circuit(DEFAULT_JC_PROFILE)
    return ising_profile_circuit(DEFAULT_ISING_PROFILE)


def exact_profile(model: str) -> dict[str, float]:
    """Exact two-qubit outcome probabilities of the default benchmark circuit."""
    return probabilities(run_circuit(profile_circuit(model)), (0, 1))


def state_frequency_profile(model: str, shots: int, seed: int) -> ShotCounts:
    """Sampled 2-qubit outcome counts of the default benchmark circuit."""
    state = run_circuit(profile_circuit(model))
    return sample_counts(state, (0, 1), shots, seed)


def _model_tag(model: str) -> str:
    tag = model.strip().upper()
    if tag in ("JC", "JAYNES-CUMMINGS", "JAYNES_CUMMINGS"):
        return "JC"
    if tag in ("ISING", "LISING"):
        return "Ising"
    raise ParameterError(f"unknown model {model!r}; expected JC or Ising")


def ordering_margin(probs: dict[str, float], ascending: bool) -> float:
    """Smallest step between consecutive outcomes 00,01,10,11 in the wanted direction."""
    seq = [probs[k] for k in ("00", "01", "10", "11")]
    steps = [b - a for a, b in zip(seq, seq[1:])]
    if not ascending:
        steps = [-s for s in steps]
    return min(steps)


def calibrate_jc_profile(grid: dict = JC_GRID) -> tuple[JcProfile, float]:
    """Grid point with the widest strictly descending 00 > 01 > 10 > 11 ordering."""
    best, best_margin = None, -math.inf
    for tq, tc, gt, dg in itertools.product(
        grid["theta_qubit"], grid["theta_cavity"], grid["g_t"], grid["delta_over_g"]
    ):
        profile = JcProfile(tq, tc, gt, dg)
        margin = ordering_margin(
            probabilities(run_circuit(jc_profile_circuit(profile)), (0, 1)), ascending=False
        )
        if margin > best_margin + 1e-12:
            best, best_margin = profile, margin
    return best, best_margin


def calibrate_ising_profile(grid: dict = ISING_GRID) -> tuple[IsingProfile, float]:
    """Grid point with the widest strictly ascending 00 < 01 < 10 < 11 ordering."""
    best, best_margin = None, -math.inf
    for h0, h1, J in itertools.product(grid["h0"], grid["h1"], grid["J"]):
        profile = IsingProfile((h0, h1), J)
        margin = ordering_margin(
            probabilities(run_circuit(ising_profile_circuit(profile)), (0, 1)), ascending=True
        )
        if margin > best_margin + 1e-12:
            best, best_margin = profile, margin
    return best, best_margin
