"""Gate-census error budget, exponential fidelity and linear error growth.

The budget is additive: E = n_single * eps_single + n_two * eps_two
(+ eps_meas once when the circuit is measured), and the fidelity is exp(-E).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _rng
from .errors import ParameterError
from .statevec import Circuit, Gate, p, x


@dataclass(frozen=True)
class ErrorRates:
    eps_single: float
    eps_two: float
    eps_meas: float = 0.0

    def __post_init__(self):
        for name in ("eps_single", "eps_two", "eps_meas"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ParameterError(f"{name} must be in [0, 1], got {value}")


# Average single- and two-qubit gate error and the measurement error of the
# published 2-qubit budget.
DEFAULT_RATES = ErrorRates(eps_single=2.596e-4, eps_two=6.560e-3, eps_meas=0.0534)
ZERO_RATES = ErrorRates(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class GateCensus:
    n_single: int
    n_two: int
    measured: bool = False

    def __post_init__(self):
        if self.n_single < 0 or self.n_two < 0:
            raise ParameterError("gate counts must be >= 0")


def census_of(circuit: Circuit) -> GateCensus:
    n_two = sum(1 for gate in circuit.gates if gate.is_two_qubit)
    return GateCensus(len(circuit.gates) - n_two, n_two, bool(circuit.measured_qubits))


def total_error(census: GateCensus, rates: ErrorRates) -> float:
    err = census.n_single * rates.eps_single + census.n_two * rates.eps_two
    if census.measured:
        err += rates.eps_meas
    return err


def fidelity(E: float) -> float:
    if E < 0:
        raise ParameterError(f"error exponent must be >= 0, got {E}")
    return math.exp(-E)


def fidelity_pct(E: float) -> float:
    return 100.0 * fidelity(E)


@dataclass(frozen=True)
class ErrorGrowthModel:
    """E(n) = base_error + slope * (n - 2)."""

    base_error: float
    slope: float
    model: str = "JC"

    def __post_init__(self):
        if self.base_error < 0 or self.slope < 0:
            raise ParameterError("base_error and slope must be >= 0")


def fit_growth_model(
    rows: Iterable[tuple[int, float]],
    fit_range: tuple[int, int],
    model: str = "JC",
) -> ErrorGrowthModel:
    """Least-squares line through the (qubits, E) rows with qubits in ``fit_range``."""
    lo, hi = fit_range
    pts = [(int(n), float(e)) for n, e in rows if lo <= n <= hi]
    if len({n for n, _ in pts}) < 2:
        raise ParameterError(f"need at least 2 distinct qubit counts in {fit_range}")
    ns = np.array([n for n, _ in pts], dtype=float) - 2.0
    es = np.array([e for _, e in pts])
    # centred normal equations; offsetting E by its first row (harmless since
    # sum(dn) == 0) makes constant rows give a slope of exactly zero
    dn, de = ns - ns.mean(), es - es[0]
    slope = float(np.dot(dn, de) / np.dot(dn, dn))
    base = float(es.mean() - slope * ns.mean())
    return ErrorGrowthModel(max(base, 0.0), max(slope, 0.0), model)


def predict(model: ErrorGrowthModel, n: int) -> tuple[float, float]:
    if n < 2:
        raise ParameterError("the growth model starts at 2 qubits")
    err = model.base_error + model.slope * (n - 2)
    return err, fidelity(err)


# -- stochastic Pauli injection -------------------------------------------------

_PAULIS = ("X", "Y", "Z")


def pauli_gates(label: str, q: int) -> list[Gate]:
    """X, Z = P(pi), and Y up to phase as Z then X."""
    if label == "X":
        return [x(q)]
    if label == "Z":
        return [p(math.pi, q)]
    return [p(math.pi, q), x(q)]


def inject_pauli_noise(circuit: Circuit, rates: ErrorRates, seed: int) -> Circuit:
    """Copy of ``circuit`` with random Pauli errors appended after gates.

    After each gate, with probability eps_single (or eps_two for CNOT), every
    qubit the gate touched receives a uniformly drawn X, Y or Z. If the circuit
    is measured, with probability eps_meas an X is placed on one uniformly
    drawn measured qubit just before readout.
    """
    rng = _rng.stream(seed)
    noisy = Circuit(circuit.num_qubits, measured_qubits=circuit.measured_qubits)
    for gate in circuit.gates:
        noisy.append(gate)
        eps = rates.eps_two if gate.is_two_qubit else rates.eps_single
        if eps > 0 and rng.random() < eps:
            for q in gate.qubits:
                noisy.extend(pauli_gates(_PAULIS[rng.integers(3)], q))
    if circuit.measured_qubits and rates.eps_meas > 0 and rng.random() < rates.eps_meas:
        q = circuit.measured_qubits[rng.integers(len(circuit.measured_qubits))]
        noisy.append(x(q))
    return noisy
