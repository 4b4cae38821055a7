"""
Compiling an Ising chain to CNOT and Rz gates
==============================================

Every term of the longitudinal Ising Hamiltonian is diagonal, so a single
Trotter step reproduces exp(-iHt) exactly. This script checks that against
the brute-force diagonal, counts gates, and checks the circuit against a
heavy-hex coupling map.
"""

import numpy as np

from qubench.circuits import (
    CouplingMap,
    TrotterPlan,
    build_ising_circuit,
    circuit_unitary,
    heavy_hex_127,
    unitary_distance,
    validate_layout,
)
from qubench.hamiltonians import IsingParams, ising_energies
from qubench.noise import census_of
from qubench.statevec import probabilities, run_circuit

rng = np.random.default_rng(3)
params = IsingParams(4, tuple(rng.uniform(-1, 1, 4)), tuple(rng.uniform(-1, 1, 3)))
t = 0.8

# exp(-iHt) is just a diagonal of phases
exact = np.diag(np.exp(-1j * ising_energies(params) * t))
for steps in (1, 3, 8):
    U = circuit_unitary(build_ising_circuit(params, TrotterPlan(t, steps)))
    print(f"steps = {steps}: distance to exp(-iHt) = {unitary_distance(U, exact):.2e}")

# Starting from the uniform superposition, only relative phases change
circuit = build_ising_circuit(params, TrotterPlan(t, 1), prepare_superposition=True)
probs = probabilities(run_circuit(circuit), (0, 1))
print("two-qubit readout after H layer + evolution:", {k: round(v, 4) for k, v in probs.items()})

census = census_of(circuit)
print(f"gate census: {census.n_single} single-qubit, {census.n_two} CNOT")

# Nearest-neighbour bonds fit a line; a 12-spin chain also fits a heavy-hex row
print("violations on a line:", validate_layout(circuit, CouplingMap.linear(4)))
chain = build_ising_circuit(IsingParams(12), TrotterPlan(1.0))
print("violations of a 12-chain on heavy-hex-127:", validate_layout(chain, heavy_hex_127()))
