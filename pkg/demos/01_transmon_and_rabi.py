"""
From a Cooper-pair box to vacuum Rabi oscillations
===================================================

Diagonalize the charge-basis Hamiltonian, watch the charge dispersion
collapse as E_J/E_C grows, then follow one excitation swapping between a
qubit and a resonator. Both the matrix exponential and the Trotterized gate
circuit produce the same oscillation.
"""

import math

import numpy as np

from qubench.circuits import TrotterPlan, build_jc_circuit
from qubench.hamiltonians import (
    CpbParams,
    JcParams,
    charge_dispersion,
    cooper_pair_spectrum,
    jc_excited_population,
    transmon_gap_estimate,
)
from qubench.statevec import StateVector, probabilities, run_circuit

# Charge regime: at the sweet spot n_g = 1/2 the gap is set by E_J alone
levels = cooper_pair_spectrum(CpbParams(E_C=1.0, E_J=0.1, n_g=0.5), 3)
print("E_J/E_C = 0.1, n_g = 0.5, lowest levels:", np.round(levels, 4))

# Transmon regime: compare the exact gap with sqrt(8 E_C E_J) - E_C
for ratio in (1, 5, 10, 50):
    E = cooper_pair_spectrum(CpbParams(1.0, float(ratio), 0.0, 30), 2)
    print(f"E_J/E_C = {ratio:>2}: E1-E0 = {E[1] - E[0]:7.3f}, "
          f"estimate = {transmon_gap_estimate(1.0, ratio):7.3f}, "
          f"dispersion = {charge_dispersion(1.0, ratio):.2e}")

# Resonant Jaynes-Cummings pair; energies in units of g
g = 1.0
t = np.linspace(0, math.pi / g, 9)
exact = jc_excited_population(JcParams(5.0, 5.0, g, fock_cutoff=3), t)

# Same dynamics on two wires: qubit on wire 0, cavity (0 or 1 photon) on wire 1
circuit_pe = []
for ti in t:
    circuit = build_jc_circuit(1, (g, 0.0), TrotterPlan(float(ti), 16), measure=False)
    state = run_circuit(circuit, StateVector.basis(2, "01"))
    circuit_pe.append(probabilities(state, (0,))["1"])

print("\n  g t    P_e exact   P_e circuit   cos^2(g t)")
for ti, a, b in zip(t, exact, circuit_pe):
    print(f"{g * ti:5.2f}   {a:9.6f}   {b:11.6f}   {math.cos(g * ti) ** 2:10.6f}")

# Detuning caps the transfer: at delta = 10 g the population only dips to 1 - 1/26
delta = 10 * g
ts = np.linspace(0, 2, 2001)
pe = jc_excited_population(JcParams(5.0 + delta, 5.0, g, 3), ts)
print(f"\ndelta = 10 g: min P_e = {pe.min():.6f}  (1 - 1/26 = {1 - 1 / 26:.6f})")
