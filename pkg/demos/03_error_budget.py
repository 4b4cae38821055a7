"""
Gate-count error budgets
========================

The fidelity model is exp(-E) with E summed over gates. This script
reproduces the two-qubit anchor, checks the bundled Table 1 rows against
100 exp(-E), and extrapolates the linear error growth fitted at 2 and 12
qubits.
"""

from qubench.bench import default_growth, load_table1, table1_check
from qubench.noise import (
    DEFAULT_RATES,
    GateCensus,
    fidelity,
    predict,
    total_error,
)

# Two-qubit anchor: E = 0.0534
print(f"F(0.0534) = {100 * fidelity(0.0534):.2f}%")

# The itemized budget with the published average rates
census = GateCensus(n_single=12, n_two=2, measured=True)
E = total_error(census, DEFAULT_RATES)
print(f"12 single + 2 two-qubit gates + readout: E = {E:.5f}, F = {100 * fidelity(E):.2f}%")

# Row-by-row consistency of the published table
rows, ok = table1_check()
print("\n qubits  model   E        F_table  100exp(-E)")
for r in rows:
    flag = "  <-" if r.gap > 0.05 else ""
    print(f"{r.qubits:>6}  {r.model:<6} {r.error_total:.4f}   {r.fidelity_pct:6.2f}   "
          f"{r.recomputed_pct:8.4f}{flag}")
print("within bounds:", ok)

# Linear growth from the first two rows of each model
growth = default_growth()
table = {(r.model, r.qubits): r.error_total for r in load_table1()}
for model, g in growth.items():
    print(f"\n{model}: E(n) = {g.base_error:.4f} + {g.slope:.5f} (n - 2)")
    for n in (22, 62, 102, 126):
        E_fit, F_fit = predict(g, n)
        print(f"  n = {n:>3}: fit {E_fit:.4f} (F = {100 * F_fit:5.2f}%), table {table[(model, n)]:.4f}")
