"""Time the state-vector simulator on random circuits and print a markdown table.

Usage: python3 scripts/throughput.py [--depth 1000] [--repeats 3]
"""

import argparse
import os
import platform
import time

import numpy as np

from qubench.statevec import Circuit, Gate, run_circuit

KINDS = ("H", "X", "SX", "P", "RZ", "CNOT")


def random_gates(rng, n, depth):
    gates = []
    for kind in rng.choice(KINDS, size=depth):
        if kind == "CNOT":
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(Gate("CNOT", int(t), control=int(c)))
        else:
            theta = float(rng.uniform(-np.pi, np.pi)) if kind in ("P", "RZ") else 0.0
            gates.append(Gate(str(kind), int(rng.integers(n)), theta=theta))
    return gates


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qubits", default="12,16,18,20,22")
    ap.add_argument("--depth", type=int, default=1000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    run_circuit(Circuit(3, random_gates(rng, 3, 20)))  # load compiled kernels

    print(f"machine: {platform.machine()}, {os.cpu_count()} logical CPU(s), "
          f"Python {platform.python_version()}")
    print()
    print("| qubits | gates | best time (s) | gates/s | amplitude updates/s |")
    print("|---:|---:|---:|---:|---:|")
    for n in (int(v) for v in args.qubits.split(",")):
        circuit = Circuit(n, random_gates(rng, n, args.depth))
        best = min(_timed(circuit) for _ in range(args.repeats))
        rate = args.depth / best
        print(f"| {n} | {args.depth} | {best:.3f} | {rate:,.0f} | {rate * 2**n:.3g} |")


def _timed(circuit):
    start = time.perf_counter()
    run_circuit(circuit)
    return time.perf_counter() - start


if __name__ == "__main__":
    main()
