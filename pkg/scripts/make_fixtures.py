"""Regenerate the bundled device fixtures in src/qubench/data/.

    python scripts/make_fixtures.py

The calibration snapshot is synthetic: frequencies and error rates are drawn
from a fixed seed around typical values for a 127-qubit heavy-hex device, with
frequencies kept inside 4.60-5.06 GHz.
"""

import json
from pathlib import Path

import numpy as np

from qubench.circuits import format_coupling_map, heavy_hex_127

DATA = Path(__file__).resolve().parent.parent / "src" / "qubench" / "data"
SEED = 20240127


def main():
    rng = np.random.default_rng(SEED)
    cmap = heavy_hex_127()
    n = cmap.num_qubits
    freqs = np.clip(rng.normal(4.93, 0.08, n), 4.60, 5.06)
    freqs[0], freqs[1] = 4.60, 5.06  # pin both ends of the range
    single = rng.lognormal(np.log(2.596e-4), 0.35, n)
    readout = np.clip(rng.lognormal(np.log(0.02), 0.5, n), 0.003, 0.2)
    edges = cmap.sorted_edges()
    two = rng.lognormal(np.log(6.560e-3), 0.3, len(edges))
    doc = {
        "qubits": n,
        "timestamp": "2024-06-01T00:00:00Z",
        "frequencies_ghz": [round(float(f), 4) for f in freqs],
        "single_gate_error": [float(f"{e:.4g}") for e in single],
        "readout_error": [float(f"{e:.4g}") for e in readout],
        "coupling_map": [[u, v] for u, v in edges],
        "two_qubit_error": {f"{u}-{v}": float(f"{e:.4g}") for (u, v), e in zip(edges, two)},
    }
    (DATA / "brisbane_like.json").write_text(json.dumps(doc, indent=1) + "\n")
    (DATA / "heavy_hex_127.txt").write_text(
        "# 127-qubit heavy-hex coupling map (Eagle-family numbering)\n" + format_coupling_map(cmap)
    )


if __name__ == "__main__":
    main()
