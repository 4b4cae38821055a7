"""``qubench`` command line.

Machine-readable output (CSV/JSON) goes to stdout or ``--output``; human
summaries go to stderr. Exit codes: 0 success, 1 parameter or domain error
(including bad flags), 2 I/O or parse error.

Frequencies are given in GHz and times in ns; Ising fields, couplings and
evolution time are dimensionless (hbar = 1).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bench import (
    brisbane_like_path,
    default_growth,
    emit_plot,
    load_calibration,
    load_table,
    load_table1,
    run_benchmark,
    table1_check,
    table_text,
)
from .circuits import (
    TrotterPlan,
    build_ising_circuit,
    build_jc_circuit,
    circuit_unitary,
    exact_profile,
    unitary_distance,
    MAX_UNITARY_QUBITS,
)
from .errors import CalibrationError, QubenchError
from .hamiltonians import (
    CpbParams,
    IsingParams,
    JcParams,
    cooper_pair_spectrum,
    ghz_to_rad,
    jc_excited_population,
)
from .noise import ErrorRates, GateCensus, fidelity, total_error
from .statevec import ShotCounts, StateVector, probabilities, run_circuit, sample_counts

EXIT_OK, EXIT_PARAM, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.replace(",", " ").split()]


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.replace(",", " ").split()]


def _write_text(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _csv(rows, header) -> str:
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _fmt(v: float) -> str:
    return format(float(v), ".12g")


# -- subcommands ------------------------------------------------------------------


def cmd_spectrum(args) -> int:
    params = CpbParams(args.ec, args.ej, args.ng, args.cutoff)
    levels = cooper_pair_spectrum(params, args.levels)
    rows = [(i, _fmt(e)) for i, e in enumerate(levels)]
    _write_text(_csv(rows, ("level", "energy")), args.output)
    if len(levels) > 1:
        print(f"E1 - E0 = {levels[1] - levels[0]:.6g}", file=sys.stderr)
    return EXIT_OK


def cmd_jc(args) -> int:
    wq, wr, g = ghz_to_rad(args.wq), ghz_to_rad(args.wr), ghz_to_rad(args.g)
    params = JcParams(wq, wr, g, args.fock_cutoff)
    times_ns = np.linspace(0.0, args.tmax, args.points)
    times = times_ns * 1e-9
    pe = np.atleast_1d(jc_excited_population(params, times))
    header = ["t_ns", "p_excited"]
    columns = [times_ns, pe]
    if args.circuit:
        pe_circ = []
        start = StateVector.basis(2, "01")  # qubit wire excited, cavity empty
        for t in times:
            circuit = build_jc_circuit(1, (g, wq - wr), TrotterPlan(float(t), args.steps))
            pe_circ.append(probabilities(run_circuit(circuit, start), (0,))["1"])
        header.append("p_excited_circuit")
        columns.append(np.array(pe_circ))
    rows = [[_fmt(v) for v in row] for row in zip(*columns)]
    _write_text(_csv(rows, header), args.output)
    print(f"min P_e = {float(np.min(pe)):.6f} over {args.points} points", file=sys.stderr)
    return EXIT_OK


def cmd_ising(args) -> int:
    h = args.h if args.h is not None else [0.0] * args.n
    J = args.j if args.j is not None else [0.0] * (args.n - 1)
    if len(J) == 1 and args.n > 2:
        J = J * (args.n - 1)
    if len(h) == 1 and args.n > 1:
        h = h * args.n
    params = IsingParams(args.n, h, J)
    circuit = build_ising_circuit(
        params, TrotterPlan(args.time, args.steps), prepare_superposition=args.hadamard
    )
    evolution = build_ising_circuit(params, TrotterPlan(args.time, args.steps))
    if args.n <= MAX_UNITARY_QUBITS:
        dist = unitary_distance(circuit_unitary(evolution), np.eye(1 << args.n))
        identity = dist < 1e-10
    else:
        identity = args.time == 0 or (not any(h) and not any(J))
    state = run_circuit(circuit)
    report = {
        "n": args.n,
        "time": args.time,
        "steps": args.steps,
        "gates": len(circuit),
        "identity_evolution": bool(identity),
    }
    if args.shots:
        counts = sample_counts(state, None, args.shots, args.seed)
        report["shots"] = args.shots
        report["counts"] = counts.counts
    else:
        report["probabilities"] = {
            k: round(v, 12) for k, v in probabilities(state).items() if v > 1e-15
        }
    _write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", args.output)
    print("evolution is the identity" if identity else "evolution is non-trivial", file=sys.stderr)
    return EXIT_OK


def _load_rates(path: str) -> ErrorRates:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CalibrationError("path", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CalibrationError("json", f"{path} is not valid JSON: {exc}") from None
    if isinstance(doc, dict) and "eps_single" in doc:
        return ErrorRates(float(doc["eps_single"]), float(doc["eps_two"]), float(doc.get("eps_meas", 0.0)))
    return load_calibration(path).rates()


def cmd_noise(args) -> int:
    if args.rates_file:
        rates = _load_rates(args.rates_file)
    else:
        rates = ErrorRates(args.eps1, args.eps2, args.epsm)
    parts = _ints(args.circuit_census)
    if len(parts) not in (2, 3):
        raise UsageError("--circuit-census expects 'n_single,n_two[,measured]'")
    census = GateCensus(parts[0], parts[1], bool(parts[2]) if len(parts) == 3 else True)
    err = total_error(census, rates)
    f = fidelity(err)
    report = {
        "n_single": census.n_single,
        "n_two": census.n_two,
        "measured": census.measured,
        "eps_single": rates.eps_single,
        "eps_two": rates.eps_two,
        "eps_meas": rates.eps_meas,
        "error_total": err,
        "fidelity": f,
        "fidelity_pct": round(100.0 * f, 2),
    }
    _write_text(json.dumps(report, indent=2) + "\n", args.output)
    print(f"E = {err:.6g}, F = {100.0 * f:.2f}%", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    calibration = load_calibration(args.calibration) if args.calibration else None
    rates = calibration.rates() if calibration and not args.default_rates else None
    kwargs = {} if rates is None else {"rates": rates}
    run_dir = run_benchmark(
        args.outdir,
        args.counts,
        models=args.models,
        shots=args.shots,
        seed=args.seed,
        calibration=calibration,
        growth=default_growth(),
        timestamp=args.timestamp,
        **kwargs,
    )
    print(str(run_dir))
    print(f"wrote run to {run_dir}", file=sys.stderr)
    return EXIT_OK


def cmd_table1(args) -> int:
    if not args.check:
        _write_text(table_text(load_table1()), args.output)
        return EXIT_OK
    rows, ok = table1_check()
    out = [
        (r.qubits, r.model, f"{r.error_total:.4f}", f"{r.fidelity_pct:.2f}",
         f"{r.recomputed_pct:.4f}", f"{r.recomputed_pct - r.fidelity_pct:+.4f}")
        for r in rows
    ]
    _write_text(
        _csv(out, ("qubits", "model", "error_total", "fidelity_pct", "recomputed_pct", "residual")),
        args.output,
    )
    worst = max(rows, key=lambda r: r.gap)
    close = sum(r.gap <= 0.05 for r in rows)
    print(
        f"{len(rows)} rows; max |100 exp(-E) - F| = {worst.gap:.4f} "
        f"({worst.model} n={worst.qubits}); {close} rows within 0.05; "
        f"{'PASS' if ok else 'FAIL'}",
        file=sys.stderr,
    )
    return EXIT_OK if ok else EXIT_PARAM


def cmd_plot(args) -> int:
    if args.kind == "state_histogram":
        if args.input:
            data = _load_counts(args.input)
        else:
            data = exact_profile(args.model)
    else:
        data = load_table(args.input) if args.input else load_table1()
    emit_plot(data, args.kind, args.output, title=args.title)
    print(f"wrote {args.output}", file=sys.stderr)
    return EXIT_OK


def _load_counts(path: str):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CalibrationError("path", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CalibrationError("json", f"{path} is not valid JSON: {exc}") from None
    if isinstance(doc, dict) and "counts" in doc:
        doc = doc["counts"]
    if not isinstance(doc, dict) or not doc:
        raise CalibrationError("counts", f"{path}: expected an outcome -> count object")
    if all(isinstance(v, int) for v in doc.values()):
        width = len(next(iter(doc)))
        return ShotCounts(doc, sum(doc.values()), width)
    return {k: float(v) for k, v in doc.items()}


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qubench", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qubench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
        return sp

    sp = add("spectrum", "Lowest Cooper-pair-box levels in the charge basis.")
    sp.add_argument("--ec", type=float, required=True, help="charging energy E_C (GHz)")
    sp.add_argument("--ej", type=float, required=True, help="Josephson energy E_J (GHz)")
    sp.add_argument("--ng", type=float, default=0.0, help="gate charge n_g (default 0)")
    sp.add_argument("--cutoff", type=int, default=10, help="charge cutoff N_c (default 10)")
    sp.add_argument("--levels", type=int, default=3, help="number of levels k (default 3)")
    sp.set_defaults(func=cmd_spectrum)

    sp = add("jc", "Excited-state population of a Jaynes-Cummings qubit starting in |e,0>.")
    sp.add_argument("--wq", type=float, required=True, help="qubit frequency (GHz)")
    sp.add_argument("--wr", type=float, required=True, help="cavity frequency (GHz)")
    sp.add_argument("--g", type=float, required=True, help="coupling g (GHz)")
    sp.add_argument("--tmax", type=float, required=True, help="final time (ns)")
    sp.add_argument("--points", type=int, default=101, help="number of time points (default 101)")
    sp.add_argument("--fock-cutoff", type=int, default=4, help="photon cutoff (default 4)")
    sp.add_argument("--circuit", action="store_true",
                    help="also simulate the Trotterized gate circuit")
    sp.add_argument("--steps", type=int, default=32, help="Trotter steps for --circuit (default 32)")
    sp.add_argument("--seed", type=int, default=0, help="accepted for uniformity; unused")
    sp.set_defaults(func=cmd_jc)

    sp = add("ising", "Compile and run a longitudinal Ising chain circuit.")
    sp.add_argument("--n", type=int, required=True, help="number of spins")
    sp.add_argument("--h", type=_floats, default=None,
                    help="fields h_l, comma separated; one value is broadcast (default 0)")
    sp.add_argument("--j", type=_floats, default=None,
                    help="couplings J_l, comma separated; one value is broadcast (default 0)")
    sp.add_argument("--time", type=float, default=1.0, help="evolution time (default 1)")
    sp.add_argument("--steps", type=int, default=1, help="Trotter steps (default 1)")
    sp.add_argument("--hadamard", action="store_true", help="prepend a Hadamard layer")
    sp.add_argument("--shots", type=int, default=0, help="sample this many shots (default: exact)")
    sp.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    sp.set_defaults(func=cmd_ising)

    sp = add("noise", "Gate-census error budget and fidelity exp(-E).")
    sp.add_argument("--rates-file", default=None,
                    help="JSON with eps_single/eps_two/eps_meas, or a calibration file")
    sp.add_argument("--eps1", type=float, default=2.596e-4, help="single-qubit gate error")
    sp.add_argument("--eps2", type=float, default=6.560e-3, help="two-qubit gate error")
    sp.add_argument("--epsm", type=float, default=0.0534, help="measurement error")
    sp.add_argument("--circuit-census", default="12,2,1",
                    help="n_single,n_two[,measured] (default 12,2,1)")
    sp.set_defaults(func=cmd_noise)

    sp = add("bench", "Qubit-count sweep into runs/<timestamp>-<seed>/.")
    sp.add_argument("--counts", type=_ints, default=[2, 12, 22],
                    help="qubit counts, comma separated (default 2,12,22)")
    sp.add_argument("--models", type=lambda s: [m for m in s.replace(",", " ").split()],
                    default=["JC", "Ising"], help="models, comma separated (default JC,Ising)")
    sp.add_argument("--calibration", default=None, help="calibration JSON file")
    sp.add_argument("--default-rates", action="store_true",
                    help="use the published rates even when a calibration is given")
    sp.add_argument("--shots", type=int, default=1000, help="shots per simulated row")
    sp.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    sp.add_argument("--outdir", default="runs", help="results root (default runs)")
    sp.add_argument("--timestamp", default=None, help="override the run timestamp")
    sp.set_defaults(func=cmd_bench)

    sp = add("table1", "Print the bundled published table, or check its internal consistency.")
    sp.add_argument("--check", action="store_true", help="print per-row residuals of 100 exp(-E) - F")
    sp.set_defaults(func=cmd_table1)

    sp = add("plot", "Render a table or histogram as SVG.")
    sp.add_argument("--kind", required=True,
                    choices=("fidelity_vs_qubits", "error_vs_qubits", "freq_vs_qubits", "state_histogram"))
    sp.add_argument("--input", default=None,
                    help="table CSV/JSON, or counts JSON for state_histogram (default: bundled data)")
    sp.add_argument("--model", default="JC", help="profile model when no histogram input is given")
    sp.add_argument("--title", default=None, help="chart title")
    sp.set_defaults(func=cmd_plot)
    # SVG always goes to a file
    sp._option_string_actions["--output"].required = True
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_PARAM
    except CalibrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (QubenchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
