"""Benchmark harness: calibration ingest, qubit-count sweeps and result emission.

Rows with ``qubits <= max_sim_qubits()`` are simulated exactly and scored with
the gate-census budget; larger rows fall back to the fitted linear error
model and are flagged ``backend = "analytic"``. Published reference rows
(the bundled table) carry ``backend = "reference"``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import nnls

from . import __version__, _rng, _svg
from .circuits import CouplingMap, TrotterPlan, _model_tag, build_ising_circuit, build_jc_circuit
from .errors import CalibrationError, ParameterError, QubenchError
from .hamiltonians import IsingParams
from .noise import (
    DEFAULT_RATES,
    ErrorGrowthModel,
    ErrorRates,
    census_of,
    fidelity_pct,
    fit_growth_model,
    predict,
    total_error,
)
from .statevec import Circuit, ShotCounts, max_sim_qubits, run_circuit, sample_counts

COLUMNS = (
    "qubits",
    "model",
    "freq_theory_ghz",
    "freq_hw_ghz",
    "fidelity_pct",
    "error_total",
    "backend",
)
# decimals written to CSV, matching the published table
CSV_DECIMALS = {"freq_theory_ghz": 2, "freq_hw_ghz": 2, "fidelity_pct": 2, "error_total": 4}
BACKENDS = ("exact-sim", "analytic", "reference")
READOUT_REGISTER = (0, 1)

# Tolerances of the published-table consistency checks.
TABLE1_MAX_GAP = 2.1
TABLE1_CLOSE_GAP = 0.05
TABLE1_MIN_CLOSE_ROWS = 22
GROWTH_RESIDUAL_BOUND = 5e-4


class OutputError(QubenchError, OSError):
    """A result file could not be written."""


@dataclass
class SweepResult:
    qubits: int
    model: str
    freq_theory_ghz: float
    freq_hw_ghz: float
    fidelity_pct: float
    error_total: float
    backend: str
    counts: ShotCounts | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ParameterError(f"unknown backend {self.backend!r}")
        if not 0.0 < self.fidelity_pct <= 100.0:
            raise ParameterError(f"fidelity_pct {self.fidelity_pct} outside (0, 100]")
        if self.error_total < 0:
            raise ParameterError("error_total must be >= 0")

    def record(self) -> dict:
        rec = {k: getattr(self, k) for k in COLUMNS}
        for key in ("freq_theory_ghz", "freq_hw_ghz"):
            if isinstance(rec[key], float) and math.isnan(rec[key]):
                rec[key] = None
        return rec


# -- published table -------------------------------------------------------------


def table1_path() -> Path:
    return Path(str(resources.files("qubench.data").joinpath("table1.csv")))


def load_table1() -> list[SweepResult]:
    return load_table(table1_path())


def table1_errors(model: str) -> list[tuple[int, float]]:
    tag = _model_tag(model)
    return [(r.qubits, r.error_total) for r in load_table1() if r.model == tag]


def default_growth(fit_range: tuple[int, int] = (2, 12)) -> dict[str, ErrorGrowthModel]:
    """Per-model linear error growth fitted to the published rows in ``fit_range``."""
    return {m: fit_growth_model(table1_errors(m), fit_range, m) for m in ("JC", "Ising")}


@dataclass
class Table1Row:
    qubits: int
    model: str
    error_total: float
    fidelity_pct: float
    recomputed_pct: float

    @property
    def gap(self) -> float:
        return abs(self.recomputed_pct - self.fidelity_pct)


def table1_check(rows: Sequence[SweepResult] | None = None) -> tuple[list[Table1Row], bool]:
    """Recompute 100 exp(-E) for every published row and apply the consistency bounds."""
    rows = load_table1() if rows is None else rows
    out = [
        Table1Row(r.qubits, r.model, r.error_total, r.fidelity_pct, fidelity_pct(r.error_total))
        for r in rows
    ]
    ok = max(r.gap for r in out) <= TABLE1_MAX_GAP and (
        sum(r.gap <= TABLE1_CLOSE_GAP for r in out) >= TABLE1_MIN_CLOSE_ROWS
    )
    return out, ok


# -- calibration -------------------------------------------------------------------


@dataclass
class CalibrationData:
    """Per-qubit and per-edge device calibration snapshot.

    On disk this is a JSON object with keys ``qubits``, ``frequencies_ghz``,
    ``single_gate_error``, ``readout_error`` (arrays of length ``qubits``),
    ``coupling_map`` (list of ``[u, v]``), ``two_qubit_error`` (object keyed
    ``"u-v"`` for edges of the map) and an optional ``timestamp`` string.
    """

    qubits: int
    frequencies_ghz: list[float]
    single_gate_error: list[float]
    two_qubit_error: dict[tuple[int, int], float]
    readout_error: list[float]
    coupling_map: CouplingMap
    timestamp: str = ""

    def rates(self) -> ErrorRates:
        """Device-average rates; the mean readout error stands in for eps_meas."""
        return ErrorRates(
            float(np.mean(self.single_gate_error)),
            float(np.mean(list(self.two_qubit_error.values()))) if self.two_qubit_error else 0.0,
            float(np.mean(self.readout_error)),
        )

    def mean_frequency(self, n: int | None = None) -> float:
        freqs = self.frequencies_ghz if n is None else self.frequencies_ghz[:n]
        return float(np.mean(freqs))

    def to_json(self) -> dict:
        return {
            "qubits": self.qubits,
            "timestamp": self.timestamp,
            "frequencies_ghz": list(self.frequencies_ghz),
            "single_gate_error": list(self.single_gate_error),
            "readout_error": list(self.readout_error),
            "coupling_map": [list(e) for e in self.coupling_map.sorted_edges()],
            "two_qubit_error": {f"{u}-{v}": e for (u, v), e in sorted(self.two_qubit_error.items())},
        }


_EDGE_KEY = re.compile(r"^\s*(\d+)\s*[-,_ ]\s*(\d+)\s*$")


def _require(doc: dict, key: str):
    if key not in doc:
        raise CalibrationError(key, f"missing field: {key}")
    return doc[key]


def _per_qubit(doc: dict, key: str, n: int, lo: float, hi: float, lo_open: bool) -> list[float]:
    values = _require(doc, key)
    if not isinstance(values, list) or len(values) != n:
        raise CalibrationError(key, f"{key}: expected a list of {n} numbers")
    out = []
    for q, v in enumerate(values):
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise CalibrationError(f"{key}[{q}]", f"{key}[{q}]: not a number (qubit {q})")
        bad = (v <= lo if lo_open else v < lo) or v >= hi
        if bad:
            raise CalibrationError(f"{key}[{q}]", f"{key}[{q}]: value {v} out of range (qubit {q})")
        out.append(float(v))
    return out


def parse_calibration(doc) -> CalibrationData:
    if not isinstance(doc, dict):
        raise CalibrationError("qubits", "missing field: qubits")
    n = _require(doc, "qubits")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise CalibrationError("qubits", f"qubits: expected a positive integer, got {n!r}")
    freqs = _per_qubit(doc, "frequencies_ghz", n, 0.0, math.inf, lo_open=True)
    single = _per_qubit(doc, "single_gate_error", n, 0.0, 1.0, lo_open=False)
    readout = _per_qubit(doc, "readout_error", n, 0.0, 1.0, lo_open=False)
    raw_edges = _require(doc, "coupling_map")
    try:
        cmap = CouplingMap(n, [tuple(e) for e in raw_edges])
    except (ParameterError, TypeError, ValueError) as exc:
        raise CalibrationError("coupling_map", f"coupling_map: {exc}") from None
    raw_two = _require(doc, "two_qubit_error")
    if not isinstance(raw_two, dict):
        raise CalibrationError("two_qubit_error", "two_qubit_error: expected an object")
    two = {}
    for key, value in raw_two.items():
        m = _EDGE_KEY.match(key)
        if not m:
            raise CalibrationError(f"two_qubit_error[{key}]", f"two_qubit_error: bad edge key {key!r}")
        u, v = int(m.group(1)), int(m.group(2))
        if not cmap.has_edge(u, v):
            raise CalibrationError(
                f"two_qubit_error[{key}]", f"two_qubit_error: {key!r} is not a coupling-map edge"
            )
        if not isinstance(value, (int, float)) or not 0.0 <= value < 1.0:
            raise CalibrationError(
                f"two_qubit_error[{key}]", f"two_qubit_error[{key}]: value {value!r} out of range"
            )
        two[(min(u, v), max(u, v))] = float(value)
    return CalibrationData(
        qubits=n,
        frequencies_ghz=freqs,
        single_gate_error=single,
        two_qubit_error=two,
        readout_error=readout,
        coupling_map=cmap,
        timestamp=str(doc.get("timestamp", "")),
    )


def load_calibration(path: str | Path) -> CalibrationData:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CalibrationError("path", f"cannot read calibration file {path}: {exc}") from exc
    if not text.strip():
        raise CalibrationError("qubits", "missing field: qubits")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CalibrationError("json", f"calibration file is not valid JSON: {exc}") from None
    return parse_calibration(doc)


def brisbane_like_path() -> Path:
    return Path(str(resources.files("qubench.data").joinpath("brisbane_like.json")))


# -- sweep ---------------------------------------------------------------------------

# Circuit parameters for sweep rows; only the gate census depends on them.
SWEEP_JC_COUPLING = (1.0, 2.0)
SWEEP_JC_TIME = 0.5
SWEEP_ISING_FIELD = -1.0
SWEEP_ISING_COUPLING = -0.25


def model_circuit(model: str, n: int, steps: int = 1) -> Circuit:
    """The n-qubit benchmark circuit for a sweep row.

    JC uses n // 2 qubit/cavity pairs (an odd last wire idles); Ising uses an
    n-spin chain behind a Hadamard layer. The readout register is qubits 0, 1.
    """
    if n < 2:
        raise ParameterError("sweep rows need at least 2 qubits")
    tag = _model_tag(model)
    if tag == "JC":
        body = build_jc_circuit(n // 2, SWEEP_JC_COUPLING, TrotterPlan(SWEEP_JC_TIME, steps), measure=False)
        return Circuit(n, body.gates, measured_qubits=READOUT_REGISTER)
    params = IsingParams(n, (SWEEP_ISING_FIELD,) * n, (SWEEP_ISING_COUPLING,) * (n - 1))
    body = build_ising_circuit(params, TrotterPlan(1.0, steps), prepare_superposition=True, measure=False)
    return Circuit(n, body.gates, measured_qubits=READOUT_REGISTER)


def rates_for_growth(
    model: str,
    growth: ErrorGrowthModel,
    anchors: Sequence[int] = (2, 12),
    base: ErrorRates = DEFAULT_RATES,
    steps: int = 1,
) -> ErrorRates:
    """Gate rates under which the census budget reproduces ``growth`` at ``anchors``.

    The single/two-qubit ratio of ``base`` is kept; a common scale factor and
    the measurement error are fitted by non-negative least squares.
    """
    rows, target = [], []
    for n in anchors:
        c = census_of(model_circuit(model, n, steps))
        rows.append([c.n_single * base.eps_single + c.n_two * base.eps_two, 1.0 if c.measured else 0.0])
        target.append(predict(growth, n)[0])
    (scale, meas), _ = nnls(np.array(rows), np.array(target))
    return ErrorRates(
        float(min(scale * base.eps_single, 1.0)),
        float(min(scale * base.eps_two, 1.0)),
        float(min(meas, 1.0)),
    )


def _lookup_table1(n: int) -> tuple[float, float]:
    for r in load_table1():
        if r.qubits == n:
            return r.freq_theory_ghz, r.freq_hw_ghz
    return math.nan, math.nan


def run_sweep(
    qubit_counts: Sequence[int],
    models: Sequence[str] = ("JC", "Ising"),
    rates: ErrorRates = DEFAULT_RATES,
    growth: dict[str, ErrorGrowthModel] | None = None,
    shots: int = 1000,
    seed: int = 0,
    calibration: CalibrationData | None = None,
    steps: int = 1,
) -> list[SweepResult]:
    """One row per (qubit count, model), in input order.

    Every row gets its own seed derived from ``seed`` and its row index before
    any work starts, so rows are independent of evaluation order.
    """
    if not qubit_counts:
        raise ParameterError("qubit_counts must not be empty")
    if any(n < 2 for n in qubit_counts):
        raise ParameterError("every qubit count must be >= 2")
    growth = default_growth() if growth is None else growth
    limit = max_sim_qubits()
    jobs = [(n, _model_tag(m)) for n in qubit_counts for m in models]
    seeds = [_rng.derive_seed(seed, i) for i in range(len(jobs))]
    results = []
    for (n, tag), row_seed in zip(jobs, seeds):
        theory, hw = _lookup_table1(n)
        if calibration is not None:
            hw = round(calibration.mean_frequency(n), 6)
        if n <= limit:
            circuit = model_circuit(tag, n, steps)
            state = run_circuit(circuit)
            counts = sample_counts(state, circuit.measured_qubits, shots, row_seed) if shots else None
            err = total_error(census_of(circuit), rates)
            backend = "exact-sim"
        else:
            err, _ = predict(growth[tag], n)
            counts = None
            backend = "analytic"
        results.append(
            SweepResult(n, tag, theory, hw, fidelity_pct(err), err, backend, counts=counts)
        )
    return results


def aggregate_shots(runs: Sequence[ShotCounts]) -> ShotCounts:
    """Sum outcome counts of several runs over the same register width."""
    if not runs:
        raise ParameterError("nothing to aggregate")
    width = runs[0].width
    if any(r.width != width for r in runs):
        raise ParameterError("runs measure registers of different widths")
    total: dict[str, int] = {}
    for r in runs:
        for key, value in r.counts.items():
            total[key] = total.get(key, 0) + value
    return ShotCounts(total, sum(r.total_shots for r in runs), width)


def tv_distance(counts: ShotCounts, probs: dict[str, float]) -> float:
    keys = set(counts.counts) | set(probs)
    freqs = counts.frequencies()
    return 0.5 * sum(abs(freqs.get(k, 0.0) - probs.get(k, 0.0)) for k in keys)


# -- emission --------------------------------------------------------------------------


def _csv_cell(key: str, value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if key in CSV_DECIMALS:
        return f"{value:.{CSV_DECIMALS[key]}f}"
    return str(value)


def table_text(results: Iterable[SweepResult], fmt: str = "csv") -> str:
    results = list(results)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(COLUMNS)
        for r in results:
            writer.writerow([_csv_cell(k, getattr(r, k)) for k in COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([r.record() for r in results], indent=2) + "\n"
    raise ParameterError(f"unknown table format {fmt!r}")


def emit_table(results: Iterable[SweepResult], path: str | Path, fmt: str | None = None) -> Path:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "csv")
    text = table_text(results, fmt)
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    return path


def _from_record(rec: dict) -> SweepResult:
    def num(key):
        value = rec.get(key)
        if value is None or value == "":
            return math.nan
        return float(value)

    return SweepResult(
        qubits=int(rec["qubits"]),
        model=str(rec["model"]),
        freq_theory_ghz=num("freq_theory_ghz"),
        freq_hw_ghz=num("freq_hw_ghz"),
        fidelity_pct=num("fidelity_pct"),
        error_total=num("error_total"),
        backend=str(rec["backend"]),
    )


def load_table(path: str | Path, fmt: str | None = None) -> list[SweepResult]:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "csv")
    with open(path, newline="") as fh:
        if fmt == "json":
            return [_from_record(rec) for rec in json.load(fh)]
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != COLUMNS:
            raise ParameterError(f"unexpected columns {reader.fieldnames}")
        return [_from_record(rec) for rec in reader]


PLOT_KINDS = ("fidelity_vs_qubits", "error_vs_qubits", "freq_vs_qubits", "state_histogram")


def plot_svg(data, kind: str, title: str | None = None) -> str:
    if kind not in PLOT_KINDS:
        raise ParameterError(f"unknown plot kind {kind!r}; expected one of {PLOT_KINDS}")
    if kind == "state_histogram":
        values = data.counts if isinstance(data, ShotCounts) else dict(data)
        if not values:
            raise ParameterError("nothing to plot")
        if isinstance(data, ShotCounts):
            width = data.width
            keys = [format(i, f"0{width}b") for i in range(1 << width)]
            ylabel = "counts"
        else:
            keys = sorted(values)
            ylabel = "probability"
        return _svg.bar_chart(
            keys, [values.get(k, 0) for k in keys], title or "State frequency distribution",
            "outcome", ylabel,
        )
    rows = list(data)
    if not rows:
        raise ParameterError("nothing to plot")
    if kind == "freq_vs_qubits":
        seen: dict[int, SweepResult] = {}
        for r in rows:
            seen.setdefault(r.qubits, r)
        ns = sorted(seen)
        series = [
            ("theoretical", ns, [seen[n].freq_theory_ghz for n in ns]),
            ("hardware", ns, [seen[n].freq_hw_ghz for n in ns]),
        ]
        return _svg.line_chart(series, title or "Qubit frequency vs qubit count",
                               "qubits", "frequency (GHz)")
    attr, ylabel, default_title = {
        "fidelity_vs_qubits": ("fidelity_pct", "fidelity (%)", "Fidelity vs qubit count"),
        "error_vs_qubits": ("error_total", "cumulative error", "Cumulative error vs qubit count"),
    }[kind]
    models = list(dict.fromkeys(r.model for r in rows))
    series = []
    for m in models:
        sel = sorted((r for r in rows if r.model == m), key=lambda r: r.qubits)
        series.append((m, [r.qubits for r in sel], [getattr(r, attr) for r in sel]))
    return _svg.line_chart(series, title or default_title, "qubits", ylabel)


def emit_plot(data, kind: str, path: str | Path, title: str | None = None) -> Path:
    path = Path(path)
    text = plot_svg(data, kind, title)
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    return path


# -- run persistence ---------------------------------------------------------------------


@dataclass
class RunManifest:
    timestamp: str
    seed: int
    parameters: dict
    version: str = __version__
    outputs: list[str] = field(default_factory=list)

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")
        return path


def utc_stamp(now: datetime | None = None) -> str:
    now = now or datetime.now(timezone.utc)
    return now.strftime("%Y%m%dT%H%M%SZ")


def run_benchmark(
    outdir: str | Path,
    qubit_counts: Sequence[int],
    models: Sequence[str] = ("JC", "Ising"),
    rates: ErrorRates = DEFAULT_RATES,
    growth: dict[str, ErrorGrowthModel] | None = None,
    shots: int = 1000,
    seed: int = 0,
    calibration: CalibrationData | None = None,
    timestamp: str | None = None,
) -> Path:
    """Run a sweep into ``outdir/<timestamp>-<seed>/``.

    The manifest (with the planned output list) is written before any result
    file.
    """
    timestamp = timestamp or utc_stamp()
    run_dir = Path(outdir) / f"{timestamp}-{seed}"
    try:
        run_dir.mkdir(parents=True, exist_ok=False)
    except OSError as exc:
        raise OutputError(f"cannot create run directory {run_dir}: {exc}") from exc
    outputs = [
        "table.csv",
        "table.json",
        "fidelity_vs_qubits.svg",
        "error_vs_qubits.svg",
        "freq_vs_qubits.svg",
        "counts.json",
    ]
    manifest = RunManifest(
        timestamp=timestamp,
        seed=int(seed),
        parameters={
            "qubit_counts": [int(n) for n in qubit_counts],
            "models": [_model_tag(m) for m in models],
            "rates": asdict(rates),
            "growth": {k: asdict(v) for k, v in (growth or default_growth()).items()},
            "shots": int(shots),
            "max_sim_qubits": max_sim_qubits(),
            "calibration": calibration.timestamp if calibration else None,
        },
        outputs=outputs,
    )
    manifest.write(run_dir / "manifest.json")
    results = run_sweep(qubit_counts, models, rates, growth, shots, seed, calibration)
    emit_table(results, run_dir / "table.csv")
    emit_table(results, run_dir / "table.json")
    for kind in ("fidelity_vs_qubits", "error_vs_qubits", "freq_vs_qubits"):
        emit_plot(results, kind, run_dir / f"{kind}.svg")
    counts = [
        {"qubits": r.qubits, "model": r.model, "counts": r.counts.counts, "shots": r.counts.total_shots}
        for r in results
        if r.counts is not None
    ]
    (run_dir / "counts.json").write_text(json.dumps(counts, indent=2) + "\n")
    return run_dir
