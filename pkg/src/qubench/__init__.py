"""Superconducting-qubit model circuits, a state-vector simulator and a benchmark harness."""

__version__ = "0.1.0"

from .errors import CalibrationError, DomainError, ParameterError, QubenchError, ResourceError
from .statevec import (
    Circuit,
    Gate,
    ShotCounts,
    StateVector,
    apply_gate,
    cnot,
    h,
    p,
    probabilities,
    run_circuit,
    rz,
    sample_counts,
    sx,
    x,
)
from .hamiltonians import (
    CpbParams,
    IsingParams,
    JcParams,
    PurcellInputs,
    cavity_kappa,
    cooper_pair_spectrum,
    ising_energies,
    jc_excited_population,
    jc_hamiltonian,
    purcell_rate,
)
from .circuits import (
    CouplingMap,
    TrotterPlan,
    build_ising_circuit,
    build_jc_circuit,
    circuit_unitary,
    state_frequency_profile,
    unitary_distance,
    validate_layout,
)
from .noise import (
    ErrorGrowthModel,
    ErrorRates,
    GateCensus,
    census_of,
    fidelity,
    fit_growth_model,
    inject_pauli_noise,
    predict,
    total_error,
)
