"""Cooper-pair box, Jaynes-Cummings and longitudinal Ising Hamiltonians.

Units: hbar = 1, every frequency is angular. Helpers convert GHz to rad/s.

Spin convention for the Ising chain: z = +1 on |0>, z = -1 on |1>. The
energy is taken literally as ``-sum h_l z_l + sum J_l z_l z_{l+1}``, so a
positive coupling *raises* the energy of aligned neighbours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import linalg

from .errors import DomainError, ParameterError, ResourceError

MAX_ISING_SPINS = 24


def ghz_to_rad(f_ghz: float) -> float:
    return 2.0 * math.pi * 1e9 * f_ghz


def rad_to_ghz(omega: float) -> float:
    return omega / (2.0 * math.pi * 1e9)


# -- Cooper-pair box ----------------------------------------------------------


@dataclass(frozen=True)
class CpbParams:
    """Charging energy, Josephson energy, gate charge and charge cutoff.

    The charge basis runs over n = -charge_cutoff .. +charge_cutoff.
    """

    E_C: float
    E_J: float
    n_g: float = 0.0
    charge_cutoff: int = 10

    def __post_init__(self):
        if not self.E_C > 0:
            raise ParameterError("E_C must be > 0")
        if self.E_J < 0:
            raise ParameterError("E_J must be >= 0")
        if self.charge_cutoff < 1:
            raise ParameterError("charge_cutoff must be >= 1")

    @property
    def dim(self) -> int:
        return 2 * self.charge_cutoff + 1


def cooper_pair_matrix(params: CpbParams) -> np.ndarray:
    """Dense charge-basis Hamiltonian.

    cos(phi) couples neighbouring charge states with amplitude 1/2.
    """
    n = np.arange(-params.charge_cutoff, params.charge_cutoff + 1)
    H = np.diag(4.0 * params.E_C * (n - params.n_g) ** 2)
    off = np.full(params.dim - 1, -0.5 * params.E_J)
    H += np.diag(off, 1) + np.diag(off, -1)
    return H


def cooper_pair_spectrum(params: CpbParams, k: int) -> np.ndarray:
    """The ``k`` lowest eigenvalues, ascending."""
    if not 1 <= k <= params.dim:
        raise ParameterError(f"k must be in [1, {params.dim}], got {k}")
    n = np.arange(-params.charge_cutoff, params.charge_cutoff + 1)
    diag = 4.0 * params.E_C * (n - params.n_g) ** 2
    off = np.full(params.dim - 1, -0.5 * params.E_J)
    return linalg.eigh_tridiagonal(
        diag, off, eigvals_only=True, select="i", select_range=(0, k - 1)
    )


def transition_energy(params: CpbParams) -> float:
    e = cooper_pair_spectrum(params, 2)
    return float(e[1] - e[0])


def charge_dispersion(E_C: float, E_J: float, charge_cutoff: int = 20, samples: int = 101) -> float:
    """Spread (max minus min) of E1 - E0 as the gate charge sweeps [0, 1]."""
    gaps = [
        transition_energy(CpbParams(E_C, E_J, float(ng), charge_cutoff))
        for ng in np.linspace(0.0, 1.0, samples)
    ]
    return float(max(gaps) - min(gaps))


def transmon_gap_estimate(E_C: float, E_J: float) -> float:
    """Large E_J/E_C asymptote of E1 - E0: sqrt(8 E_C E_J) - E_C."""
    return math.sqrt(8.0 * E_C * E_J) - E_C


# -- Jaynes-Cummings -----------------------------------------------------------


@dataclass(frozen=True)
class JcParams:
    omega_q: float
    omega_r: float
    g: float
    fock_cutoff: int = 1

    def __post_init__(self):
        if self.g < 0:
            raise ParameterError("g must be >= 0")
        if self.fock_cutoff < 1:
            raise ParameterError("fock_cutoff must be >= 1")

    @property
    def detuning(self) -> float:
        return self.omega_q - self.omega_r

    @property
    def dim(self) -> int:
        return 2 * (self.fock_cutoff + 1)


# qubit basis (|g>, |e>)
SIGMA_Z = np.diag([-1.0, 1.0]).astype(complex)
SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_MINUS = SIGMA_PLUS.T.copy()


def annihilation(fock_cutoff: int) -> np.ndarray:
    """Truncated ``a`` on |0>..|fock_cutoff>, a|n> = sqrt(n)|n-1>."""
    return np.diag(np.sqrt(np.arange(1, fock_cutoff + 1)), 1).astype(complex)


def jc_index(excited: bool, photons: int, fock_cutoff: int) -> int:
    """Row of |qubit, n> in the qubit-major tensor basis."""
    return int(excited) * (fock_cutoff + 1) + photons


def jc_hamiltonian(params: JcParams) -> np.ndarray:
    """H = (w_q/2) sz + w_r a'a + g (s+ a + s- a'), qubit (x) cavity ordering."""
    nf = params.fock_cutoff + 1
    a = annihilation(params.fock_cutoff)
    eye_q = np.eye(2)
    eye_f = np.eye(nf)
    H = 0.5 * params.omega_q * np.kron(SIGMA_Z, eye_f)
    H = H + params.omega_r * np.kron(eye_q, a.conj().T @ a)
    H = H + params.g * (np.kron(SIGMA_PLUS, a) + np.kron(SIGMA_MINUS, a.conj().T))
    return H


def excitation_number(fock_cutoff: int) -> np.ndarray:
    a = annihilation(fock_cutoff)
    nf = fock_cutoff + 1
    return np.kron(SIGMA_PLUS @ SIGMA_MINUS, np.eye(nf)) + np.kron(np.eye(2), a.conj().T @ a)


def jc_excited_population(params: JcParams, t) -> np.ndarray | float:
    """P_e(t) = |<e,0| exp(-iHt) |e,0>|^2, starting from the excited qubit in vacuum.

    ``t`` may be a scalar or an array of non-negative times.
    """
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise ParameterError("t must be >= 0")
    evals, evecs = np.linalg.eigh(jc_hamiltonian(params))
    start = jc_index(True, 0, params.fock_cutoff)
    weights = np.abs(evecs[start, :]) ** 2
    phases = np.exp(-1j * np.multiply.outer(times, evals))
    amp = phases @ weights
    out = np.abs(amp) ** 2
    return float(out) if out.ndim == 0 else out


def detuned_rabi_minimum(g: float, delta: float) -> float:
    """Lowest excited population of the detuned single-excitation oscillation."""
    return 1.0 - g * g / (g * g + 0.25 * delta * delta)


# -- dissipation closed forms ---------------------------------------------------


@dataclass(frozen=True)
class PurcellInputs:
    g: float
    delta: float
    kappa: float | None = None
    omega_r: float | None = None
    Q_r: float | None = None

    def resolved_kappa(self) -> float:
        if self.kappa is not None:
            return self.kappa
        if self.omega_r is None or self.Q_r is None:
            raise ParameterError("need kappa, or omega_r together with Q_r")
        return cavity_kappa(self.omega_r, self.Q_r)


def cavity_kappa(omega_r: float, Q_r: float) -> float:
    """Photon decay rate omega_r / Q_r."""
    if not Q_r > 0:
        raise ParameterError("Q_r must be > 0")
    return omega_r / Q_r


def purcell_rate(inputs: PurcellInputs) -> float:
    """Dispersive-regime qubit decay kappa g^2 / delta^2."""
    if inputs.delta == 0:
        raise DomainError("Purcell rate is undefined on resonance (delta == 0)")
    kappa = inputs.resolved_kappa()
    return kappa * inputs.g**2 / inputs.delta**2


# -- longitudinal Ising ---------------------------------------------------------


@dataclass
class IsingParams:
    N: int
    h: Sequence[float] = field(default_factory=tuple)
    J: Sequence[float] = field(default_factory=tuple)

    def __post_init__(self):
        if self.N < 1:
            raise ParameterError("N must be >= 1")
        self.h = tuple(float(v) for v in self.h) if len(self.h) else (0.0,) * self.N
        self.J = tuple(float(v) for v in self.J) if len(self.J) else (0.0,) * (self.N - 1)
        if len(self.h) != self.N:
            raise ParameterError(f"need {self.N} fields, got {len(self.h)}")
        if len(self.J) != self.N - 1:
            raise ParameterError(f"need {self.N - 1} couplings, got {len(self.J)}")


def spin_values(N: int) -> np.ndarray:
    """z_l for every basis index: shape (2**N, N), column l is spin l (qubit l)."""
    idx = np.arange(1 << N)[:, None]
    bits = (idx >> np.arange(N)[None, :]) & 1
    return 1 - 2 * bits


def ising_energies(params: IsingParams) -> np.ndarray:
    """Diagonal of the longitudinal Ising Hamiltonian, indexed by basis state."""
    if params.N > MAX_ISING_SPINS:
        raise ResourceError(f"N={params.N} exceeds {MAX_ISING_SPINS} spins")
    z = spin_values(params.N).astype(float)
    energy = -(z @ np.asarray(params.h))
    if params.N > 1:
        energy += (z[:, :-1] * z[:, 1:]) @ np.asarray(params.J)
    return energy
