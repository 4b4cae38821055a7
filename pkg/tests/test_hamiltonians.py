import math

import numpy as np
import pytest
from scipy.linalg import expm

from oracles import ising_energy_bruteforce
from qubench.errors import DomainError, ParameterError, ResourceError
from qubench.hamiltonians import (
    CpbParams,
    IsingParams,
    JcParams,
    PurcellInputs,
    cavity_kappa,
    charge_dispersion,
    cooper_pair_matrix,
    cooper_pair_spectrum,
    detuned_rabi_minimum,
    excitation_number,
    ising_energies,
    jc_excited_population,
    jc_hamiltonian,
    jc_index,
    purcell_rate,
    transmon_gap_estimate,
)


def dense_cpb_levels(E_C, E_J, n_g, N_c):
    """Independent dense build: loop over charge states."""
    dim = 2 * N_c + 1
    H = np.zeros((dim, dim))
    for i in range(dim):
        n = i - N_c
        H[i, i] = 4 * E_C * (n - n_g) ** 2
        if i + 1 < dim:
            H[i, i + 1] = H[i + 1, i] = -E_J / 2
    return np.linalg.eigvalsh(H)


class TestCooperPairBox:
    def test_pure_charging_levels(self):
        levels = cooper_pair_spectrum(CpbParams(1.0, 0.0, 0.0, 5), 3)
        np.testing.assert_array_equal(levels, [0.0, 4.0, 4.0])

    def test_charging_levels_follow_quadratic_law(self):
        params = CpbParams(0.7, 0.0, 0.3, 6)
        n = np.arange(-6, 7)
        expected = np.sort(4 * 0.7 * (n - 0.3) ** 2)
        np.testing.assert_allclose(cooper_pair_spectrum(params, 13), expected, rtol=0, atol=1e-12)

    def test_sweet_spot_splitting(self):
        levels = cooper_pair_spectrum(CpbParams(1.0, 0.1, 0.5, 5), 2)
        oracle = dense_cpb_levels(1.0, 0.1, 0.5, 5)[:2]
        np.testing.assert_allclose(levels, oracle, atol=1e-12)
        assert levels[1] - levels[0] == pytest.approx(0.1, rel=1e-3)

    def test_transmon_limit(self):
        params = CpbParams(1.0, 50.0, 0.0, 30)
        levels = cooper_pair_spectrum(params, 2)
        np.testing.assert_allclose(levels, dense_cpb_levels(1.0, 50.0, 0.0, 30)[:2], atol=1e-9)
        gap = levels[1] - levels[0]
        assert transmon_gap_estimate(1.0, 50.0) == pytest.approx(19.0)
        assert abs(gap - 19.0) <= 0.02 * 19.0

    def test_matrix_is_symmetric_tridiagonal(self):
        H = cooper_pair_matrix(CpbParams(1.0, 3.0, 0.2, 4))
        np.testing.assert_array_equal(H, H.T)
        assert np.count_nonzero(np.triu(H, 2)) == 0

    @pytest.mark.parametrize("k", [0, 12])
    def test_k_out_of_range(self, k):
        with pytest.raises(ParameterError):
            cooper_pair_spectrum(CpbParams(1.0, 1.0, 0.0, 5), k)

    def test_invalid_params(self):
        with pytest.raises(ParameterError):
            CpbParams(0.0, 1.0)
        with pytest.raises(ParameterError):
            CpbParams(1.0, -1.0)
        with pytest.raises(ParameterError):
            CpbParams(1.0, 1.0, 0.0, 0)

    @pytest.mark.parametrize("n_g", [0.0, 0.17, 0.5, 0.83])
    @pytest.mark.parametrize("ratio", [0.5, 5.0, 20.0])
    def test_integer_charge_translation(self, n_g, ratio):
        a = cooper_pair_spectrum(CpbParams(1.0, ratio, n_g, 12), 3)
        b = cooper_pair_spectrum(CpbParams(1.0, ratio, n_g + 1.0, 12), 3)
        np.testing.assert_allclose(a, b, atol=1e-6)

    def test_charge_dispersion_decreases_with_ej_over_ec(self):
        dispersions = [charge_dispersion(1.0, r) for r in (1.0, 5.0, 10.0, 50.0)]
        assert all(a > b for a, b in zip(dispersions, dispersions[1:]))


class TestJaynesCummings:
    def test_hermitian(self):
        H = jc_hamiltonian(JcParams(5.1, 5.0, 0.05, 4))
        np.testing.assert_allclose(H, H.conj().T, atol=1e-12)

    def test_uncoupled_spectrum(self):
        wq, wr, nmax = 5.3, 4.9, 3
        evals = np.linalg.eigvalsh(jc_hamiltonian(JcParams(wq, wr, 0.0, nmax)))
        expected = sorted(s * wq / 2 + n * wr for s in (-1, 1) for n in range(nmax + 1))
        np.testing.assert_allclose(evals, expected, atol=1e-12)

    def test_vacuum_rabi_splitting(self):
        g = 0.37
        H = jc_hamiltonian(JcParams(2.0, 2.0, g, 1))
        idx = [jc_index(True, 0, 1), jc_index(False, 1, 1)]
        block = H[np.ix_(idx, idx)]
        ev = np.linalg.eigvalsh(block)
        assert ev[1] - ev[0] == pytest.approx(2 * g, abs=1e-12)

    def test_spectrum_matches_independent_construction(self):
        wq, wr, g, nmax = 5.1, 5.0, 0.05, 4
        dim = 2 * (nmax + 1)
        H = np.zeros((dim, dim))
        # element-wise build: |q, n> with q in {g, e}
        for q in (0, 1):
            for n in range(nmax + 1):
                i = q * (nmax + 1) + n
                H[i, i] = (wq / 2) * (1 if q else -1) + wr * n
        for n in range(1, nmax + 1):
            i = 1 * (nmax + 1) + (n - 1)  # |e, n-1>
            j = 0 * (nmax + 1) + n  # |g, n>
            H[i, j] = H[j, i] = g * math.sqrt(n)
        np.testing.assert_allclose(
            np.linalg.eigvalsh(jc_hamiltonian(JcParams(wq, wr, g, nmax))),
            np.linalg.eigvalsh(H),
            atol=1e-10,
        )

    def test_excitation_number_conserved(self):
        params = JcParams(5.1, 4.7, 0.2, 5)
        H = jc_hamiltonian(params)
        N = excitation_number(params.fock_cutoff)
        assert np.linalg.norm(H @ N - N @ H) < 1e-12

    def test_fock_cutoff_convergence(self):
        params = [JcParams(5.1, 5.0, 0.05, n) for n in (4, 6)]
        low = [np.linalg.eigvalsh(jc_hamiltonian(p))[:6] for p in params]
        assert np.max(np.abs(low[0] - low[1])) < 1e-8

    def test_resonant_rabi_formula(self):
        g = 0.8
        params = JcParams(3.0, 3.0, g, 3)
        t = np.linspace(0, 2 * math.pi / g, 257)
        np.testing.assert_allclose(jc_excited_population(params, t), np.cos(g * t) ** 2, atol=1e-9)

    def test_decoupled_population_stays_one(self):
        t = np.linspace(0, 50, 11)
        np.testing.assert_allclose(jc_excited_population(JcParams(4.0, 3.0, 0.0, 2), t), 1.0, atol=1e-12)

    def test_detuned_minimum(self):
        g = 0.1
        delta = 10 * g
        params = JcParams(5.0 + delta, 5.0, g, 3)
        omega = math.sqrt(g * g + (delta / 2) ** 2)
        t_min = math.pi / (2 * omega)
        expected = 1 - 1 / 26
        assert detuned_rabi_minimum(g, delta) == pytest.approx(expected, abs=1e-15)
        assert jc_excited_population(params, t_min) == pytest.approx(expected, abs=1e-9)
        # matrix exponential oracle
        H = jc_hamiltonian(params)
        psi0 = np.zeros(H.shape[0], dtype=complex)
        psi0[jc_index(True, 0, 3)] = 1
        ts = np.linspace(0, 2 * t_min, 201)
        oracle = [abs((expm(-1j * H * t) @ psi0)[jc_index(True, 0, 3)]) ** 2 for t in ts]
        np.testing.assert_allclose(jc_excited_population(params, ts), oracle, atol=1e-10)
        assert min(oracle) >= expected - 1e-9

    def test_period_at_resonance(self):
        g = 0.45
        params = JcParams(1.0, 1.0, g, 2)
        t = np.linspace(0, 3, 31)
        np.testing.assert_allclose(
            jc_excited_population(params, t), jc_excited_population(params, t + math.pi / g), atol=1e-8
        )

    def test_negative_time(self):
        with pytest.raises(ParameterError):
            jc_excited_population(JcParams(1.0, 1.0, 0.1), -1.0)


class TestClosedForms:
    def test_purcell_cancellation(self):
        assert purcell_rate(PurcellInputs(g=0.3, delta=0.3, kappa=1.0)) == 1.0

    def test_purcell_direct(self):
        assert purcell_rate(PurcellInputs(g=0.1, delta=1.0, kappa=1e6)) == pytest.approx(1e4)

    def test_purcell_from_quality_factor(self):
        omega_r = 2 * math.pi * 5e9
        kappa = cavity_kappa(omega_r, 1e4)
        assert kappa == pytest.approx(2 * math.pi * 5e5)
        rate = purcell_rate(PurcellInputs(g=0.05, delta=1.0, omega_r=omega_r, Q_r=1e4))
        assert rate == pytest.approx(2 * math.pi * 1.25e3)

    def test_purcell_on_resonance(self):
        with pytest.raises(DomainError):
            purcell_rate(PurcellInputs(g=0.1, delta=0.0, kappa=1.0))

    def test_kappa(self):
        assert cavity_kappa(1.0, 1.0) == 1.0
        assert cavity_kappa(7.0, 2.0) == 2 * cavity_kappa(7.0, 4.0)
        with pytest.raises(ParameterError):
            cavity_kappa(1.0, 0.0)


class TestIsing:
    def test_coupling_only(self):
        e = ising_energies(IsingParams(2, (0, 0), (1,)))
        assert [e[int(b, 2)] for b in ("00", "01", "10", "11")] == [1, -1, -1, 1]

    def test_field_only(self):
        e = ising_energies(IsingParams(2, (1, 1), (0,)))
        assert [e[int(b, 2)] for b in ("00", "01", "10", "11")] == [-2, 0, 0, 2]

    def test_matches_enumeration(self):
        h, J = (0.3, -0.2, 0.5), (1.1, -0.7)
        e = ising_energies(IsingParams(3, h, J))
        for idx in range(8):
            assert e[idx] == ising_energy_bruteforce(h, J, idx)

    def test_flip_symmetry_without_fields(self, rng):
        N = 6
        J = rng.normal(size=N - 1)
        e = ising_energies(IsingParams(N, (0.0,) * N, J))
        flipped = e[np.arange(1 << N) ^ ((1 << N) - 1)]
        np.testing.assert_allclose(e, flipped, atol=1e-12)
        assert abs(e.sum()) < 1e-9

    def test_parameter_lengths(self):
        with pytest.raises(ParameterError):
            IsingParams(3, (1.0, 2.0), (0.0, 0.0))
        with pytest.raises(ParameterError):
            IsingParams(3, (1.0, 2.0, 3.0), (0.0,))

    def test_too_many_spins(self):
        with pytest.raises(ResourceError):
            ising_energies(IsingParams(25))
