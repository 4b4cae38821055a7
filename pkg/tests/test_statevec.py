import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dense_unitary, marginal_bruteforce, random_circuit_gates
from qubench.errors import ParameterError, ResourceError
from qubench.statevec import (
    Circuit,
    Gate,
    ShotCounts,
    StateVector,
    apply_gate,
    cnot,
    h,
    max_sim_qubits,
    p,
    probabilities,
    run_circuit,
    rz,
    sample_counts,
    sx,
    x,
)

S2 = 1 / math.sqrt(2)


def bell():
    return run_circuit(Circuit(2, [h(0), cnot(0, 1)]))


class TestGate:
    @pytest.mark.parametrize("gate", [h(0), x(0), sx(0), p(0.3, 0), rz(-1.7, 0)])
    def test_single_qubit_matrices_unitary(self, gate):
        m = gate.matrix()
        np.testing.assert_allclose(m.conj().T @ m, np.eye(2), atol=1e-12)

    def test_sx_squares_to_x(self):
        np.testing.assert_allclose(sx(0).matrix() @ sx(0).matrix(), x(0).matrix(), atol=1e-15)

    def test_rz_and_p_differ_by_global_phase(self):
        theta = 0.83
        ratio = np.diag(rz(theta, 0).matrix()) / np.diag(p(theta, 0).matrix())
        assert ratio[0] == pytest.approx(ratio[1])

    def test_cnot_rejects_equal_control_target(self):
        with pytest.raises(ParameterError):
            cnot(1, 1)

    def test_unknown_kind(self):
        with pytest.raises(ParameterError):
            Gate("Y", 0)

    def test_control_only_on_cnot(self):
        with pytest.raises(ParameterError):
            Gate("H", 0, control=1)


class TestApplyGate:
    def test_hadamard_on_zero(self):
        out = apply_gate(StateVector.zero(1), h(0))
        np.testing.assert_allclose(out.amplitudes, [S2, S2], atol=1e-15)

    def test_cnot_truth_table(self):
        out = apply_gate(StateVector.basis(2, "10"), cnot(1, 0))
        assert abs(out.amplitudes[int("11", 2)]) == pytest.approx(1.0)
        # qubit 0 as control: |01> -> |11>
        out = apply_gate(StateVector.basis(2, "01"), cnot(0, 1))
        assert abs(out.amplitudes[int("11", 2)]) == pytest.approx(1.0)

    def test_rz_half_angle_convention(self):
        plus = apply_gate(StateVector.zero(1), h(0))
        out = apply_gate(plus, rz(math.pi, 0))
        expected = np.array([np.exp(-1j * math.pi / 2), np.exp(1j * math.pi / 2)]) * S2
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)

    def test_input_not_mutated(self):
        state = StateVector.zero(2)
        before = state.amplitudes.copy()
        apply_gate(state, h(1))
        np.testing.assert_array_equal(state.amplitudes, before)

    def test_index_out_of_range(self):
        with pytest.raises(ParameterError):
            apply_gate(StateVector.zero(2), h(2))
        with pytest.raises(ParameterError):
            apply_gate(StateVector.zero(2), cnot(0, 3))


class TestRunCircuit:
    def test_empty_circuit_is_identity(self):
        start = StateVector.basis(2, "01")
        out = run_circuit(Circuit(2), start)
        np.testing.assert_array_equal(out.amplitudes, start.amplitudes)

    def test_bell_preparation(self):
        np.testing.assert_allclose(bell().amplitudes, [S2, 0, 0, S2], atol=1e-15)

    def test_qubit_count_mismatch(self):
        with pytest.raises(ParameterError):
            run_circuit(Circuit(3), StateVector.zero(2))

    def test_circuit_rejects_out_of_range_gate(self):
        with pytest.raises(ParameterError):
            Circuit(2, [h(2)])
        with pytest.raises(ParameterError):
            Circuit(2, measured_qubits=(0, 0))

    def test_random_six_qubit_circuit_matches_dense_oracle(self, rng):
        gates = random_circuit_gates(rng, 6, 50)
        out = run_circuit(Circuit(6, gates))
        expected = dense_unitary(gates, 6)[:, 0]
        assert np.max(np.abs(out.amplitudes - expected)) < 1e-10

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_every_kernel_against_oracle_on_random_state(self, n, rng):
        amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        amps /= np.linalg.norm(amps)
        start = StateVector(n, amps)
        for gate in random_circuit_gates(rng, n, 40):
            out = apply_gate(start, gate)
            expected = dense_unitary([gate], n) @ amps
            np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(1, 5),
    depth=st.integers(0, 40),
    seed=st.integers(0, 2**32 - 1),
)
def test_normalization_preserved(n, depth, seed):
    gates = random_circuit_gates(np.random.default_rng(seed), n, depth)
    assert run_circuit(Circuit(n, gates)).norm_error() < 1e-10


class TestStateVector:
    def test_rejects_unnormalized(self):
        with pytest.raises(ParameterError):
            StateVector(1, np.array([1.0, 1.0]))

    def test_rejects_wrong_length(self):
        with pytest.raises(ParameterError):
            StateVector(2, np.array([1.0, 0.0]))

    def test_basis_from_bitstring_is_msb_first(self):
        state = StateVector.basis(3, "100")
        assert state.amplitudes[4] == 1.0

    def test_resource_limit(self, monkeypatch):
        monkeypatch.setenv("QUBENCH_MAX_SIM_QUBITS", "4")
        assert max_sim_qubits() == 4
        with pytest.raises(ResourceError):
            StateVector.zero(5)


class TestProbabilities:
    def test_bell_both_qubits(self):
        probs = probabilities(bell(), (0, 1))
        assert probs == pytest.approx({"00": 0.5, "01": 0.0, "10": 0.0, "11": 0.5})

    def test_bell_single_qubit(self):
        assert probabilities(bell(), (0,)) == pytest.approx({"0": 0.5, "1": 0.5})

    def test_ghz_marginal_over_outer_qubits(self):
        ghz = run_circuit(Circuit(3, [h(0), cnot(0, 1), cnot(1, 2)]))
        expected = marginal_bruteforce(ghz.amplitudes, (0, 2))
        assert expected == pytest.approx({"00": 0.5, "01": 0.0, "10": 0.0, "11": 0.5})
        assert probabilities(ghz, (0, 2)) == pytest.approx(expected)

    def test_key_order_follows_register_order(self, rng):
        gates = random_circuit_gates(rng, 4, 30)
        state = run_circuit(Circuit(4, gates))
        for qubits in [(0, 1), (1, 0), (3, 0, 2), (2,)]:
            assert probabilities(state, qubits) == pytest.approx(
                marginal_bruteforce(state.amplitudes, qubits), abs=1e-12
            )

    def test_sum_to_one(self, rng):
        state = run_circuit(Circuit(5, random_circuit_gates(rng, 5, 40)))
        assert sum(probabilities(state, (4, 1, 2)).values()) == pytest.approx(1.0, abs=1e-10)

    def test_invalid_subset(self):
        with pytest.raises(ParameterError):
            probabilities(bell(), (0, 0))
        with pytest.raises(ParameterError):
            probabilities(bell(), (2,))


class TestSampleCounts:
    def test_deterministic_outcome(self):
        counts = sample_counts(StateVector.zero(1), (0,), 1000, seed=7)
        assert counts.counts == {"0": 1000}
        assert counts.total_shots == 1000

    def test_bell_within_three_sigma(self):
        shots = 10**6
        counts = sample_counts(bell(), (0, 1), shots, seed=2024)
        sigma = math.sqrt(shots * 0.25)
        for key in ("00", "11"):
            assert abs(counts.get(key) - shots / 2) <= 3 * sigma
        assert counts.get("01") == counts.get("10") == 0

    def test_same_seed_same_counts(self):
        a = sample_counts(bell(), (0, 1), 5000, seed=99)
        b = sample_counts(bell(), (0, 1), 5000, seed=99)
        assert a == b
        c = sample_counts(bell(), (0, 1), 5000, seed=100)
        assert a != c

    def test_zero_shots(self):
        with pytest.raises(ParameterError):
            sample_counts(bell(), (0, 1), 0, seed=1)

    def test_keys_have_register_width(self, rng):
        state = run_circuit(Circuit(4, random_circuit_gates(rng, 4, 20)))
        counts = sample_counts(state, (3, 1, 0), 1000, seed=5)
        assert all(len(k) == 3 for k in counts.counts)
        assert sum(counts.counts.values()) == 1000

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_total_variation_bound(self, m, rng):
        n = 4
        state = run_circuit(Circuit(n, random_circuit_gates(rng, n, 30)))
        qubits = tuple(range(m))
        shots = 10**6
        probs = probabilities(state, qubits)
        counts = sample_counts(state, qubits, shots, seed=31 + m)
        tv = 0.5 * sum(abs(counts.get(k) / shots - v) for k, v in probs.items())
        assert tv <= 4 * math.sqrt(2**m / shots)


def test_shot_counts_validation():
    with pytest.raises(ParameterError):
        ShotCounts({"00": 3}, 4, 2)
    with pytest.raises(ParameterError):
        ShotCounts({"0": 3}, 3, 2)
