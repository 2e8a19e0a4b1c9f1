import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horizonsim.errors import InvalidGateError, NonUnitaryError, NotNormalizedError
from horizonsim.statevec import (
    CNOT,
    SWAP,
    Matrix2,
    PureState,
    Unitary1Q,
    apply_cnot,
    apply_gate,
    apply_swap,
    apply_unitary1q,
    check_unitary,
    init_product_state,
)

from conftest import random_state, random_unitary

R = 1 / math.sqrt(2)


def basis(n, idx):
    v = np.zeros(2**n, dtype=complex)
    v[idx] = 1
    return PureState(v)


class TestInitProductState:
    def test_matter_qubit_times_vacuum(self):
        psi = init_product_state([(0.6, 0.8), (1, 0), (1, 0), (1, 0)])
        expected = np.zeros(16, dtype=complex)
        expected[0b0000] = 0.6
        expected[0b1000] = 0.8
        np.testing.assert_array_equal(psi.amplitudes, expected)

    def test_single_qubit(self):
        psi = init_product_state([(1, 0)])
        assert psi.n_qubits == 1
        np.testing.assert_array_equal(psi.amplitudes, [1, 0])

    def test_first_factor_is_most_significant(self):
        psi = init_product_state([(R, R), (1, 0)])
        np.testing.assert_allclose(psi.amplitudes, [R, 0, R, 0], atol=1e-15)

    def test_rejects_unnormalized_factor_with_index(self):
        with pytest.raises(NotNormalizedError) as exc:
            init_product_state([(1, 0), (1, 1)])
        assert exc.value.qubit == 1

    def test_rejects_empty(self):
        with pytest.raises(NotNormalizedError):
            init_product_state([])

    def test_qubit_cap(self):
        with pytest.raises(InvalidGateError):
            init_product_state([(1, 0)] * 25)


class TestCheckUnitary:
    def test_identity(self):
        assert check_unitary(np.eye(2)).accepted

    def test_rotation(self):
        assert check_unitary([[0.8, -0.6], [0.6, 0.8]]).accepted

    def test_rejects_with_deviation(self):
        verdict = check_unitary([[1, 0], [0, 2]])
        assert not verdict.accepted
        assert verdict.deviation == pytest.approx(3.0)

    def test_matrix2_enforces_unitarity(self):
        with pytest.raises(NonUnitaryError) as exc:
            Matrix2([[1, 0], [0, 2]])
        assert exc.value.deviation == pytest.approx(3.0)


class TestUnitary1Q:
    def test_hawking_rotation_on_vacuum(self):
        uh = Matrix2([[0.8, -0.6], [0.6, 0.8]])
        out = apply_unitary1q(basis(1, 0), Unitary1Q(uh, 0))
        np.testing.assert_allclose(out.amplitudes, [0.8, 0.6], atol=1e-15)

    def test_identity_leaves_state(self, rng):
        psi = random_state(rng, 3)
        for q in range(3):
            out = apply_unitary1q(psi, Unitary1Q(Matrix2(np.eye(2)), q))
            np.testing.assert_array_equal(out.amplitudes, psi.amplitudes)

    def test_round_trip(self, rng):
        psi = random_state(rng, 4)
        u = random_unitary(rng)
        out = apply_unitary1q(apply_unitary1q(psi, Unitary1Q(u, 2)), Unitary1Q(u.inverse(), 2))
        assert np.max(np.abs(out.amplitudes - psi.amplitudes)) <= 1e-12

    def test_acts_on_target_bit_only(self):
        # X on qubit 1 of |00> gives |01> (index 1)
        x = Matrix2([[0, 1], [1, 0]])
        out = apply_unitary1q(basis(2, 0), Unitary1Q(x, 1))
        np.testing.assert_array_equal(out.amplitudes, basis(2, 1).amplitudes)

    def test_out_of_range(self):
        with pytest.raises(InvalidGateError):
            apply_unitary1q(basis(2, 0), Unitary1Q(Matrix2(np.eye(2)), 2))


class TestCNOT:
    def test_entangles_matter_with_partner(self):
        psi = init_product_state([(0.6, 0.8), (1, 0)])
        out = apply_cnot(psi, 0, 1)
        np.testing.assert_allclose(out.amplitudes, [0.6, 0, 0, 0.8], atol=1e-15)

    def test_control_zero_fixes_target(self):
        out = apply_cnot(basis(2, 0), 0, 1)
        np.testing.assert_array_equal(out.amplitudes, basis(2, 0).amplitudes)

    def test_outer_control_disentangles_pair(self):
        # lam|0- 0+> + mu|1- 1+> with control +, target - -> |0->(lam|0+> + mu|1+>)
        lam, mu = 0.6, 0.8j
        psi = PureState([lam, 0, 0, mu])
        out = apply_cnot(psi, 1, 0)
        np.testing.assert_allclose(out.amplitudes, [lam, mu, 0, 0], atol=1e-15)

    def test_rejects_equal_indices(self):
        with pytest.raises(InvalidGateError):
            apply_cnot(basis(2, 0), 1, 1)
        with pytest.raises(InvalidGateError):
            CNOT(0, 0)


class TestSWAP:
    def test_basis_swap(self):
        out = apply_swap(basis(2, 0b01), 0, 1)
        np.testing.assert_array_equal(out.amplitudes, basis(2, 0b10).amplitudes)

    def test_stage_two_swaps_exchange_pairs(self):
        lam, mu, alpha, beta = 0.6, 0.8, 0.8j, 0.6
        psi = PureState(np.kron([lam, 0, 0, mu], [alpha, 0, 0, beta]))
        out = apply_swap(apply_swap(psi, 0, 2), 1, 3)
        expected = np.kron([alpha, 0, 0, beta], [lam, 0, 0, mu])
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)

    def test_involution(self, rng):
        psi = random_state(rng, 5)
        out = apply_swap(apply_swap(psi, 1, 4), 1, 4)
        assert np.max(np.abs(out.amplitudes - psi.amplitudes)) <= 1e-12

    def test_rejects_equal_indices(self):
        with pytest.raises(InvalidGateError):
            apply_swap(basis(2, 0), 0, 0)


def test_states_are_immutable(rng):
    psi = random_state(rng, 2)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0
    before = psi.amplitudes.copy()
    apply_cnot(psi, 0, 1)
    np.testing.assert_array_equal(psi.amplitudes, before)


def test_pure_state_rejects_bad_norm():
    with pytest.raises(NotNormalizedError):
        PureState([1, 1])


seeds = st.integers(min_value=0, max_value=2**32 - 1)
widths = st.integers(min_value=2, max_value=7)


@settings(max_examples=60, deadline=None)
@given(seeds, widths)
def test_random_gate_sequences_preserve_norm(seed, n):
    rng = np.random.default_rng(seed)
    psi = random_state(rng, n)
    for _ in range(30):
        a, b = rng.choice(n, size=2, replace=False)
        gate = [Unitary1Q(random_unitary(rng), int(a)), CNOT(int(a), int(b)), SWAP(int(a), int(b))][
            rng.integers(3)
        ]
        psi = apply_gate(psi, gate)
    assert abs(psi.norm_squared() - 1) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(seeds, widths)
def test_cnot_squared_is_identity(seed, n):
    rng = np.random.default_rng(seed)
    psi = random_state(rng, n)
    c, t = (int(x) for x in rng.choice(n, size=2, replace=False))
    out = apply_cnot(apply_cnot(psi, c, t), c, t)
    assert np.max(np.abs(out.amplitudes - psi.amplitudes)) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(min_value=3, max_value=6))
def test_gates_commute_with_relabeling(seed, n):
    rng = np.random.default_rng(seed)
    psi = random_state(rng, n)
    a, b, c = (int(x) for x in rng.choice(n, size=3, replace=False))
    u = random_unitary(rng)
    for on_b, on_a in [
        (Unitary1Q(u, b), Unitary1Q(u, a)),
        (CNOT(b, c), CNOT(a, c)),
        (CNOT(c, b), CNOT(c, a)),
        (SWAP(b, c), SWAP(a, c)),
    ]:
        left = apply_gate(apply_swap(psi, a, b), on_b)
        right = apply_swap(apply_gate(psi, on_a), a, b)
        assert np.max(np.abs(left.amplitudes - right.amplitudes)) <= 1e-12


def test_deterministic(rng):
    psi = random_state(rng, 4)
    u = random_unitary(rng)
    gates = [Unitary1Q(u, 0), CNOT(0, 3), SWAP(1, 2), CNOT(2, 0)]
    runs = []
    for _ in range(2):
        s = psi
        for g in gates:
            s = apply_gate(s, g)
        runs.append(s.amplitudes.tobytes())
    assert runs[0] == runs[1]


def test_unitary1q_matches_dense_kron(rng):
    # independent route: build the full 2^n operator with kron
    n = 4
    psi = random_state(rng, n)
    u = random_unitary(rng)
    for q in range(n):
        ops = [np.eye(2)] * n
        ops[q] = u.array
        full = ops[0]
        for op in ops[1:]:
            full = np.kron(full, op)
        out = apply_unitary1q(psi, Unitary1Q(u, q))
        np.testing.assert_allclose(out.amplitudes, full @ psi.amplitudes, atol=1e-12)
