import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qhashgen.qstate import (
    QuantumState,
    inner_product,
    swap_test_accept_prob,
    swap_test_sample,
    tensor,
)


def random_state(rng, qubits):
    v = rng.normal(size=2**qubits) + 1j * rng.normal(size=2**qubits)
    return QuantumState.from_unnormalized(v)


def plus():
    return QuantumState([1 / math.sqrt(2), 1 / math.sqrt(2)])


def state_with_overlap(p_abs):
    return QuantumState([p_abs, math.sqrt(1 - p_abs**2)])


class TestConstruction:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalized"):
            QuantumState([1.0, 1.0])

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError, match="power of two"):
            QuantumState([1.0, 0.0, 0.0])

    def test_read_only(self):
        s = QuantumState.basis(1, 2)
        with pytest.raises(ValueError):
            s.amplitudes[0] = 1

    def test_printing_nonzero_entries(self):
        assert str(QuantumState.basis(2, 2)) == "10:1"
        assert str(plus()) == "0:0.707107 1:0.707107"


class TestInnerProduct:
    def test_self(self, rng):
        s = random_state(rng, 3)
        assert inner_product(s, s) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_basis(self):
        assert inner_product(QuantumState.basis(0, 3), QuantumState.basis(7, 3)) == 0

    def test_plus_zero(self):
        assert inner_product(plus(), QuantumState.basis(0, 1)) == pytest.approx(1 / math.sqrt(2))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            inner_product(QuantumState.basis(0, 1), QuantumState.basis(0, 2))

    def test_conjugates_first_argument(self):
        a = QuantumState([1j, 0])
        b = QuantumState([1, 0])
        assert inner_product(a, b) == pytest.approx(-1j)


class TestTensor:
    def test_basis(self):
        assert tensor(QuantumState.basis(0, 1), QuantumState.basis(1, 1)) == QuantumState.basis(1, 2)

    def test_scalar_identity(self, rng):
        s = random_state(rng, 2)
        assert tensor(QuantumState.scalar(), s) == s
        assert tensor(s, QuantumState.scalar()) == s

    def test_product_rule_against_expansion(self, rng):
        for _ in range(20):
            a, a2 = random_state(rng, 2), random_state(rng, 2)
            b, b2 = random_state(rng, 1), random_state(rng, 1)
            # oracle: explicit Kronecker expansion summed entry by entry
            lhs = sum(
                np.conj(a.amplitudes[i] * b.amplitudes[j]) * a2.amplitudes[i] * b2.amplitudes[j]
                for i in range(4)
                for j in range(2)
            )
            assert inner_product(tensor(a, b), tensor(a2, b2)) == pytest.approx(lhs, abs=1e-12)
            assert lhs == pytest.approx(inner_product(a, a2) * inner_product(b, b2), abs=1e-12)

    def test_qubits_add(self, rng):
        assert tensor(random_state(rng, 2), random_state(rng, 3)).num_qubits == 5


class TestSwapTest:
    def test_identical(self, rng):
        s = random_state(rng, 2)
        assert swap_test_accept_prob(s, s) == pytest.approx(1.0)
        assert swap_test_sample(s, s, 1000, seed=1) == 1.0

    def test_orthogonal(self):
        a, b = QuantumState.basis(0, 1), QuantumState.basis(1, 1)
        assert swap_test_accept_prob(a, b) == 0.5
        assert abs(swap_test_sample(a, b, 10**5, seed=1) - 0.5) <= 0.01

    def test_overlap_point_six(self):
        a, b = QuantumState.basis(0, 1), state_with_overlap(0.6)
        assert swap_test_accept_prob(a, b) == pytest.approx(0.68)
        assert abs(swap_test_sample(a, b, 10**5, seed=7) - 0.68) <= 0.01

    def test_deterministic_given_seed(self):
        a, b = QuantumState.basis(0, 1), state_with_overlap(0.3)
        assert swap_test_sample(a, b, 5000, seed=11) == swap_test_sample(a, b, 5000, seed=11)

    def test_accepts_generator(self):
        a, b = QuantumState.basis(0, 1), state_with_overlap(0.3)
        f1 = swap_test_sample(a, b, 5000, np.random.default_rng(3))
        f2 = swap_test_sample(a, b, 5000, seed=3)
        assert f1 == f2

    def test_shots_validated(self):
        with pytest.raises(ValueError):
            swap_test_sample(plus(), plus(), 0)

    @pytest.mark.parametrize("p_abs", [0.0, 0.2, 0.5, 0.8, 1.0])
    def test_sample_concentrates(self, p_abs):
        a, b = QuantumState.basis(0, 1), state_with_overlap(p_abs)
        p = swap_test_accept_prob(a, b)
        assert abs(swap_test_sample(a, b, 10**5, seed=99) - p) <= 0.01


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=0, max_value=4))
def test_inner_product_properties(seed, qubits):
    rng = np.random.default_rng(seed)
    a, b = random_state(rng, qubits), random_state(rng, qubits)
    ab, ba = inner_product(a, b), inner_product(b, a)
    assert abs(ab) <= 1 + 1e-9
    assert abs(ab - np.conj(ba)) <= 1e-12
    assert 0.5 <= swap_test_accept_prob(a, b) <= 1.0
    t = tensor(a, b)
    assert abs(np.vdot(t.amplitudes, t.amplitudes) - 1) <= 1e-9
