"""Pure states on s qubits as explicit complex amplitude vectors."""

from __future__ import annotations

import numpy as np

NORM_TOL = 1e-9


class QuantumState:
    """Unit-norm vector in a 2**s dimensional space; basis index i is |i>.

    The amplitude array is read-only, so states behave as values.
    """

    __slots__ = ("amplitudes", "num_qubits")

    def __init__(self, amplitudes, check: bool = True):
        amps = np.array(amplitudes, dtype=np.complex128).ravel()
        dim = amps.size
        if dim < 1 or dim & (dim - 1):
            raise ValueError(f"state length {dim} is not a power of two")
        if check:
            norm = float(np.vdot(amps, amps).real)
            if abs(norm - 1.0) > NORM_TOL:
                raise ValueError(f"state is not normalized: squared norm {norm!r}")
        amps.setflags(write=False)
        self.amplitudes = amps
        self.num_qubits = dim.bit_length() - 1

    @classmethod
    def basis(cls, index: int, num_qubits: int) -> "QuantumState":
        amps = np.zeros(2**num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def scalar(cls) -> "QuantumState":
        """The 0-qubit state, neutral for :func:`tensor`."""
        return cls([1.0])

    @classmethod
    def from_unnormalized(cls, vec) -> "QuantumState":
        vec = np.asarray(vec, dtype=np.complex128)
        return cls(vec / np.linalg.norm(vec))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuantumState):
            return NotImplemented
        return self.dim == other.dim and np.allclose(self.amplitudes, other.amplitudes, atol=NORM_TOL)

    __hash__ = None

    def nonzero(self, tol: float = 1e-12) -> list[tuple[int, complex]]:
        idx = np.flatnonzero(np.abs(self.amplitudes) > tol)
        return [(int(i), complex(self.amplitudes[i])) for i in idx]

    def __str__(self) -> str:
        parts = []
        for i, a in self.nonzero():
            amp = f"{a.real:.6g}" if abs(a.imag) < 1e-12 else f"{a.real:.6g}{a.imag:+.6g}j"
            parts.append(f"{i:0{max(self.num_qubits, 1)}b}:{amp}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QuantumState(num_qubits={self.num_qubits}, {self})"


def _check_same_dim(a: QuantumState, b: QuantumState) -> None:
    if a.dim != b.dim:
        raise ValueError(f"qubit count mismatch: {a.num_qubits} vs {b.num_qubits}")


def inner_product(a: QuantumState, b: QuantumState) -> complex:
    """<a|b> = sum_i conj(a_i) b_i."""
    _check_same_dim(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def tensor(a: QuantumState, b: QuantumState) -> QuantumState:
    """|a> (x) |b>, with a's qubits as the high-order part of the index."""
    return QuantumState(np.kron(a.amplitudes, b.amplitudes))


def swap_test_accept_prob(a: QuantumState, b: QuantumState) -> float:
    """SWAP-test acceptance probability (1 + |<a|b>|^2) / 2."""
    overlap = abs(inner_product(a, b))
    return (1.0 + min(overlap, 1.0) ** 2) / 2.0


def swap_test_sample(a: QuantumState, b: QuantumState, shots: int, seed=None) -> float:
    """Fraction of accepting outcomes in ``shots`` simulated SWAP tests.

    ``seed`` may be an int or an ``np.random.Generator``.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = swap_test_accept_prob(a, b)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return int(rng.binomial(shots, p)) / shots
